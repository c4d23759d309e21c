/*
 * Copyright (C) 2026 safehri contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Serial-vs-OpenMP comparison for the batch kernels: the windowed-std
// trace and the scenario batch runner. Results are checked for
// equality before timings are reported.

#include <chrono>
#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "safehri/csm.hpp"
#include "safehri/sim/harness.hpp"
#include "safehri/sim/synth.hpp"

using namespace safehri;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

void bench_trace() {
    const size_t n = 2'000'000;
    sim::GaussianRng rng(7);
    std::vector<csm::TorqueSample> stream;
    stream.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / 500.0;
        stream.push_back({t, {0.05 * rng.normal(), 0.05 * rng.normal()}});
    }
    // A few genuine excursions so the hysteresis pass does real work.
    for (size_t i = 500'000; i < 501'000; ++i) {
        stream[i].torques[0] += 6.0;
        stream[i].torques[1] += 6.0;
    }
    csm::CsmConfig cfg;

    auto t0 = Clock::now();
    const auto serial = csm::trace(stream, cfg);
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    const auto parallel = csm::trace_parallel(stream, cfg);
    const double t_parallel = seconds_since(t0);

    size_t mismatches = 0;
    for (size_t i = 0; i < n; ++i) {
        if (serial[i].state != parallel[i].state ||
            serial[i].cause != parallel[i].cause) {
            ++mismatches;
        }
    }
    std::printf("csm trace, %zu samples x 2 joints, window %d:\n", n, cfg.capacity());
    std::printf("  serial   %.3f s\n", t_serial);
    std::printf("  openmp   %.3f s   speedup %.2fx   mismatches %zu\n", t_parallel,
                t_serial / t_parallel, mismatches);
}

void bench_batch() {
    std::vector<sim::Scenario> batch;
    for (uint64_t seed = 1; seed <= 32; ++seed) {
        sim::Scenario s;
        s.name = "bench";
        s.seed = seed;
        s.duration = 10.0;
        s.robot_start = {0.1, 0.5};
        s.goals.goals = {{1, {0.9, 0.5}}, {2, {0.9, 0.9}}};
        s.goals.prep_area = {0.1, 0.1};
        s.vsm_cfg.range = {10000, 10000, 10010, 10010};
        s.human.waypoints = {{0.0, {0.5, -0.3}}, {3.2, {0.5, 1.3}}};
        batch.push_back(s);
    }

    auto t0 = Clock::now();
    const auto serial = sim::run_batch_serial(batch);
    const double t_serial = seconds_since(t0);

    t0 = Clock::now();
    const auto parallel = sim::run_batch(batch, true);
    const double t_parallel = seconds_since(t0);

    size_t mismatches = 0;
    for (size_t i = 0; i < batch.size(); ++i) {
        if (sim::serialize(serial[i]) != sim::serialize(parallel[i])) ++mismatches;
    }
    std::printf("scenario batch, %zu runs x %.0f s:\n", batch.size(),
                batch.front().duration);
    std::printf("  serial   %.3f s\n", t_serial);
    std::printf("  openmp   %.3f s   speedup %.2fx   mismatches %zu\n", t_parallel,
                t_serial / t_parallel, mismatches);
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("openmp not available; parallel paths run serially\n");
#endif
    bench_trace();
    bench_batch();
    return 0;
}
