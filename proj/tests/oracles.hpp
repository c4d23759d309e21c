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
#pragma once

// Test-side reference implementations. These deliberately avoid the
// library's code paths: plain slice indexing instead of ring buffers,
// long-double accumulation, no shared helpers.

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace oracles {

/// Population std of the window of (up to) `capacity` samples ending
/// at index i of the raw stream.
inline double window_std(std::span<const double> stream, size_t i, size_t capacity) {
    const size_t win = std::min(i + 1, capacity);
    const size_t first = i + 1 - win;
    long double sum = 0.0L;
    for (size_t k = first; k <= i; ++k) sum += stream[k];
    const long double mean = sum / static_cast<long double>(win);
    long double sq = 0.0L;
    for (size_t k = first; k <= i; ++k) {
        const long double d = static_cast<long double>(stream[k]) - mean;
        sq += d * d;
    }
    return static_cast<double>(std::sqrt(sq / static_cast<long double>(win)));
}

inline double population_std(std::span<const double> values) {
    long double sum = 0.0L;
    for (double v : values) sum += v;
    const long double mean = sum / static_cast<long double>(values.size());
    long double sq = 0.0L;
    for (double v : values) {
        const long double d = static_cast<long double>(v) - mean;
        sq += d * d;
    }
    return static_cast<double>(std::sqrt(sq / static_cast<long double>(values.size())));
}

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// One direct step of the goal-posterior recursion, with an optional
/// positive scale applied to every likelihood (the posterior must not
/// depend on it).
inline std::vector<double> posterior_step(const std::vector<double>& prior,
                                          Point hand, Point vel,
                                          const std::vector<Point>& goals,
                                          double beta, double gamma, double lambda,
                                          double eps_speed, double like_scale = 1.0) {
    const size_t k = goals.size();
    std::vector<long double> w(k);
    long double total = 0.0L;
    const double speed = std::sqrt(vel.x * vel.x + vel.y * vel.y);
    for (size_t i = 0; i < k; ++i) {
        long double like = 1.0L;
        if (speed >= eps_speed) {
            const double dx = goals[i].x - hand.x;
            const double dy = goals[i].y - hand.y;
            const double d = std::sqrt(dx * dx + dy * dy);
            double cos_theta = 0.0;
            if (d > 1e-12) cos_theta = (vel.x * dx + vel.y * dy) / (speed * d);
            like = std::exp(static_cast<long double>(beta * cos_theta)) *
                   std::exp(static_cast<long double>(-gamma * d));
        }
        const long double mixed =
            (1.0L - lambda) * prior[i] + lambda / static_cast<long double>(k);
        w[i] = mixed * like * like_scale;
        total += w[i];
    }
    std::vector<double> out(k);
    for (size_t i = 0; i < k; ++i) out[i] = static_cast<double>(w[i] / total);
    return out;
}

/// 64-bit splitmix, for deriving independent test parameters from a
/// seed without touching the library rng.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double uniform01(uint64_t& state) {
    return static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
}

inline double uniform(uint64_t& state, double lo, double hi) {
    return lo + (hi - lo) * uniform01(state);
}

} // namespace oracles
