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
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "safehri/sim/harness.hpp"
#include "safehri/sim/metrics.hpp"
#include "safehri/sim/synth.hpp"

namespace {

using namespace safehri;

void print_metrics(const sim::Metrics& m) {
    std::cout << "min_separation " << sim::format_double(m.min_separation) << "\n";
    std::cout << "pause_count " << m.pause_count << "\n";
    for (double lat : m.resume_latencies) {
        std::cout << "resume_latency " << sim::format_double(lat) << "\n";
    }
    std::cout << "goal_reached " << (m.goal_reached ? 1 : 0) << "\n";
    std::cout << "time_in_co " << sim::format_double(m.time_in_co) << "\n";
}

int cmd_run(const std::string& scenario_path, std::optional<uint64_t> seed,
            std::optional<double> duration, const std::string& out_dir) {
    sim::Scenario s = sim::Scenario::load(scenario_path);
    if (seed) s.seed = *seed;
    if (duration) s.duration = *duration;
    s.validate();

    const sim::EventLog log = sim::run_scenario(s);
    std::filesystem::create_directories(out_dir);
    const std::string out_path = out_dir + "/events.log";
    sim::save_log(log, out_path);
    std::cout << "wrote " << out_path << " (" << log.records.size() << " records)\n";
    print_metrics(sim::compute_metrics(log));
    return 0;
}

int cmd_metrics(const std::string& log_path) {
    print_metrics(sim::compute_metrics(sim::load_log(log_path)));
    return 0;
}

int cmd_replay(const std::string& log_path) {
    const size_t checked = sim::replay_verify(sim::load_log(log_path));
    std::cout << "replay OK: " << checked << " verdicts reproduced\n";
    return 0;
}

int cmd_trace_csm(const std::string& scenario_path, const std::string& out_path) {
    const sim::Scenario s = sim::Scenario::load(scenario_path);
    sim::GaussianRng rng(s.seed);
    std::vector<csm::TorqueSample> stream;
    const long long n = std::llround(s.duration * s.rates.torque);
    stream.reserve(static_cast<size_t>(n));
    for (long long i = 0; i < n; ++i) {
        stream.push_back(sim::synth_torque(static_cast<double>(i) / s.rates.torque, s, rng));
    }
    const std::vector<csm::TraceRecord> trace = csm::trace_parallel(stream, s.csm_cfg);

    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    out << "t";
    for (int j : s.csm_cfg.monitored_joints) out << ",std_j" << j;
    out << ",state,warmup\n";
    for (const csm::TraceRecord& rec : trace) {
        out << sim::format_double(rec.t);
        for (double sd : rec.stds) out << ',' << sim::format_double(sd);
        out << ',' << to_string(rec.state) << ',' << (rec.warmup ? 1 : 0) << "\n";
    }
    std::cout << "wrote " << out_path << " (" << trace.size() << " rows)\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Safety supervision sandbox for human-robot shared workspaces"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string log_path;
    std::string out_dir = ".";
    std::string csv_path = "trace.csv";
    std::optional<uint64_t> seed;
    std::optional<double> duration;

    CLI::App* run = app.add_subcommand("run", "Run a scenario and write its event log");
    run->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--duration", duration, "Override the scenario duration, seconds");
    run->add_option("--out", out_dir, "Output directory for events.log");

    CLI::App* metrics = app.add_subcommand("metrics", "Recompute metrics from a log");
    metrics->add_option("--log", log_path, "Event log file")->required();

    CLI::App* replay = app.add_subcommand(
        "replay", "Re-run the monitors over a recorded log and check every verdict");
    replay->add_option("--log", log_path, "Event log file")->required();

    CLI::App* trace = app.add_subcommand(
        "trace-csm", "Write the per-sample torque-std trace of a scenario as CSV");
    trace->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
    trace->add_option("--out", csv_path, "Output CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(scenario_path, seed, duration, out_dir);
        if (metrics->parsed()) return cmd_metrics(log_path);
        if (replay->parsed()) return cmd_replay(log_path);
        if (trace->parsed()) return cmd_trace_csm(scenario_path, csv_path);
    } catch (const safehri::InvalidScenario& e) {
        std::cerr << "invalid scenario: " << e.what() << "\n";
        return 1;
    } catch (const safehri::MalformedLog& e) {
        std::cerr << "malformed log: " << e.what() << "\n";
        return 1;
    } catch (const safehri::sim::ReplayMismatch& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
