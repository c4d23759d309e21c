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

#include <vector>

#include "safehri/sim/event_log.hpp"

namespace safehri::sim {

struct Metrics {
    /// Min over control ticks of robot-to-nearest-confident-keypoint
    /// distance; +inf when no human was ever seen.
    double min_separation = 0.0;
    /// Running->Paused transitions across both monitors.
    int pause_count = 0;
    /// Per pause episode: resume time minus the start of the all-clear
    /// run that produced the resume.
    std::vector<double> resume_latencies;
    /// True once the robot came within 1 cm of its tracked goal.
    bool goal_reached = false;
    /// Seconds spent in cooperation mode.
    double time_in_co = 0.0;
};

/// Recomputes metrics from a parsed log (header scenario supplies the
/// camera map and goal geometry). Throws MalformedLog.
Metrics compute_metrics(const EventLog& log);

/// The trailing Metric records appended to every run log.
std::vector<EventRecord> metric_records(const Metrics& m, double t);

} // namespace safehri::sim
