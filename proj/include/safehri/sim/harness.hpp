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

#include <span>
#include <vector>

#include "safehri/sim/event_log.hpp"
#include "safehri/sim/scenario.hpp"

namespace safehri::sim {

struct ReplayMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Runs the full closed loop: torque ticks step the contact monitor,
/// vision ticks step the geofence monitor and goal posterior, control
/// ticks step the mode, arbitrate, generate and gate the command, and
/// integrate the robot. Multirate scheduling is integer tick counts on
/// the LCM base rate, so the same scenario and seed always produce a
/// byte-identical log.
EventLog run_scenario(const Scenario& s);

/// Independent scenario runs; with OpenMP available the runs execute
/// in parallel, and the result is element-wise identical to the serial
/// loop either way.
std::vector<EventLog> run_batch(std::span<const Scenario> scenarios,
                                bool parallel = true);

/// Serial reference for run_batch, kept for equivalence testing.
std::vector<EventLog> run_batch_serial(std::span<const Scenario> scenarios);

/// Re-runs both monitors over the streams recorded in the log and
/// checks every logged verdict transition. Throws ReplayMismatch on
/// the first disagreement, MalformedLog if the log lacks a usable
/// header. Returns the number of verdicts checked.
size_t replay_verify(const EventLog& log);

} // namespace safehri::sim
