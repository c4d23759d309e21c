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

#include <cstdint>
#include <random>

#include "safehri/csm.hpp"
#include "safehri/intent.hpp"
#include "safehri/sim/scenario.hpp"
#include "safehri/vsm.hpp"

namespace safehri::sim {

/// Seedable portable Gaussian source. The algorithm is pinned so that
/// a log header can name it: mt19937_64 uniforms through the cosine
/// branch of Box-Muller, one variate per draw.
class GaussianRng {
public:
    static constexpr const char* kAlgorithm = "mt19937_64-boxmuller-cos";

    explicit GaussianRng(uint64_t seed) : engine_(seed) {}

    double normal();

private:
    std::mt19937_64 engine_;
};

/// Hand position at time t: exact at waypoints, linear in between,
/// clamp-held outside. Requires a non-empty script.
Vec2 sample_human(const HumanScript& script, double t);

/// Torque sample at time t: Gaussian noise per joint plus the sum of
/// active contact pulses on the monitored joints. Deterministic given
/// the rng state and call order.
csm::TorqueSample synth_torque(double t, const Scenario& s, GaussianRng& rng);

/// Keypoint frame at time t: hand plus rigid extra keypoints projected
/// to image space, confidence 1 (0 during scripted dropouts). Empty
/// when the scenario has no human.
vsm::KeypointFrame synth_frame(double t, const Scenario& s);

/// Guidance wrench at time t (sum of active pulses).
intent::Wrench synth_wrench(double t, const Scenario& s);

} // namespace safehri::sim
