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
#include <string>
#include <vector>

#include <json.hpp>

#include "safehri/csm.hpp"
#include "safehri/intent.hpp"
#include "safehri/motion.hpp"
#include "safehri/sim/camera.hpp"
#include "safehri/supervisor.hpp"
#include "safehri/vsm.hpp"

namespace safehri::sim {

struct Waypoint {
    double t = 0.0;
    Vec2 pos; ///< workspace meters
};

/// Scripted human hand: piecewise-linear between waypoints, clamp-hold
/// outside them. Extra keypoints ride along as rigid offsets from the
/// hand. An empty waypoint list means no human in the scene.
struct HumanScript {
    std::vector<Waypoint> waypoints;
    std::vector<Vec2> extra_keypoints;
};

struct Interval {
    double t0 = 0.0;
    double duration = 0.0;

    bool contains(double t) const { return t >= t0 && t < t0 + duration; }
};

enum class Against { Human, Object };

inline const char* to_string(Against a) {
    return a == Against::Human ? "Human" : "Object";
}

/// Rectangular torque pulse on the monitored joints over
/// [t0, t0 + duration), with scenario ground truth about what was hit.
struct ContactEvent {
    double t0 = 0.0;
    double duration = 0.0;
    std::vector<double> amplitude; ///< N·m, one entry per monitored joint
    Against against = Against::Object;
};

/// Rectangular guidance-force pulse at the end effector.
struct GuidanceEvent {
    double t0 = 0.0;
    double duration = 0.0;
    Vec2 force; ///< N
};

struct Rates {
    int vision = 30;  ///< Hz
    int torque = 500; ///< Hz
    int control = 100; ///< Hz
};

struct Scenario {
    std::string name = "scenario";
    double duration = 10.0; ///< s
    uint64_t seed = 0;
    Rates rates;
    CameraMap camera;
    intent::GoalSet goals;
    Vec2 robot_start;
    HumanScript human;
    std::vector<Interval> dropouts; ///< keypoint confidence forced to 0
    std::vector<ContactEvent> contacts;
    std::vector<GuidanceEvent> guidance;
    double noise_sigma = 0.05; ///< N·m
    int hand_keypoint = 0;     ///< keypoint id carrying the hand

    vsm::VsmConfig vsm_cfg; ///< includes the motion range
    csm::CsmConfig csm_cfg;
    intent::TrackerConfig tracker;
    motion::ApfParams apf;
    motion::AdmittanceParams admittance;
    FusionConfig fusion;

    /// Base tick rate shared by all three loops (LCM of the rates).
    int base_rate() const;

    /// Throws InvalidScenario naming the offending field.
    void validate() const;

    static Scenario from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;

    static Scenario load(const std::string& path);
};

} // namespace safehri::sim
