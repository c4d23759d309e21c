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

// Scenario builders shared by the harness tests and the acceptance
// suite. Geometry: 1 m x 1 m workspace imaged at 100 px/m with offset
// (320, 240); the robot route runs west to east along y = 0.5.

#include <cmath>

#include "oracles.hpp"
#include "safehri/sim/scenario.hpp"

namespace test_scenarios {

using namespace safehri;

/// Geofence parked far outside the imaged workspace, for scenarios
/// that exercise other modules.
inline vsm::MotionRange far_range() { return {10000, 10000, 10010, 10010}; }

/// No human; robot tracks goal 1 at (0.9, 0.5) from (0.1, 0.5). The
/// goal areas sit together on the east bench, so intention retargets
/// keep the robot's course transverse to hand sweeps.
inline sim::Scenario quiet() {
    sim::Scenario s;
    s.name = "quiet";
    s.duration = 10.0;
    s.seed = 1;
    s.robot_start = {0.1, 0.5};
    s.goals.goals = {{1, {0.9, 0.5}}, {2, {0.9, 0.62}}, {3, {0.9, 0.38}}, {4, {0.8, 0.55}}};
    s.goals.prep_area = {0.1, 0.3};
    s.vsm_cfg.range = far_range();
    return s;
}

/// Hand sweeps across the robot's route at 0.5 m/s: a transverse
/// crossing (85-95 degrees off the route) whose abscissa, direction
/// and start time are derived from the seed. Start times put the
/// crossing just behind or beside the working robot, within repulsion
/// range but clear of head-on interception: the hand moves at twice
/// the robot's speed cap, so no avoidance policy can hold a separation
/// floor against a deliberate head-on overtake.
inline sim::Scenario sweep(uint64_t seed) {
    sim::Scenario s = quiet();
    s.name = "sweep";
    s.seed = seed;

    uint64_t st = seed * 0x9e3779b97f4a7c15ULL + 1;
    const double x_c = oracles::uniform(st, 0.35, 0.65);
    const double angle =
        oracles::uniform(st, 85.0, 95.0) * 3.14159265358979323846 / 180.0;
    const double flip = oracles::uniform01(st) < 0.5 ? -1.0 : 1.0;
    const double t_s = oracles::uniform(st, 1.2, 3.0);

    const Vec2 u{std::cos(angle) * flip, std::sin(angle) * flip};
    const Vec2 c{x_c, 0.5};
    const double reach = 0.8;          // m either side of the route
    const double speed = 0.5;          // m/s
    const double leg = 2.0 * reach / speed;
    s.human.waypoints = {{t_s, c - u * reach}, {t_s + leg, c + u * reach}};
    return s;
}

/// Robot parked on its goal; hand holds still 0.2 m away, inside the
/// geofence, and a 6 N·m pulse hits the base joints at t0 = 2 s.
inline sim::Scenario human_contact(bool dropout_at_contact = false) {
    sim::Scenario s = quiet();
    s.name = dropout_at_contact ? "human_contact_blind" : "human_contact";
    s.seed = 3;
    s.goals.goals[0].pos = s.robot_start; // stay home
    s.human.waypoints = {{0.0, {0.3, 0.5}}};
    // Geofence covering the hand keeps the robot vision-paused, so the
    // contact geometry stays put.
    s.vsm_cfg.range = {340, 280, 360, 300};
    s.contacts = {{2.0, 0.5, {6.0, 6.0}, sim::Against::Human}};
    if (dropout_at_contact) s.dropouts = {{1.5, 1.0}};
    return s;
}

/// Hand visible but a meter away; the pulse is a collision with the
/// workspace, not the human.
inline sim::Scenario object_contact() {
    sim::Scenario s = quiet();
    s.name = "object_contact";
    s.seed = 4;
    s.goals.goals[0].pos = s.robot_start;
    s.human.waypoints = {{0.0, {1.2, 0.5}}};
    s.contacts = {{2.0, 0.5, {6.0, 6.0}, sim::Against::Object}};
    return s;
}

/// No human; an 8 N guidance pulse over [2, 4) drives CE->CO->CE.
inline sim::Scenario guidance() {
    sim::Scenario s = quiet();
    s.name = "guidance";
    s.seed = 5;
    s.guidance = {{2.0, 2.0, {8.0, 0.0}}};
    return s;
}

/// Hand crosses into the geofence strictly between vision frames 31
/// and 32 and leaves strictly between frames 61 and 62 (x runs at
/// 0.1 m/s from -0.005 m; the range spans x in [0.1, 0.2] m).
inline sim::Scenario vsm_crossing(bool dropout_inside = false) {
    sim::Scenario s = quiet();
    s.name = "vsm_crossing";
    s.seed = 6;
    s.vsm_cfg.range = {330, 250, 340, 270}; // ws x [0.1, 0.2], y [0.1, 0.3]
    s.human.waypoints = {{0.0, {-0.005, 0.15}}, {4.0, {0.395, 0.15}}};
    if (dropout_inside) s.dropouts = {{1.5, 0.3}};
    return s;
}

constexpr int kCrossingPauseFrame = 32;
constexpr int kCrossingResumeFrame = 62;

} // namespace test_scenarios
