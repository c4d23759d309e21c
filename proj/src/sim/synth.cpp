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
#include "safehri/sim/synth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace safehri::sim {

namespace {
constexpr double kTwoPi = 6.283185307179586476925286766559;
}

double GaussianRng::normal() {
    // u1 in (0,1] so the log is finite, u2 in [0,1).
    const double u1 = static_cast<double>((engine_() >> 11) + 1) * 0x1.0p-53;
    const double u2 = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

Vec2 sample_human(const HumanScript& script, double t) {
    const auto& wp = script.waypoints;
    if (wp.empty()) throw std::invalid_argument("sample_human: empty script");
    if (t <= wp.front().t) return wp.front().pos;
    if (t >= wp.back().t) return wp.back().pos;
    // First waypoint with time > t; linear blend with its predecessor.
    const auto it = std::upper_bound(
        wp.begin(), wp.end(), t,
        [](double v, const Waypoint& w) { return v < w.t; });
    const Waypoint& b = *it;
    const Waypoint& a = *(it - 1);
    const double u = (t - a.t) / (b.t - a.t);
    return a.pos + (b.pos - a.pos) * u;
}

csm::TorqueSample synth_torque(double t, const Scenario& s, GaussianRng& rng) {
    int max_joint = 0;
    for (int j : s.csm_cfg.monitored_joints) max_joint = std::max(max_joint, j);
    csm::TorqueSample sample;
    sample.t = t;
    sample.torques.assign(static_cast<size_t>(max_joint) + 1, 0.0);
    for (double& tau : sample.torques) {
        tau = s.noise_sigma > 0.0 ? s.noise_sigma * rng.normal() : 0.0;
    }
    for (const ContactEvent& c : s.contacts) {
        if (t < c.t0 || t >= c.t0 + c.duration) continue;
        for (size_t k = 0; k < s.csm_cfg.monitored_joints.size(); ++k) {
            sample.torques[static_cast<size_t>(s.csm_cfg.monitored_joints[k])] +=
                c.amplitude[k];
        }
    }
    return sample;
}

vsm::KeypointFrame synth_frame(double t, const Scenario& s) {
    vsm::KeypointFrame frame;
    frame.t = t;
    if (s.human.waypoints.empty()) return frame;

    double conf = 1.0;
    for (const Interval& d : s.dropouts) {
        if (d.contains(t)) {
            conf = 0.0;
            break;
        }
    }

    const Vec2 hand = sample_human(s.human, t);
    frame.keypoints.push_back({s.hand_keypoint, s.camera.project(hand), conf});
    int next_id = s.hand_keypoint + 1;
    for (Vec2 off : s.human.extra_keypoints) {
        frame.keypoints.push_back({next_id++, s.camera.project(hand + off), conf});
    }
    return frame;
}

intent::Wrench synth_wrench(double t, const Scenario& s) {
    Vec2 f{0.0, 0.0};
    for (const GuidanceEvent& g : s.guidance) {
        if (t >= g.t0 && t < g.t0 + g.duration) f += g.force;
    }
    return {t, f};
}

} // namespace safehri::sim
