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
#include "safehri/supervisor.hpp"

#include <cmath>
#include <limits>

namespace safehri {

Directive arbitrate(const SupervisorInputs& in) {
    const double skew_limit = in.control_period + 1e-9;
    if (std::abs(in.now - in.vsm_asof) > skew_limit ||
        std::abs(in.now - in.csm_asof) > skew_limit ||
        std::abs(in.now - in.est.t) > skew_limit) {
        throw StaleInput("arbitrate: snapshot skew exceeds one control period");
    }

    if (in.csm.paused()) {
        return {in.now, Action::HaltAll, 0, PauseCause::UnexpectedContact};
    }
    if (in.vsm.paused()) {
        return {in.now, Action::HaltAll, 0, PauseCause::HumanInRange};
    }
    if (in.est.mode == intent::InteractionMode::CO) {
        return {in.now, Action::AdmittanceFollow, 0, PauseCause::None};
    }
    const size_t idx = intent::argmax(in.est.goal_posterior);
    return {in.now, Action::ApfTrack, static_cast<int>(idx) + 1, PauseCause::None};
}

motion::VelocityCommand gate_command(const Directive& d,
                                     const motion::VelocityCommand& cmd) {
    if (d.action == Action::HaltAll) {
        return {cmd.t, {0.0, 0.0}, motion::CommandSource::Halt};
    }
    return cmd;
}

ContactClass fuse_contact(double contact_t, const WorkspaceFrame& latest,
                          Vec2 robot_pos, const FusionConfig& cfg) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    if (latest.t < 0.0) {
        return {ContactKind::Emergent, kInf, kInf};
    }
    const double age = contact_t - latest.t;
    double nearest = kInf;
    for (Vec2 p : latest.points) {
        nearest = std::min(nearest, distance(p, robot_pos));
    }
    if (age > cfg.max_vision_age) {
        return {ContactKind::Emergent, nearest, age};
    }
    if (nearest <= cfg.r_h) {
        return {ContactKind::Emergent, nearest, age};
    }
    return {ContactKind::NonCritical, nearest, age};
}

Supervisor::Supervisor(const FusionConfig& fusion, double f_co)
    : fusion_(fusion), guidance_force_cap_(1.5 * f_co) {}

Supervisor::Decision Supervisor::decide(const SupervisorInputs& in,
                                        const WorkspaceFrame& latest_vision,
                                        Vec2 robot_pos,
                                        const intent::Wrench& wrench) {
    Decision out;

    if (in.csm.paused() && !csm_was_paused_) {
        episode_ = fuse_contact(in.csm.since, latest_vision, robot_pos, fusion_);
        out.new_contact = episode_;
    }
    if (!in.csm.paused()) episode_.reset();
    csm_was_paused_ = in.csm.paused();

    SupervisorInputs adjusted = in;
    if (in.csm.paused() && in.est.mode == intent::InteractionMode::CO && episode_ &&
        episode_->kind == ContactKind::NonCritical &&
        wrench.force.norm() <= guidance_force_cap_) {
        // Guidance-consistent contact with an object: keep following.
        adjusted.csm = {MonitorState::Running, PauseCause::None, in.csm.since};
    }

    out.directive = arbitrate(adjusted);
    return out;
}

} // namespace safehri
