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
#include "safehri/motion.hpp"

#include <cmath>
#include <stdexcept>

namespace safehri::motion {

namespace {
constexpr double kRhoMin = 1e-3;     // m, repulsion singularity guard
constexpr double kGoalTolerance = 0.01; // m, stall rule only applies farther out
} // namespace

void ApfParams::validate() const {
    if (!(zeta > 0.0 && d_cap > 0.0 && eta > 0.0 && rho0 > 0.0 && v_max > 0.0 &&
          stall_speed > 0.0)) {
        throw std::invalid_argument("apf: all parameters must be > 0");
    }
}

void AdmittanceParams::validate() const {
    if (!(mass > 0.0 && damping > 0.0 && v_max > 0.0)) {
        throw std::invalid_argument("admittance: all parameters must be > 0");
    }
}

Vec2 attractive_velocity(Vec2 pos, Vec2 goal, const ApfParams& p) {
    const Vec2 to_goal = goal - pos;
    const double d = to_goal.norm();
    if (d <= p.d_cap) return to_goal * p.zeta;
    return to_goal * (p.zeta * p.d_cap / d);
}

Vec2 repulsive_velocity(Vec2 pos, Vec2 obstacle, const ApfParams& p) {
    const Vec2 away = pos - obstacle;
    const double rho = away.norm();
    if (rho >= p.rho0) return {0.0, 0.0};
    const double rho_c = std::max(rho, kRhoMin);
    const double mag = p.eta * (1.0 / rho_c - 1.0 / p.rho0) / (rho_c * rho_c);
    // Numerically coincident with the obstacle: no usable direction;
    // push along a fixed axis rather than emit NaN.
    const Vec2 dir = rho > 1e-12 ? away / rho : Vec2{1.0, 0.0};
    return dir * mag;
}

std::pair<RobotState, VelocityCommand> apf_step(const RobotState& state,
                                                Vec2 goal,
                                                std::span<const Vec2> obstacles,
                                                const ApfParams& p, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("apf_step: dt must be > 0");

    Vec2 v_raw = attractive_velocity(state.pos, goal, p);
    bool obstacle_in_influence = false;
    for (Vec2 ob : obstacles) {
        if (distance(state.pos, ob) < p.rho0) obstacle_in_influence = true;
        v_raw += repulsive_velocity(state.pos, ob, p);
    }
    const Vec2 v = clamp_norm(v_raw, p.v_max);

    const double dist_to_goal = distance(state.pos, goal);
    if (v.norm() < p.stall_speed && dist_to_goal > kGoalTolerance &&
        obstacle_in_influence) {
        RobotState next{state.t + dt, state.pos, {0.0, 0.0}};
        return {next, {state.t, {0.0, 0.0}, CommandSource::Halt}};
    }

    RobotState next{state.t + dt, state.pos + v * dt, v};
    return {next, {state.t, v, CommandSource::Apf}};
}

std::pair<RobotState, VelocityCommand> admittance_step(const RobotState& state,
                                                       const intent::Wrench& wrench,
                                                       const AdmittanceParams& p,
                                                       double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("admittance_step: dt must be > 0");

    const Vec2 pushed = state.vel + wrench.force * (dt / p.mass);
    Vec2 v = pushed / (1.0 + dt * p.damping / p.mass);
    v = clamp_norm(v, p.v_max);

    RobotState next{state.t + dt, state.pos + v * dt, v};
    return {next, {state.t, v, CommandSource::Admittance}};
}

} // namespace safehri::motion
