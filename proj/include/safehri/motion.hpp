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
#include <utility>

#include "safehri/intent.hpp"
#include "safehri/types.hpp"

namespace safehri::motion {

struct ApfParams {
    double zeta = 1.0;        ///< attractive gain, 1/s
    double d_cap = 0.5;       ///< attraction saturation distance, m
    double eta = 0.05;        ///< repulsive gain, m^3/s
    double rho0 = 0.4;        ///< repulsion influence radius, m
    double v_max = 0.25;      ///< m/s
    double stall_speed = 0.005; ///< m/s below which the field counts as stalled

    void validate() const;
};

struct AdmittanceParams {
    double mass = 1.0;     ///< virtual mass, kg
    double damping = 20.0; ///< virtual damping, N·s/m
    double v_max = 0.25;   ///< m/s

    void validate() const;
};

/// Planar end-effector state.
struct RobotState {
    double t = 0.0;
    Vec2 pos;
    Vec2 vel;
};

enum class CommandSource { Apf, Admittance, Halt };

inline const char* to_string(CommandSource s) {
    switch (s) {
    case CommandSource::Apf: return "Apf";
    case CommandSource::Admittance: return "Admittance";
    default: return "Halt";
    }
}

/// Gated planar velocity command; |vel| <= v_max always, and Halt
/// commands carry zero velocity.
struct VelocityCommand {
    double t = 0.0;
    Vec2 vel;
    CommandSource source = CommandSource::Halt;
};

/// Quadratic attraction with saturation: zeta*(goal-pos) within d_cap
/// of the goal, constant-magnitude zeta*d_cap beyond it. Exactly zero
/// at the goal.
Vec2 attractive_velocity(Vec2 pos, Vec2 goal, const ApfParams& p);

/// Inverse-distance repulsion, active inside rho0 only:
/// eta*(1/rho - 1/rho0)*(1/rho^2) away from the obstacle. The
/// magnitude clamps at its rho = 1 mm value to guard the singularity.
Vec2 repulsive_velocity(Vec2 pos, Vec2 obstacle, const ApfParams& p);

/// One first-order APF step: sum attraction and all repulsions,
/// radially rescale to v_max, integrate position. If the field stalls
/// (net speed below stall_speed away from the goal with an obstacle in
/// influence) the command is Halt and the position holds: a stalled
/// safe stop, not an escape.
std::pair<RobotState, VelocityCommand> apf_step(const RobotState& state,
                                                Vec2 goal,
                                                std::span<const Vec2> obstacles,
                                                const ApfParams& p, double dt);

/// One admittance step rendering a virtual mass-damper, semi-implicit:
/// v' = (v + dt*F/m) / (1 + dt*c/m), radially clamped to v_max. With
/// zero force the speed decays geometrically for any dt > 0.
std::pair<RobotState, VelocityCommand> admittance_step(const RobotState& state,
                                                       const intent::Wrench& wrench,
                                                       const AdmittanceParams& p,
                                                       double dt);

} // namespace safehri::motion
