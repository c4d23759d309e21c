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

#include "safehri/types.hpp"

namespace safehri::intent {

/// CE: human and robot work on separate subtasks in the shared space.
/// CO: the human physically guides the robot.
enum class InteractionMode { CE, CO };

inline const char* to_string(InteractionMode m) {
    return m == InteractionMode::CE ? "CE" : "CO";
}

struct Goal {
    int id = 1; ///< 1-based, consecutive
    Vec2 pos;   ///< workspace meters
};

struct GoalSet {
    std::vector<Goal> goals;
    Vec2 prep_area;

    /// Throws std::invalid_argument unless ids are consecutive from 1
    /// and positions pairwise distinct.
    void validate() const;
};

/// Planar external force at the end effector.
struct Wrench {
    double t = 0.0;
    Vec2 force; ///< N
};

struct IntentEstimate {
    std::vector<double> goal_posterior; ///< sums to 1
    InteractionMode mode = InteractionMode::CE;
    double t = 0.0;
};

struct TrackerConfig {
    double beta = 4.0;      ///< heading-likelihood concentration
    double gamma = 1.0;     ///< distance decay, 1/m
    double lambda = 0.02;   ///< per-step forgetting toward uniform, in [0,1]
    double eps_speed = 0.02; ///< m/s below which hand motion is uninformative
    double f_co = 5.0;      ///< N, sustained force switching CE -> CO
    double f_ce = 1.0;      ///< N, relaxed force switching CO -> CE
    double t_co = 0.3;      ///< s, dwell for CE -> CO
    double t_ce = 0.5;      ///< s, dwell for CO -> CE

    void validate() const;
};

/// Unnormalized likelihood of one goal given hand motion: a heading
/// term exp(beta*cos(theta)) times a distance decay exp(-gamma*d).
/// Below eps_speed the observation is uninformative and every goal
/// gets likelihood 1.
double goal_likelihood(Vec2 hand_pos, Vec2 hand_vel, Vec2 goal_pos,
                       const TrackerConfig& cfg);

/// One recursive-Bayes step: mixes the prior toward uniform by lambda,
/// multiplies by per-goal likelihoods, renormalizes. Falls back to the
/// mixed prior if every likelihood underflows to zero.
/// Throws DimensionMismatch if prior length != goal count.
std::vector<double> goal_posterior_step(std::span<const double> prior,
                                        Vec2 hand_pos, Vec2 hand_vel,
                                        const GoalSet& goals,
                                        const TrackerConfig& cfg);

/// Lowest-index maximum, for deterministic goal selection.
size_t argmax(std::span<const double> values);

/// CE/CO switch driven by end-effector force with dual thresholds and
/// dwell on both edges: CE->CO after |F| >= f_co held t_co seconds
/// (and only while safety_ok), CO->CE after |F| <= f_ce held t_ce
/// seconds. Forces between the thresholds hold the current mode.
/// safety_ok=false forces CE immediately and clears both dwell runs.
class ModeTracker {
public:
    explicit ModeTracker(const TrackerConfig& cfg);

    InteractionMode step(const Wrench& w, bool safety_ok);
    InteractionMode mode() const { return mode_; }

private:
    TrackerConfig cfg_;
    InteractionMode mode_ = InteractionMode::CE;
    double hi_since_ = -1.0;
    double lo_since_ = -1.0;
    double last_t_ = 0.0;
    bool any_sample_ = false;
};

/// Two-level tracker: goal posterior updated at the vision rate from
/// hand observations, interaction mode updated at the control rate
/// from wrench. Hand velocity is a backward difference between
/// consecutive confident observations.
class Tracker {
public:
    Tracker(GoalSet goals, const TrackerConfig& cfg);

    /// Vision-rate update. A non-confident observation holds the
    /// posterior unchanged.
    void observe_hand(double t, Vec2 hand_ws, bool confident);

    /// Control-rate update of the interaction mode.
    InteractionMode step_mode(const Wrench& w, bool safety_ok);

    const std::vector<double>& posterior() const { return posterior_; }
    InteractionMode mode() const { return mode_.mode(); }
    const GoalSet& goals() const { return goals_; }
    IntentEstimate estimate(double t) const;

private:
    GoalSet goals_;
    TrackerConfig cfg_;
    ModeTracker mode_;
    std::vector<double> posterior_;
    bool have_prev_ = false;
    double prev_t_ = 0.0;
    Vec2 prev_pos_;
};

} // namespace safehri::intent
