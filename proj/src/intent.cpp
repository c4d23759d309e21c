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
#include "safehri/intent.hpp"

#include <cmath>
#include <stdexcept>

namespace safehri::intent {

void GoalSet::validate() const {
    if (goals.empty()) throw std::invalid_argument("goals: need at least one goal");
    for (size_t i = 0; i < goals.size(); ++i) {
        if (goals[i].id != static_cast<int>(i) + 1)
            throw std::invalid_argument("goals: ids must be consecutive from 1");
        if (!goals[i].pos.finite())
            throw std::invalid_argument("goals: non-finite goal position");
        for (size_t j = 0; j < i; ++j) {
            if (goals[i].pos == goals[j].pos)
                throw std::invalid_argument("goals: positions must be pairwise distinct");
        }
    }
}

void TrackerConfig::validate() const {
    if (!(lambda >= 0.0 && lambda <= 1.0))
        throw std::invalid_argument("tracker: lambda must be in [0,1]");
    if (!(f_ce < f_co))
        throw std::invalid_argument("tracker: require f_ce < f_co");
    if (!(t_co > 0.0 && t_ce > 0.0))
        throw std::invalid_argument("tracker: dwell times must be > 0");
    if (!(eps_speed >= 0.0))
        throw std::invalid_argument("tracker: eps_speed must be >= 0");
}

double goal_likelihood(Vec2 hand_pos, Vec2 hand_vel, Vec2 goal_pos,
                       const TrackerConfig& cfg) {
    const double speed = hand_vel.norm();
    if (speed < cfg.eps_speed) return 1.0;
    const Vec2 to_goal = goal_pos - hand_pos;
    const double d = to_goal.norm();
    // On top of the goal the heading is undefined; score it neutral.
    const double cos_theta = d > 1e-12 ? hand_vel.dot(to_goal) / (speed * d) : 0.0;
    return std::exp(cfg.beta * cos_theta) * std::exp(-cfg.gamma * d);
}

std::vector<double> goal_posterior_step(std::span<const double> prior,
                                        Vec2 hand_pos, Vec2 hand_vel,
                                        const GoalSet& goals,
                                        const TrackerConfig& cfg) {
    const size_t k = goals.goals.size();
    if (prior.size() != k) {
        throw DimensionMismatch("posterior: prior length " +
                                std::to_string(prior.size()) + " != goal count " +
                                std::to_string(k));
    }
    const double uniform = 1.0 / static_cast<double>(k);
    std::vector<double> post(k);
    double total = 0.0;
    for (size_t i = 0; i < k; ++i) {
        const double mixed = (1.0 - cfg.lambda) * prior[i] + cfg.lambda * uniform;
        post[i] = mixed * goal_likelihood(hand_pos, hand_vel, goals.goals[i].pos, cfg);
        total += post[i];
    }
    if (!(total > 0.0) || !std::isfinite(total)) {
        // Every likelihood underflowed (hand far from all goals).
        for (size_t i = 0; i < k; ++i) {
            post[i] = (1.0 - cfg.lambda) * prior[i] + cfg.lambda * uniform;
        }
        return post;
    }
    for (double& p : post) p /= total;
    return post;
}

size_t argmax(std::span<const double> values) {
    size_t best = 0;
    for (size_t i = 1; i < values.size(); ++i) {
        if (values[i] > values[best]) best = i;
    }
    return best;
}

ModeTracker::ModeTracker(const TrackerConfig& cfg) : cfg_(cfg) {
    cfg_.validate();
}

InteractionMode ModeTracker::step(const Wrench& w, bool safety_ok) {
    if (any_sample_ && w.t <= last_t_) {
        throw NonMonotonicTimestamp("mode: wrench t " + std::to_string(w.t) +
                                    " <= previous " + std::to_string(last_t_));
    }
    last_t_ = w.t;
    any_sample_ = true;

    if (!safety_ok) {
        mode_ = InteractionMode::CE;
        hi_since_ = -1.0;
        lo_since_ = -1.0;
        return mode_;
    }

    const double f = w.force.norm();
    if (f >= cfg_.f_co) {
        if (hi_since_ < 0.0) hi_since_ = w.t;
        lo_since_ = -1.0;
    } else if (f <= cfg_.f_ce) {
        if (lo_since_ < 0.0) lo_since_ = w.t;
        hi_since_ = -1.0;
    } else {
        hi_since_ = -1.0;
        lo_since_ = -1.0;
    }

    if (mode_ == InteractionMode::CE) {
        if (hi_since_ >= 0.0 && w.t - hi_since_ >= cfg_.t_co) {
            mode_ = InteractionMode::CO;
        }
    } else {
        if (lo_since_ >= 0.0 && w.t - lo_since_ >= cfg_.t_ce) {
            mode_ = InteractionMode::CE;
        }
    }
    return mode_;
}

Tracker::Tracker(GoalSet goals, const TrackerConfig& cfg)
    : goals_(std::move(goals)), cfg_(cfg), mode_(cfg) {
    goals_.validate();
    posterior_.assign(goals_.goals.size(), 1.0 / goals_.goals.size());
}

void Tracker::observe_hand(double t, Vec2 hand_ws, bool confident) {
    if (!confident) return;
    Vec2 vel{0.0, 0.0};
    if (have_prev_ && t > prev_t_) {
        vel = (hand_ws - prev_pos_) / (t - prev_t_);
    }
    posterior_ = goal_posterior_step(posterior_, hand_ws, vel, goals_, cfg_);
    have_prev_ = true;
    prev_t_ = t;
    prev_pos_ = hand_ws;
}

InteractionMode Tracker::step_mode(const Wrench& w, bool safety_ok) {
    return mode_.step(w, safety_ok);
}

IntentEstimate Tracker::estimate(double t) const {
    return {posterior_, mode_.mode(), t};
}

} // namespace safehri::intent
