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
#include "safehri/csm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace safehri::csm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Two-pass population std over values indexed by `at(i)`, i in
// chronological order. Both the ring-buffer monitor and the slice-based
// trace kernel funnel through this so their arithmetic is identical.
template <typename At>
double std_two_pass(size_t n, At&& at) {
    double sum = 0.0;
    for (size_t i = 0; i < n; ++i) sum += at(i);
    const double mean = sum / static_cast<double>(n);
    double sq = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d = at(i) - mean;
        sq += d * d;
    }
    return std::sqrt(sq / static_cast<double>(n));
}

} // namespace

int CsmConfig::capacity() const {
    return static_cast<int>(std::llround(window * sample_rate));
}

void CsmConfig::validate() const {
    if (!(window > 0.0)) throw std::invalid_argument("csm: window must be > 0");
    if (!(theta_lo > 0.0 && theta_lo < theta_hi))
        throw std::invalid_argument("csm: require 0 < theta_lo < theta_hi");
    if (!(resume_dwell > 0.0))
        throw std::invalid_argument("csm: resume_dwell must be > 0");
    if (!(sample_rate > 0.0))
        throw std::invalid_argument("csm: sample_rate must be > 0");
    if (monitored_joints.empty())
        throw std::invalid_argument("csm: monitored_joints must be non-empty");
    for (int j : monitored_joints) {
        if (j < 0) throw std::invalid_argument("csm: negative joint index");
    }
    if (capacity() < 2)
        throw std::invalid_argument("csm: window capacity must be >= 2 samples");
}

double rolling_std(std::span<const double> values) {
    if (values.size() < 2) {
        throw InsufficientSamples("rolling_std: need at least 2 values, got " +
                                  std::to_string(values.size()));
    }
    return std_two_pass(values.size(), [&](size_t i) { return values[i]; });
}

namespace detail {

void ThresholdFsm::update(double t, bool warmed_up, bool any_ge_hi,
                          bool any_ge_lo, double resume_dwell) {
    if (!warmed_up) return;

    if (any_ge_lo) {
        below_since = -1.0;
    } else if (below_since < 0.0) {
        below_since = t;
    }

    if (verdict.state == MonitorState::Running) {
        if (any_ge_hi) {
            verdict = {MonitorState::Paused, PauseCause::UnexpectedContact, t};
        }
    } else if (below_since >= 0.0 && t - below_since >= resume_dwell) {
        verdict = {MonitorState::Running, PauseCause::None, t};
    }
}

} // namespace detail

Monitor::Monitor(const CsmConfig& cfg, MonitorState initial)
    : cfg_(cfg), capacity_(cfg.capacity()) {
    cfg_.validate();
    ring_.assign(cfg_.monitored_joints.size(),
                 std::vector<double>(static_cast<size_t>(capacity_), 0.0));
    stds_.assign(cfg_.monitored_joints.size(), kNaN);
    if (initial == MonitorState::Paused) {
        fsm_.verdict = {MonitorState::Paused, PauseCause::UnexpectedContact, 0.0};
    }
}

MonitorVerdict Monitor::step(const TorqueSample& sample) {
    if (any_sample_ && sample.t < last_t_) {
        throw NonMonotonicTimestamp("csm: sample.t " + std::to_string(sample.t) +
                                    " < previous " + std::to_string(last_t_));
    }
    last_t_ = sample.t;
    any_sample_ = true;

    for (size_t k = 0; k < cfg_.monitored_joints.size(); ++k) {
        const size_t j = static_cast<size_t>(cfg_.monitored_joints[k]);
        if (j >= sample.torques.size()) {
            throw JointIndexOutOfRange(
                "csm: monitored joint " + std::to_string(j) +
                " not covered by torque vector of length " +
                std::to_string(sample.torques.size()));
        }
        ring_[k][head_] = sample.torques[j];
    }
    head_ = (head_ + 1) % static_cast<size_t>(capacity_);
    if (count_ < static_cast<size_t>(capacity_)) ++count_;

    // Chronological window sweep: the ring's oldest element sits at
    // head_ once full, at index 0 before that.
    const size_t n = count_;
    const size_t cap = static_cast<size_t>(capacity_);
    const size_t oldest = (count_ == cap) ? head_ : 0;
    bool any_ge_hi = false;
    bool any_ge_lo = false;
    for (size_t k = 0; k < ring_.size(); ++k) {
        if (n < 2) {
            stds_[k] = kNaN;
            continue;
        }
        const auto& buf = ring_[k];
        const double s = std_two_pass(n, [&](size_t i) {
            size_t idx = oldest + i;
            if (idx >= cap) idx -= cap;
            return buf[idx];
        });
        stds_[k] = s;
        if (s >= cfg_.theta_hi) any_ge_hi = true;
        if (s >= cfg_.theta_lo) any_ge_lo = true;
    }

    fsm_.update(sample.t, warmed_up(), any_ge_hi, any_ge_lo, cfg_.resume_dwell);
    return fsm_.verdict;
}

std::vector<TraceRecord> trace(std::span<const TorqueSample> samples,
                               const CsmConfig& cfg) {
    Monitor mon(cfg);
    std::vector<TraceRecord> out;
    out.reserve(samples.size());
    for (const TorqueSample& s : samples) {
        const MonitorVerdict v = mon.step(s);
        out.push_back({s.t, mon.stds(), v.state, v.cause, !mon.warmed_up()});
    }
    return out;
}

std::vector<TraceRecord> trace_parallel(std::span<const TorqueSample> samples,
                                        const CsmConfig& cfg) {
    cfg.validate();
    const auto n = static_cast<ptrdiff_t>(samples.size());
    const size_t cap = static_cast<size_t>(cfg.capacity());
    const size_t njoints = cfg.monitored_joints.size();

    std::vector<TraceRecord> out(static_cast<size_t>(n));

    // Timestamp sanity before touching windows; also validates joints.
    for (ptrdiff_t i = 0; i < n; ++i) {
        const TorqueSample& s = samples[static_cast<size_t>(i)];
        if (i > 0 && s.t < samples[static_cast<size_t>(i - 1)].t) {
            throw NonMonotonicTimestamp("csm: trace stream time runs backward at sample " +
                                        std::to_string(i));
        }
        for (int j : cfg.monitored_joints) {
            if (static_cast<size_t>(j) >= s.torques.size()) {
                throw JointIndexOutOfRange("csm: monitored joint " + std::to_string(j) +
                                           " missing at sample " + std::to_string(i));
            }
        }
    }

    // Allocate serially so the parallel loop is pure arithmetic.
    for (ptrdiff_t i = 0; i < n; ++i) {
        TraceRecord& rec = out[static_cast<size_t>(i)];
        rec.t = samples[static_cast<size_t>(i)].t;
        rec.warmup = static_cast<size_t>(i) + 1 < cap;
        rec.stds.assign(njoints, kNaN);
    }

    // Each sample's window is the slice (i-cap, i]; every std is
    // independent, so this is a flat parallel loop.
#pragma omp parallel for schedule(static)
    for (ptrdiff_t i = 0; i < n; ++i) {
        const size_t ui = static_cast<size_t>(i);
        const size_t win = std::min(ui + 1, cap);
        const size_t first = ui + 1 - win;
        if (win < 2) continue;
        TraceRecord& rec = out[ui];
        for (size_t k = 0; k < njoints; ++k) {
            const size_t j = static_cast<size_t>(cfg.monitored_joints[k]);
            rec.stds[k] = std_two_pass(
                win, [&](size_t w) { return samples[first + w].torques[j]; });
        }
    }

    // Sequential hysteresis pass over the precomputed stds.
    detail::ThresholdFsm fsm;
    for (ptrdiff_t i = 0; i < n; ++i) {
        TraceRecord& rec = out[static_cast<size_t>(i)];
        bool any_ge_hi = false;
        bool any_ge_lo = false;
        if (!rec.warmup) {
            for (double s : rec.stds) {
                if (s >= cfg.theta_hi) any_ge_hi = true;
                if (s >= cfg.theta_lo) any_ge_lo = true;
            }
        }
        fsm.update(rec.t, !rec.warmup, any_ge_hi, any_ge_lo, cfg.resume_dwell);
        rec.state = fsm.verdict.state;
        rec.cause = fsm.verdict.cause;
    }
    return out;
}

} // namespace safehri::csm
