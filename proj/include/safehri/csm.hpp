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

#include <cstddef>
#include <span>
#include <vector>

#include "safehri/types.hpp"

namespace safehri::csm {

/// Timestamped per-joint torque reading in N·m. Timestamps must be
/// non-decreasing across a stream.
struct TorqueSample {
    double t = 0.0;
    std::vector<double> torques;
};

struct CsmConfig {
    std::vector<int> monitored_joints = {0, 1};
    double window = 0.2;       ///< seconds
    double theta_hi = 2.0;     ///< N·m, trigger threshold (std >= theta_hi pauses)
    double theta_lo = 0.5;     ///< N·m, resume threshold (std < theta_lo required)
    double resume_dwell = 5.0; ///< seconds continuously below theta_lo before resume
    double sample_rate = 500.0; ///< Hz

    /// Window length in samples.
    int capacity() const;
    /// Throws std::invalid_argument on any violated invariant.
    void validate() const;
};

/// Population standard deviation (divide by n) of the values.
/// Throws InsufficientSamples for fewer than 2 values.
double rolling_std(std::span<const double> values);

namespace detail {

/// Dual-threshold hysteresis with resume dwell, over precomputed
/// per-sample stds. Shared by the streaming monitor and the trace
/// kernels so both produce the same verdict sequence.
struct ThresholdFsm {
    MonitorVerdict verdict;
    double below_since = -1.0; ///< start of the all-below-theta_lo run, <0 if none

    void update(double t, bool warmed_up, bool any_ge_hi, bool any_ge_lo,
                double resume_dwell);
};

} // namespace detail

/// Contact detector over a joint-torque stream.
///
/// Keeps a rolling window of the most recent `capacity` torque values
/// per monitored joint and computes the population std each sample.
/// No trigger can fire until the window is full. Once full: pauses
/// (UnexpectedContact) the moment any monitored joint's std reaches
/// theta_hi; resumes only after every monitored std has stayed
/// strictly below theta_lo continuously for resume_dwell seconds.
///
/// The std is recomputed over the window each step with a two-pass
/// sweep in chronological order. This keeps the streaming monitor
/// bit-identical to the batch trace kernels, which matters for exact
/// replay, and is immune to incremental-sum drift.
class Monitor {
public:
    explicit Monitor(const CsmConfig& cfg,
                     MonitorState initial = MonitorState::Running);

    /// Step one sample. Throws NonMonotonicTimestamp if time runs
    /// backward, JointIndexOutOfRange if the torque vector does not
    /// cover every monitored joint.
    MonitorVerdict step(const TorqueSample& sample);

    MonitorVerdict verdict() const { return fsm_.verdict; }
    bool warmed_up() const { return count_ >= static_cast<size_t>(capacity_); }
    /// Per-monitored-joint std of the current window (NaN until 2 samples).
    const std::vector<double>& stds() const { return stds_; }
    /// Start of the current all-below-theta_lo run, or negative if none.
    double below_since() const { return fsm_.below_since; }

private:
    CsmConfig cfg_;
    int capacity_;
    std::vector<std::vector<double>> ring_; // one ring per monitored joint
    size_t head_ = 0;
    size_t count_ = 0;
    std::vector<double> stds_;
    detail::ThresholdFsm fsm_;
    double last_t_ = 0.0;
    bool any_sample_ = false;
};

/// One row of a plot-ready std/threshold trace: per-sample record with
/// the per-joint stds and the verdict after stepping that sample.
struct TraceRecord {
    double t = 0.0;
    std::vector<double> stds;
    MonitorState state = MonitorState::Running;
    PauseCause cause = PauseCause::None;
    bool warmup = true;

    bool operator==(const TraceRecord&) const = default;
};

/// Serial reference: steps a Monitor over the stream, one record per
/// sample. Verdicts are identical to repeated Monitor::step by
/// construction.
std::vector<TraceRecord> trace(std::span<const TorqueSample> samples,
                               const CsmConfig& cfg);

/// OpenMP kernel: computes every window std in parallel (each sample's
/// window is a known slice of the stream), then runs the hysteresis
/// pass sequentially. Bit-identical to trace().
std::vector<TraceRecord> trace_parallel(std::span<const TorqueSample> samples,
                                        const CsmConfig& cfg);

} // namespace safehri::csm
