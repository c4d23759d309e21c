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

#include <vector>

#include "safehri/types.hpp"

namespace safehri::vsm {

/// One detected skeleton keypoint in image space.
struct Keypoint {
    int id = 0;
    Vec2 pos;                ///< image pixels
    double confidence = 0.0; ///< in [0, 1]

    bool operator==(const Keypoint&) const = default;
};

/// Timestamped keypoint set, possibly empty. Timestamps must strictly
/// increase across a stream.
struct KeypointFrame {
    double t = 0.0;
    std::vector<Keypoint> keypoints;
};

/// Rectangular geofence for the robot's reachable area, in image space.
struct MotionRange {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    bool valid() const { return x_min < x_max && y_min < y_max; }
};

struct VsmConfig {
    MotionRange range;
    double min_confidence = 0.3; ///< keypoints below this are ignored
    double resume_dwell = 0.0;   ///< seconds of continuous all-clear before resume
};

/// Boundary-inclusive containment: a point exactly on the rectangle
/// edge counts as inside.
bool point_in_range(Vec2 p, const MotionRange& r);

/// Pause/resume state machine over keypoint streams.
///
/// Pauses (HumanInRange) as soon as any confident keypoint lies in the
/// motion range. Resumes only after a frame with at least one confident
/// keypoint and none of them in range, held continuously for
/// `resume_dwell` seconds. Frames with no confident keypoints hold the
/// current state: losing track of a human who was inside must not
/// resume the robot.
class Monitor {
public:
    explicit Monitor(const VsmConfig& cfg);

    /// Step one frame. Throws NonMonotonicTimestamp unless frame.t is
    /// strictly greater than the previous stepped frame's t.
    MonitorVerdict step(const KeypointFrame& frame);

    MonitorVerdict verdict() const { return verdict_; }

    /// Start of the current unbroken all-clear run, or a negative value
    /// when no run is active. Used for resume-latency bookkeeping.
    double clear_since() const { return clear_since_; }

private:
    VsmConfig cfg_;
    MonitorVerdict verdict_;
    double last_t_ = -1.0;
    bool any_frame_ = false;
    double clear_since_ = -1.0;
};

} // namespace safehri::vsm
