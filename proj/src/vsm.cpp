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
#include "safehri/vsm.hpp"

namespace safehri::vsm {

bool point_in_range(Vec2 p, const MotionRange& r) {
    return p.x >= r.x_min && p.x <= r.x_max && p.y >= r.y_min && p.y <= r.y_max;
}

Monitor::Monitor(const VsmConfig& cfg) : cfg_(cfg) {}

MonitorVerdict Monitor::step(const KeypointFrame& frame) {
    if (any_frame_ && frame.t <= last_t_) {
        throw NonMonotonicTimestamp("vsm: frame.t " + std::to_string(frame.t) +
                                    " <= previous " + std::to_string(last_t_));
    }
    last_t_ = frame.t;
    any_frame_ = true;

    // A keypoint counts only if confident and locatable; anything else
    // is neither inside- nor outside-evidence.
    bool any_confident = false;
    bool any_inside = false;
    for (const Keypoint& kp : frame.keypoints) {
        if (kp.confidence < cfg_.min_confidence || !kp.pos.finite()) continue;
        any_confident = true;
        if (point_in_range(kp.pos, cfg_.range)) {
            any_inside = true;
            break;
        }
    }

    if (any_inside) {
        clear_since_ = -1.0;
        if (verdict_.state == MonitorState::Running) {
            verdict_ = {MonitorState::Paused, PauseCause::HumanInRange, frame.t};
        }
        return verdict_;
    }

    if (!any_confident) {
        // Blind frame: hold state, and break any all-clear run.
        clear_since_ = -1.0;
        return verdict_;
    }

    // Confident detections, all outside the range.
    if (clear_since_ < 0.0) clear_since_ = frame.t;
    if (verdict_.state == MonitorState::Paused &&
        frame.t - clear_since_ >= cfg_.resume_dwell) {
        verdict_ = {MonitorState::Running, PauseCause::None, frame.t};
    }
    return verdict_;
}

} // namespace safehri::vsm
