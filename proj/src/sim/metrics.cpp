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
#include "safehri/sim/metrics.hpp"

#include <limits>

#include "safehri/sim/scenario.hpp"

namespace safehri::sim {

Metrics compute_metrics(const EventLog& log) {
    if (log.header.scenario.is_null())
        throw MalformedLog("metrics: log header carries no scenario");
    Scenario scn;
    try {
        scn = Scenario::from_json(log.header.scenario);
    } catch (const InvalidScenario& e) {
        throw MalformedLog(std::string("metrics: bad header scenario: ") + e.what());
    }

    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr double kGoalTolerance = 0.01;

    Metrics m;
    m.min_separation = kInf;

    std::vector<Vec2> human_ws; // confident keypoints of the latest frame
    intent::InteractionMode mode = intent::InteractionMode::CE;
    double mode_since = 0.0;
    bool mode_anchored = false;
    DirectivePayload directive;
    double last_t = 0.0;

    for (const EventRecord& rec : log.records) {
        last_t = rec.t;
        if (const auto* frame = std::get_if<FramePayload>(&rec.payload)) {
            human_ws.clear();
            for (const vsm::Keypoint& kp : frame->keypoints) {
                if (kp.confidence >= scn.vsm_cfg.min_confidence) {
                    human_ws.push_back(scn.camera.unproject(kp.pos));
                }
            }
        } else if (const auto* verdict = std::get_if<VerdictPayload>(&rec.payload)) {
            // Only transitions are logged, so a Paused record is a pause
            // edge and a Running record is a resume edge.
            if (verdict->state == MonitorState::Paused) {
                ++m.pause_count;
            } else {
                m.resume_latencies.push_back(rec.t - verdict->dwell_start);
            }
        } else if (const auto* mp = std::get_if<ModePayload>(&rec.payload)) {
            if (mode_anchored && mode == intent::InteractionMode::CO)
                m.time_in_co += rec.t - mode_since;
            mode = mp->mode;
            mode_since = rec.t;
            mode_anchored = true;
        } else if (const auto* dp = std::get_if<DirectivePayload>(&rec.payload)) {
            directive = *dp;
        } else if (const auto* cmd = std::get_if<CommandPayload>(&rec.payload)) {
            for (Vec2 h : human_ws) {
                m.min_separation = std::min(m.min_separation, distance(cmd->pos, h));
            }
            if (directive.action == Action::ApfTrack && directive.goal_id >= 1 &&
                directive.goal_id <= static_cast<int>(scn.goals.goals.size())) {
                const Vec2 goal =
                    scn.goals.goals[static_cast<size_t>(directive.goal_id) - 1].pos;
                if (distance(cmd->pos, goal) <= kGoalTolerance) m.goal_reached = true;
            }
        }
    }
    if (mode_anchored && mode == intent::InteractionMode::CO)
        m.time_in_co += last_t - mode_since;
    return m;
}

std::vector<EventRecord> metric_records(const Metrics& m, double t) {
    std::vector<EventRecord> out;
    out.push_back({t, MetricPayload{"min_separation", m.min_separation}});
    out.push_back({t, MetricPayload{"pause_count", static_cast<double>(m.pause_count)}});
    for (double lat : m.resume_latencies) {
        out.push_back({t, MetricPayload{"resume_latency", lat}});
    }
    out.push_back({t, MetricPayload{"goal_reached", m.goal_reached ? 1.0 : 0.0}});
    out.push_back({t, MetricPayload{"time_in_co", m.time_in_co}});
    return out;
}

} // namespace safehri::sim
