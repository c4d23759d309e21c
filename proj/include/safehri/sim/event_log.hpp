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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "safehri/csm.hpp"
#include "safehri/intent.hpp"
#include "safehri/motion.hpp"
#include "safehri/supervisor.hpp"
#include "safehri/vsm.hpp"

namespace safehri::sim {

// Line-delimited event log: one record per line, `t Kind payload...`,
// fixed field order per kind, doubles in shortest round-trip form so a
// re-serialized parse is byte-identical.

struct FramePayload {
    std::vector<vsm::Keypoint> keypoints;
    bool operator==(const FramePayload&) const = default;
};
struct TorquePayload {
    std::vector<double> torques;
    bool operator==(const TorquePayload&) const = default;
};
struct WrenchPayload {
    Vec2 force;
    bool operator==(const WrenchPayload&) const = default;
};
struct VerdictPayload {
    std::string monitor; ///< "vsm" | "csm"
    MonitorState state = MonitorState::Running;
    PauseCause cause = PauseCause::None;
    double since = 0.0;
    /// Start of the all-clear/below-threshold run that led to a resume;
    /// equals `since` on pause records.
    double dwell_start = 0.0;
    bool operator==(const VerdictPayload&) const = default;
};
struct IntentPayload {
    intent::InteractionMode mode = intent::InteractionMode::CE;
    std::vector<double> posterior;
    bool operator==(const IntentPayload&) const = default;
};
struct ModePayload {
    intent::InteractionMode mode = intent::InteractionMode::CE;
    bool operator==(const ModePayload&) const = default;
};
struct DirectivePayload {
    Action action = Action::HaltAll;
    PauseCause cause = PauseCause::None;
    int goal_id = 0;
    bool operator==(const DirectivePayload&) const = default;
};
struct CommandPayload {
    Vec2 vel;
    motion::CommandSource source = motion::CommandSource::Halt;
    Vec2 pos; ///< robot position after applying the command
    bool operator==(const CommandPayload&) const = default;
};
struct ContactPayload {
    ContactKind kind = ContactKind::Emergent;
    double human_distance = 0.0;
    double vision_age = 0.0;
    std::string against; ///< scenario ground truth: Human | Object | Unknown
    bool operator==(const ContactPayload&) const = default;
};
struct MetricPayload {
    std::string name;
    double value = 0.0;
    bool operator==(const MetricPayload&) const = default;
};

using Payload = std::variant<FramePayload, TorquePayload, WrenchPayload,
                             VerdictPayload, IntentPayload, ModePayload,
                             DirectivePayload, CommandPayload, ContactPayload,
                             MetricPayload>;

struct EventRecord {
    double t = 0.0;
    Payload payload;
    bool operator==(const EventRecord&) const = default;
};

struct LogHeader {
    std::string version = "safehri-log v1";
    std::string rng;
    uint64_t seed = 0;
    nlohmann::json scenario;
    bool operator==(const LogHeader&) const = default;
};

struct EventLog {
    LogHeader header;
    std::vector<EventRecord> records;
    bool operator==(const EventLog&) const = default;
};

/// Shortest round-trip decimal form (to_chars); -0 normalizes to 0.
std::string format_double(double v);
/// Exact inverse of format_double. Throws MalformedLog on junk.
double parse_double(const std::string& s);

std::string serialize(const EventLog& log);
/// Throws MalformedLog with a line number on any structural problem,
/// including non-monotone record times.
EventLog parse(const std::string& text);

void save_log(const EventLog& log, const std::string& path);
EventLog load_log(const std::string& path);

} // namespace safehri::sim
