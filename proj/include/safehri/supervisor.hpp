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

#include <optional>
#include <vector>

#include "safehri/intent.hpp"
#include "safehri/motion.hpp"
#include "safehri/types.hpp"

namespace safehri {

enum class Action { HaltAll, ApfTrack, AdmittanceFollow };

inline const char* to_string(Action a) {
    switch (a) {
    case Action::HaltAll: return "HaltAll";
    case Action::ApfTrack: return "ApfTrack";
    default: return "AdmittanceFollow";
    }
}

/// The supervisor's per-tick ruling. goal_id is the 1-based APF target
/// for ApfTrack and 0 otherwise; cause names the dominating input for
/// HaltAll and is None otherwise.
struct Directive {
    double t = 0.0;
    Action action = Action::HaltAll;
    int goal_id = 0;
    PauseCause cause = PauseCause::None;

    bool operator==(const Directive&) const = default;
};

enum class ContactKind { Emergent, NonCritical };

inline const char* to_string(ContactKind k) {
    return k == ContactKind::Emergent ? "Emergent" : "NonCritical";
}

/// Vision-fused classification of a detected contact.
struct ContactClass {
    ContactKind kind = ContactKind::Emergent;
    double human_distance = 0.0; ///< m, nearest confident keypoint at contact
    double vision_age = 0.0;     ///< s, contact time minus frame time
};

struct FusionConfig {
    double r_h = 0.3;            ///< m, human-proximity radius
    double max_vision_age = 0.2; ///< s, staler vision forces Emergent
};

/// Vision snapshot after unprojection: confident keypoints in
/// workspace coordinates. t < 0 means no informative frame exists yet.
struct WorkspaceFrame {
    double t = -1.0;
    std::vector<Vec2> points;
};

/// Monitor/intent snapshots with freshness stamps, sampled on one
/// control tick. The asof stamps are set by whoever read the snapshot;
/// skew beyond one control period signals a scheduling bug.
struct SupervisorInputs {
    MonitorVerdict vsm;
    double vsm_asof = 0.0;
    MonitorVerdict csm;
    double csm_asof = 0.0;
    intent::IntentEstimate est;
    double now = 0.0;
    double control_period = 0.01;
};

/// Priority arbitration: CSM pause dominates VSM pause dominates mode.
/// Any pause yields HaltAll; otherwise CE tracks the posterior argmax
/// goal (lowest id on ties) and CO follows guidance.
/// Throws StaleInput on snapshot skew beyond one control period.
Directive arbitrate(const SupervisorInputs& in);

/// Final actuation gate: HaltAll zeroes the command, anything else
/// passes it through unchanged.
motion::VelocityCommand gate_command(const Directive& d,
                                     const motion::VelocityCommand& cmd);

/// Classify a contact using vision context. Stale or missing vision
/// fails safe to Emergent; otherwise Emergent iff any confident
/// keypoint lies within r_h of the robot.
ContactClass fuse_contact(double contact_t, const WorkspaceFrame& latest,
                          Vec2 robot_pos, const FusionConfig& cfg);

/// Stateful per-tick supervisor: arbitrates, and routes CSM triggers
/// through contact fusion. A contact is classified once, on the tick
/// its pause first appears, and the classification holds for the whole
/// episode. During CO a NonCritical contact whose wrench is consistent
/// with guidance (|F| <= 1.5*f_co) is ignored so the human can keep
/// guiding; Emergent contacts halt in every mode.
class Supervisor {
public:
    Supervisor(const FusionConfig& fusion, double f_co);

    struct Decision {
        Directive directive;
        /// Set only on the tick a fresh contact was classified.
        std::optional<ContactClass> new_contact;
    };

    Decision decide(const SupervisorInputs& in, const WorkspaceFrame& latest_vision,
                    Vec2 robot_pos, const intent::Wrench& wrench);

private:
    FusionConfig fusion_;
    double guidance_force_cap_;
    bool csm_was_paused_ = false;
    std::optional<ContactClass> episode_;
};

} // namespace safehri
