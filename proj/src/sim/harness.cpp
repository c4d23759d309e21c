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
#include "safehri/sim/harness.hpp"

#include <cmath>
#include <optional>

#include "safehri/sim/metrics.hpp"
#include "safehri/sim/synth.hpp"

namespace safehri::sim {

namespace {

// Unprojected confident keypoints of one frame, or nothing when the
// frame carries no usable detection.
std::optional<WorkspaceFrame> informative(const vsm::KeypointFrame& frame,
                                          const Scenario& s) {
    WorkspaceFrame ws;
    ws.t = frame.t;
    for (const vsm::Keypoint& kp : frame.keypoints) {
        if (kp.confidence >= s.vsm_cfg.min_confidence) {
            ws.points.push_back(s.camera.unproject(kp.pos));
        }
    }
    if (ws.points.empty()) return std::nullopt;
    return ws;
}

const ContactEvent* active_contact(const Scenario& s, double t) {
    for (const ContactEvent& c : s.contacts) {
        if (t >= c.t0 && t < c.t0 + c.duration) return &c;
    }
    return nullptr;
}

} // namespace

EventLog run_scenario(const Scenario& s) {
    s.validate();

    EventLog log;
    log.header.rng = GaussianRng::kAlgorithm;
    log.header.seed = s.seed;
    log.header.scenario = s.to_json();

    const int base = s.base_rate();
    const long long total_ticks = std::llround(s.duration * base);
    const int torque_div = base / s.rates.torque;
    const int vision_div = base / s.rates.vision;
    const int control_div = base / s.rates.control;
    const double control_dt = 1.0 / s.rates.control;

    GaussianRng rng(s.seed);
    vsm::Monitor vsm_mon(s.vsm_cfg);
    csm::Monitor csm_mon(s.csm_cfg);
    intent::Tracker tracker(s.goals, s.tracker);
    Supervisor supervisor(s.fusion, s.tracker.f_co);
    motion::RobotState robot{0.0, s.robot_start, {0.0, 0.0}};

    MonitorVerdict last_vsm = vsm_mon.verdict();
    MonitorVerdict last_csm = csm_mon.verdict();
    // Latest two informative vision snapshots, newest first; contact
    // fusion wants the newest one not newer than the contact itself.
    WorkspaceFrame vision[2];
    std::optional<intent::InteractionMode> logged_mode;
    std::optional<Directive> logged_directive;
    bool safety_ok = true;

    for (long long k = 0; k < total_ticks; ++k) {
        const double t = static_cast<double>(k) / base;

        if (k % torque_div == 0) {
            const csm::TorqueSample sample = synth_torque(t, s, rng);
            log.records.push_back({t, TorquePayload{sample.torques}});
            const MonitorVerdict v = csm_mon.step(sample);
            if (v != last_csm) {
                const double dwell_start =
                    v.state == MonitorState::Running ? csm_mon.below_since() : v.since;
                log.records.push_back(
                    {t, VerdictPayload{"csm", v.state, v.cause, v.since, dwell_start}});
                last_csm = v;
            }
        }

        if (k % vision_div == 0) {
            const vsm::KeypointFrame frame = synth_frame(t, s);
            log.records.push_back({t, FramePayload{frame.keypoints}});
            const MonitorVerdict v = vsm_mon.step(frame);
            if (v != last_vsm) {
                const double dwell_start =
                    v.state == MonitorState::Running ? vsm_mon.clear_since() : v.since;
                log.records.push_back(
                    {t, VerdictPayload{"vsm", v.state, v.cause, v.since, dwell_start}});
                last_vsm = v;
            }

            if (auto ws = informative(frame, s)) {
                vision[1] = vision[0];
                vision[0] = *ws;
            }
            bool hand_seen = false;
            Vec2 hand_ws;
            for (const vsm::Keypoint& kp : frame.keypoints) {
                if (kp.id == s.hand_keypoint &&
                    kp.confidence >= s.vsm_cfg.min_confidence) {
                    hand_seen = true;
                    hand_ws = s.camera.unproject(kp.pos);
                    break;
                }
            }
            tracker.observe_hand(t, hand_ws, hand_seen);
            log.records.push_back({t, IntentPayload{tracker.mode(), tracker.posterior()}});
        }

        if (k % control_div == 0) {
            const intent::Wrench wrench = synth_wrench(t, s);
            if (wrench.force.norm() > 0.0) {
                log.records.push_back({t, WrenchPayload{wrench.force}});
            }
            const intent::InteractionMode mode = tracker.step_mode(wrench, safety_ok);
            if (!logged_mode || *logged_mode != mode) {
                log.records.push_back({t, ModePayload{mode}});
                logged_mode = mode;
            }

            SupervisorInputs in;
            in.vsm = vsm_mon.verdict();
            in.vsm_asof = t;
            in.csm = csm_mon.verdict();
            in.csm_asof = t;
            in.est = tracker.estimate(t);
            in.now = t;
            in.control_period = control_dt;

            // Newest informative frame not newer than the contact.
            const WorkspaceFrame& fusion_frame =
                (in.csm.paused() && vision[0].t > in.csm.since) ? vision[1] : vision[0];
            const Supervisor::Decision decision =
                supervisor.decide(in, fusion_frame, robot.pos, wrench);

            if (decision.new_contact) {
                const ContactEvent* truth = active_contact(s, in.csm.since);
                log.records.push_back(
                    {t, ContactPayload{decision.new_contact->kind,
                                       decision.new_contact->human_distance,
                                       decision.new_contact->vision_age,
                                       truth ? to_string(truth->against) : "Unknown"}});
            }
            const Directive directive = decision.directive;
            if (!logged_directive || logged_directive->action != directive.action ||
                logged_directive->goal_id != directive.goal_id ||
                logged_directive->cause != directive.cause) {
                log.records.push_back(
                    {t, DirectivePayload{directive.action, directive.cause,
                                         directive.goal_id}});
                logged_directive = directive;
            }

            motion::VelocityCommand cmd{t, {0.0, 0.0}, motion::CommandSource::Halt};
            switch (directive.action) {
            case Action::HaltAll:
                robot.vel = {0.0, 0.0};
                robot.t = t + control_dt;
                break;
            case Action::ApfTrack: {
                const Vec2 goal =
                    s.goals.goals[static_cast<size_t>(directive.goal_id) - 1].pos;
                std::tie(robot, cmd) =
                    motion::apf_step(robot, goal, vision[0].t >= 0.0
                                                      ? std::span<const Vec2>(vision[0].points)
                                                      : std::span<const Vec2>(),
                                     s.apf, control_dt);
                break;
            }
            case Action::AdmittanceFollow:
                std::tie(robot, cmd) =
                    motion::admittance_step(robot, wrench, s.admittance, control_dt);
                break;
            }
            cmd = gate_command(directive, cmd);
            log.records.push_back({t, CommandPayload{cmd.vel, cmd.source, robot.pos}});

            safety_ok = directive.action != Action::HaltAll;
        }
    }

    const double end_t = static_cast<double>(total_ticks) / base;
    const Metrics m = compute_metrics(log);
    for (EventRecord& rec : metric_records(m, end_t)) {
        log.records.push_back(std::move(rec));
    }
    return log;
}

std::vector<EventLog> run_batch_serial(std::span<const Scenario> scenarios) {
    std::vector<EventLog> out(scenarios.size());
    for (size_t i = 0; i < scenarios.size(); ++i) {
        out[i] = run_scenario(scenarios[i]);
    }
    return out;
}

std::vector<EventLog> run_batch(std::span<const Scenario> scenarios, bool parallel) {
    if (!parallel) return run_batch_serial(scenarios);
    std::vector<EventLog> out(scenarios.size());
    const auto n = static_cast<ptrdiff_t>(scenarios.size());
#pragma omp parallel for schedule(dynamic)
    for (ptrdiff_t i = 0; i < n; ++i) {
        out[static_cast<size_t>(i)] = run_scenario(scenarios[static_cast<size_t>(i)]);
    }
    return out;
}

size_t replay_verify(const EventLog& log) {
    if (log.header.scenario.is_null())
        throw MalformedLog("replay: log header carries no scenario");
    Scenario scn;
    try {
        scn = Scenario::from_json(log.header.scenario);
    } catch (const InvalidScenario& e) {
        throw MalformedLog(std::string("replay: bad header scenario: ") + e.what());
    }

    vsm::Monitor vsm_mon(scn.vsm_cfg);
    csm::Monitor csm_mon(scn.csm_cfg);
    // Last verdict acknowledged by a logged Verdict record, per monitor.
    MonitorVerdict acked_vsm = vsm_mon.verdict();
    MonitorVerdict acked_csm = csm_mon.verdict();
    bool pending_vsm = false;
    bool pending_csm = false;
    size_t checked = 0;

    auto mismatch = [](double t, const std::string& what) {
        throw ReplayMismatch("replay: at t=" + format_double(t) + " " + what);
    };

    for (const EventRecord& rec : log.records) {
        if (const auto* tp = std::get_if<TorquePayload>(&rec.payload)) {
            // A transition from the previous sample must have been
            // matched by a Verdict record before more stream arrives.
            if (pending_csm) mismatch(rec.t, "log is missing a csm transition");
            pending_csm = csm_mon.step({rec.t, tp->torques}) != acked_csm;
        } else if (const auto* fp = std::get_if<FramePayload>(&rec.payload)) {
            if (pending_vsm) mismatch(rec.t, "log is missing a vsm transition");
            pending_vsm = vsm_mon.step({rec.t, fp->keypoints}) != acked_vsm;
        } else if (const auto* vp = std::get_if<VerdictPayload>(&rec.payload)) {
            const bool is_csm = vp->monitor == "csm";
            const MonitorVerdict live = is_csm ? csm_mon.verdict() : vsm_mon.verdict();
            const double live_dwell =
                live.state == MonitorState::Running
                    ? (is_csm ? csm_mon.below_since() : vsm_mon.clear_since())
                    : live.since;
            if (live.state != vp->state || live.cause != vp->cause ||
                live.since != vp->since || live_dwell != vp->dwell_start) {
                mismatch(rec.t, vp->monitor + " verdict diverges from the log");
            }
            if (is_csm) {
                acked_csm = live;
                pending_csm = false;
            } else {
                acked_vsm = live;
                pending_vsm = false;
            }
            ++checked;
        }
    }
    if (pending_csm) mismatch(0.0, "log ends with an unlogged csm transition");
    if (pending_vsm) mismatch(0.0, "log ends with an unlogged vsm transition");
    return checked;
}

} // namespace safehri::sim
