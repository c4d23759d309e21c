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
#include "safehri/sim/event_log.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

namespace safehri::sim {

namespace {

using intent::InteractionMode;

MonitorState state_from(const std::string& s, size_t line) {
    if (s == "Running") return MonitorState::Running;
    if (s == "Paused") return MonitorState::Paused;
    throw MalformedLog("line " + std::to_string(line) + ": bad state '" + s + "'");
}

PauseCause cause_from(const std::string& s, size_t line) {
    if (s == "None") return PauseCause::None;
    if (s == "HumanInRange") return PauseCause::HumanInRange;
    if (s == "UnexpectedContact") return PauseCause::UnexpectedContact;
    throw MalformedLog("line " + std::to_string(line) + ": bad cause '" + s + "'");
}

InteractionMode mode_from(const std::string& s, size_t line) {
    if (s == "CE") return InteractionMode::CE;
    if (s == "CO") return InteractionMode::CO;
    throw MalformedLog("line " + std::to_string(line) + ": bad mode '" + s + "'");
}

Action action_from(const std::string& s, size_t line) {
    if (s == "HaltAll") return Action::HaltAll;
    if (s == "ApfTrack") return Action::ApfTrack;
    if (s == "AdmittanceFollow") return Action::AdmittanceFollow;
    throw MalformedLog("line " + std::to_string(line) + ": bad action '" + s + "'");
}

motion::CommandSource source_from(const std::string& s, size_t line) {
    if (s == "Apf") return motion::CommandSource::Apf;
    if (s == "Admittance") return motion::CommandSource::Admittance;
    if (s == "Halt") return motion::CommandSource::Halt;
    throw MalformedLog("line " + std::to_string(line) + ": bad source '" + s + "'");
}

ContactKind kind_from(const std::string& s, size_t line) {
    if (s == "Emergent") return ContactKind::Emergent;
    if (s == "NonCritical") return ContactKind::NonCritical;
    throw MalformedLog("line " + std::to_string(line) + ": bad contact kind '" + s + "'");
}

// Token cursor over one record line.
struct Fields {
    std::vector<std::string> tok;
    size_t next = 0;
    size_t line = 0;

    const std::string& str() {
        if (next >= tok.size())
            throw MalformedLog("line " + std::to_string(line) + ": truncated record");
        return tok[next++];
    }
    double num() {
        const std::string& s = str();
        try {
            return parse_double(s);
        } catch (const MalformedLog&) {
            throw MalformedLog("line " + std::to_string(line) + ": bad number '" + s + "'");
        }
    }
    int integer() { return static_cast<int>(num()); }
    void done() const {
        if (next != tok.size())
            throw MalformedLog("line " + std::to_string(line) + ": trailing fields");
    }
};

void append_double(std::string& out, double v) {
    out += ' ';
    out += format_double(v);
}

} // namespace

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // collapse -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    const auto res = std::from_chars(begin, end, v);
    if (res.ec != std::errc{} || res.ptr != end) {
        // from_chars on libstdc++ handles inf/nan, but be explicit anyway
        if (s == "inf") return std::numeric_limits<double>::infinity();
        if (s == "-inf") return -std::numeric_limits<double>::infinity();
        throw MalformedLog("unparsable number '" + s + "'");
    }
    return v;
}

std::string serialize(const EventLog& log) {
    std::string out;
    out += "# " + log.header.version + "\n";
    out += "# rng " + log.header.rng + "\n";
    out += "# seed " + std::to_string(log.header.seed) + "\n";
    out += "# scenario " + log.header.scenario.dump() + "\n";

    for (const EventRecord& rec : log.records) {
        out += format_double(rec.t);
        std::visit(
            [&](const auto& p) {
                using T = std::decay_t<decltype(p)>;
                if constexpr (std::is_same_v<T, FramePayload>) {
                    out += " Frame " + std::to_string(p.keypoints.size());
                    for (const vsm::Keypoint& kp : p.keypoints) {
                        out += ' ' + std::to_string(kp.id);
                        append_double(out, kp.pos.x);
                        append_double(out, kp.pos.y);
                        append_double(out, kp.confidence);
                    }
                } else if constexpr (std::is_same_v<T, TorquePayload>) {
                    out += " Torque " + std::to_string(p.torques.size());
                    for (double tau : p.torques) append_double(out, tau);
                } else if constexpr (std::is_same_v<T, WrenchPayload>) {
                    out += " Wrench";
                    append_double(out, p.force.x);
                    append_double(out, p.force.y);
                } else if constexpr (std::is_same_v<T, VerdictPayload>) {
                    out += " Verdict " + p.monitor + ' ' + to_string(p.state) + ' ' +
                           to_string(p.cause);
                    append_double(out, p.since);
                    append_double(out, p.dwell_start);
                } else if constexpr (std::is_same_v<T, IntentPayload>) {
                    out += " Intent ";
                    out += to_string(p.mode);
                    out += ' ' + std::to_string(p.posterior.size());
                    for (double q : p.posterior) append_double(out, q);
                } else if constexpr (std::is_same_v<T, ModePayload>) {
                    out += " Mode ";
                    out += to_string(p.mode);
                } else if constexpr (std::is_same_v<T, DirectivePayload>) {
                    out += " Directive ";
                    out += to_string(p.action);
                    out += ' ';
                    out += to_string(p.cause);
                    out += ' ' + std::to_string(p.goal_id);
                } else if constexpr (std::is_same_v<T, CommandPayload>) {
                    out += " Command";
                    append_double(out, p.vel.x);
                    append_double(out, p.vel.y);
                    out += ' ';
                    out += to_string(p.source);
                    append_double(out, p.pos.x);
                    append_double(out, p.pos.y);
                } else if constexpr (std::is_same_v<T, ContactPayload>) {
                    out += " Contact ";
                    out += to_string(p.kind);
                    append_double(out, p.human_distance);
                    append_double(out, p.vision_age);
                    out += ' ' + p.against;
                } else if constexpr (std::is_same_v<T, MetricPayload>) {
                    out += " Metric " + p.name;
                    append_double(out, p.value);
                }
            },
            rec.payload);
        out += '\n';
    }
    return out;
}

EventLog parse(const std::string& text) {
    EventLog log;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    bool have_header = false;
    double prev_t = -std::numeric_limits<double>::infinity();

    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string key;
            hs >> key;
            if (key == "rng") {
                hs >> log.header.rng;
            } else if (key == "seed") {
                hs >> log.header.seed;
            } else if (key == "scenario") {
                std::string rest;
                std::getline(hs, rest);
                try {
                    log.header.scenario = nlohmann::json::parse(rest);
                } catch (const nlohmann::json::exception& e) {
                    throw MalformedLog("line " + std::to_string(lineno) +
                                       ": bad scenario json: " + e.what());
                }
            } else if (key == "safehri-log") {
                std::string ver;
                hs >> ver;
                log.header.version = "safehri-log " + ver;
                have_header = true;
            }
            continue;
        }

        Fields f;
        f.line = lineno;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) f.tok.push_back(tok);

        EventRecord rec;
        rec.t = f.num();
        if (rec.t < prev_t)
            throw MalformedLog("line " + std::to_string(lineno) + ": time runs backward");
        prev_t = rec.t;

        const std::string kind = f.str();
        if (kind == "Frame") {
            FramePayload p;
            const int n = f.integer();
            for (int i = 0; i < n; ++i) {
                vsm::Keypoint kp;
                kp.id = f.integer();
                kp.pos.x = f.num();
                kp.pos.y = f.num();
                kp.confidence = f.num();
                p.keypoints.push_back(kp);
            }
            rec.payload = std::move(p);
        } else if (kind == "Torque") {
            TorquePayload p;
            const int n = f.integer();
            for (int i = 0; i < n; ++i) p.torques.push_back(f.num());
            rec.payload = std::move(p);
        } else if (kind == "Wrench") {
            WrenchPayload p;
            p.force.x = f.num();
            p.force.y = f.num();
            rec.payload = p;
        } else if (kind == "Verdict") {
            VerdictPayload p;
            p.monitor = f.str();
            if (p.monitor != "vsm" && p.monitor != "csm")
                throw MalformedLog("line " + std::to_string(lineno) + ": bad monitor name");
            p.state = state_from(f.str(), lineno);
            p.cause = cause_from(f.str(), lineno);
            p.since = f.num();
            p.dwell_start = f.num();
            rec.payload = std::move(p);
        } else if (kind == "Intent") {
            IntentPayload p;
            p.mode = mode_from(f.str(), lineno);
            const int n = f.integer();
            for (int i = 0; i < n; ++i) p.posterior.push_back(f.num());
            rec.payload = std::move(p);
        } else if (kind == "Mode") {
            rec.payload = ModePayload{mode_from(f.str(), lineno)};
        } else if (kind == "Directive") {
            DirectivePayload p;
            p.action = action_from(f.str(), lineno);
            p.cause = cause_from(f.str(), lineno);
            p.goal_id = f.integer();
            rec.payload = p;
        } else if (kind == "Command") {
            CommandPayload p;
            p.vel.x = f.num();
            p.vel.y = f.num();
            p.source = source_from(f.str(), lineno);
            p.pos.x = f.num();
            p.pos.y = f.num();
            rec.payload = p;
        } else if (kind == "Contact") {
            ContactPayload p;
            p.kind = kind_from(f.str(), lineno);
            p.human_distance = f.num();
            p.vision_age = f.num();
            p.against = f.str();
            rec.payload = std::move(p);
        } else if (kind == "Metric") {
            MetricPayload p;
            p.name = f.str();
            p.value = f.num();
            rec.payload = std::move(p);
        } else {
            throw MalformedLog("line " + std::to_string(lineno) + ": unknown record kind '" +
                               kind + "'");
        }
        f.done();
        log.records.push_back(std::move(rec));
    }

    if (!have_header) throw MalformedLog("missing log header");
    return log;
}

void save_log(const EventLog& log, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write log file: " + path);
    out << serialize(log);
}

EventLog load_log(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MalformedLog("cannot open log file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

} // namespace safehri::sim
