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
#include "safehri/sim/scenario.hpp"

#include <fstream>
#include <numeric>
#include <set>

#include "safehri/sim/synth.hpp"

namespace safehri::sim {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& field, const std::string& what) {
    throw InvalidScenario(field + ": " + what);
}

double num(const json& j, const std::string& field) {
    if (!j.is_number()) bad(field, "expected a number");
    return j.get<double>();
}

Vec2 vec2(const json& j, const std::string& field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad(field, "expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(Vec2 v) { return json::array({v.x, v.y}); }

void check_keys(const json& j, const std::string& field,
                const std::set<std::string>& allowed) {
    if (!j.is_object()) bad(field, "expected an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!allowed.count(it.key())) bad(field + "." + it.key(), "unknown field");
    }
}

} // namespace

int Scenario::base_rate() const {
    return std::lcm(std::lcm(rates.vision, rates.torque), rates.control);
}

void Scenario::validate() const {
    if (!(duration >= 0.0) || !std::isfinite(duration))
        bad("duration", "must be a finite value >= 0");
    if (rates.vision <= 0 || rates.torque <= 0 || rates.control <= 0)
        bad("rates", "all rates must be positive integers");
    if (base_rate() > 1000000)
        bad("rates", "LCM base rate exceeds 1 MHz; pick commensurate rates");
    if (!(camera.scale > 0.0)) bad("camera.scale", "must be > 0");
    if (!camera.offset.finite()) bad("camera.offset", "must be finite");

    if (!vsm_cfg.range.valid()) bad("range", "requires x_min < x_max and y_min < y_max");
    if (!(vsm_cfg.min_confidence >= 0.0 && vsm_cfg.min_confidence <= 1.0))
        bad("vsm.min_confidence", "must be in [0,1]");
    if (!(vsm_cfg.resume_dwell >= 0.0)) bad("vsm.resume_dwell", "must be >= 0");

    try {
        csm_cfg.validate();
        goals.validate();
        tracker.validate();
        apf.validate();
        admittance.validate();
    } catch (const std::invalid_argument& e) {
        throw InvalidScenario(e.what());
    }
    if (csm_cfg.sample_rate != static_cast<double>(rates.torque))
        bad("csm.sample_rate", "must equal rates.torque");

    if (!robot_start.finite()) bad("robot_start", "must be finite");

    for (size_t i = 0; i < human.waypoints.size(); ++i) {
        const Waypoint& w = human.waypoints[i];
        if (!w.pos.finite()) bad("human.waypoints", "non-finite position");
        if (i > 0 && w.t <= human.waypoints[i - 1].t)
            bad("human.waypoints", "times must strictly increase");
    }
    for (const Interval& d : dropouts) {
        if (d.t0 < 0.0 || !(d.duration > 0.0))
            bad("dropouts", "need t0 >= 0 and duration > 0");
    }
    for (size_t i = 0; i < contacts.size(); ++i) {
        const ContactEvent& c = contacts[i];
        const std::string field = "contacts[" + std::to_string(i) + "]";
        if (c.t0 < 0.0) bad(field, "t0 must be >= 0");
        if (!(c.duration > 0.0)) bad(field, "duration must be > 0");
        if (c.amplitude.size() != csm_cfg.monitored_joints.size())
            bad(field, "amplitude must list one value per monitored joint");
        // Human contacts must be physically anchored so the fusion
        // ground truth is well-posed: the hand has to be near the
        // robot's home position when the pulse starts.
        if (c.against == Against::Human) {
            if (human.waypoints.empty())
                bad(field, "against=Human requires a scripted human");
            const double d = distance(sample_human(human, c.t0), robot_start);
            if (d > fusion.r_h)
                bad(field, "against=Human but the hand is " + std::to_string(d) +
                               " m from the robot start at t0");
        }
    }
    for (const GuidanceEvent& g : guidance) {
        if (g.t0 < 0.0 || !(g.duration > 0.0) || !g.force.finite())
            bad("guidance", "need t0 >= 0, duration > 0, finite force");
    }
    if (!(noise_sigma >= 0.0)) bad("noise_sigma", "must be >= 0");
    if (hand_keypoint < 0) bad("hand_keypoint", "must be >= 0");
    if (!(fusion.r_h > 0.0)) bad("fusion.r_h", "must be > 0");
    if (!(fusion.max_vision_age > 0.0)) bad("fusion.max_vision_age", "must be > 0");
}

Scenario Scenario::from_json(const json& j) {
    check_keys(j, "scenario",
               {"name", "duration", "seed", "rates", "camera", "range", "goals",
                "robot_start", "human", "dropouts", "contacts", "guidance",
                "noise_sigma", "hand_keypoint", "vsm", "csm", "tracker", "apf",
                "admittance", "fusion"});
    Scenario s;
    if (j.contains("name")) s.name = j.at("name").get<std::string>();
    if (j.contains("duration")) s.duration = num(j.at("duration"), "duration");
    if (j.contains("seed")) s.seed = j.at("seed").get<uint64_t>();

    if (j.contains("rates")) {
        const json& r = j.at("rates");
        check_keys(r, "rates", {"vision", "torque", "control"});
        if (r.contains("vision")) s.rates.vision = r.at("vision").get<int>();
        if (r.contains("torque")) s.rates.torque = r.at("torque").get<int>();
        if (r.contains("control")) s.rates.control = r.at("control").get<int>();
    }
    if (j.contains("camera")) {
        const json& c = j.at("camera");
        check_keys(c, "camera", {"scale", "offset"});
        if (c.contains("scale")) s.camera.scale = num(c.at("scale"), "camera.scale");
        if (c.contains("offset")) s.camera.offset = vec2(c.at("offset"), "camera.offset");
    }
    if (j.contains("range")) {
        const json& r = j.at("range");
        check_keys(r, "range", {"x_min", "y_min", "x_max", "y_max"});
        s.vsm_cfg.range.x_min = num(r.at("x_min"), "range.x_min");
        s.vsm_cfg.range.y_min = num(r.at("y_min"), "range.y_min");
        s.vsm_cfg.range.x_max = num(r.at("x_max"), "range.x_max");
        s.vsm_cfg.range.y_max = num(r.at("y_max"), "range.y_max");
    }
    if (j.contains("goals")) {
        const json& g = j.at("goals");
        check_keys(g, "goals", {"prep_area", "positions"});
        if (g.contains("prep_area"))
            s.goals.prep_area = vec2(g.at("prep_area"), "goals.prep_area");
        if (g.contains("positions")) {
            int id = 1;
            for (const json& p : g.at("positions")) {
                s.goals.goals.push_back({id++, vec2(p, "goals.positions")});
            }
        }
    }
    if (j.contains("robot_start")) s.robot_start = vec2(j.at("robot_start"), "robot_start");
    if (j.contains("human")) {
        const json& h = j.at("human");
        check_keys(h, "human", {"waypoints", "extra_keypoints"});
        if (h.contains("waypoints")) {
            for (const json& w : h.at("waypoints")) {
                if (!w.is_array() || w.size() != 3)
                    bad("human.waypoints", "expected [t, x, y] triplets");
                s.human.waypoints.push_back(
                    {num(w[0], "human.waypoints.t"), {num(w[1], "x"), num(w[2], "y")}});
            }
        }
        if (h.contains("extra_keypoints")) {
            for (const json& e : h.at("extra_keypoints"))
                s.human.extra_keypoints.push_back(vec2(e, "human.extra_keypoints"));
        }
    }
    if (j.contains("dropouts")) {
        for (const json& d : j.at("dropouts")) {
            if (!d.is_array() || d.size() != 2) bad("dropouts", "expected [t0, duration]");
            s.dropouts.push_back({num(d[0], "dropouts.t0"), num(d[1], "dropouts.duration")});
        }
    }
    if (j.contains("csm")) {
        const json& c = j.at("csm");
        check_keys(c, "csm",
                   {"monitored_joints", "window", "theta_hi", "theta_lo", "resume_dwell"});
        if (c.contains("monitored_joints"))
            s.csm_cfg.monitored_joints = c.at("monitored_joints").get<std::vector<int>>();
        if (c.contains("window")) s.csm_cfg.window = num(c.at("window"), "csm.window");
        if (c.contains("theta_hi")) s.csm_cfg.theta_hi = num(c.at("theta_hi"), "csm.theta_hi");
        if (c.contains("theta_lo")) s.csm_cfg.theta_lo = num(c.at("theta_lo"), "csm.theta_lo");
        if (c.contains("resume_dwell"))
            s.csm_cfg.resume_dwell = num(c.at("resume_dwell"), "csm.resume_dwell");
    }
    s.csm_cfg.sample_rate = static_cast<double>(s.rates.torque);
    if (j.contains("contacts")) {
        for (const json& c : j.at("contacts")) {
            check_keys(c, "contacts", {"t0", "duration", "amplitude", "against"});
            ContactEvent ev;
            ev.t0 = num(c.at("t0"), "contacts.t0");
            ev.duration = num(c.at("duration"), "contacts.duration");
            const json& amp = c.at("amplitude");
            if (amp.is_number()) {
                ev.amplitude.assign(s.csm_cfg.monitored_joints.size(), amp.get<double>());
            } else {
                ev.amplitude = amp.get<std::vector<double>>();
            }
            const std::string against = c.value("against", "Object");
            if (against == "Human") ev.against = Against::Human;
            else if (against == "Object") ev.against = Against::Object;
            else bad("contacts.against", "expected Human or Object");
            s.contacts.push_back(std::move(ev));
        }
    }
    if (j.contains("guidance")) {
        for (const json& g : j.at("guidance")) {
            check_keys(g, "guidance", {"t0", "duration", "force"});
            s.guidance.push_back({num(g.at("t0"), "guidance.t0"),
                                  num(g.at("duration"), "guidance.duration"),
                                  vec2(g.at("force"), "guidance.force")});
        }
    }
    if (j.contains("noise_sigma")) s.noise_sigma = num(j.at("noise_sigma"), "noise_sigma");
    if (j.contains("hand_keypoint")) s.hand_keypoint = j.at("hand_keypoint").get<int>();
    if (j.contains("vsm")) {
        const json& v = j.at("vsm");
        check_keys(v, "vsm", {"min_confidence", "resume_dwell"});
        if (v.contains("min_confidence"))
            s.vsm_cfg.min_confidence = num(v.at("min_confidence"), "vsm.min_confidence");
        if (v.contains("resume_dwell"))
            s.vsm_cfg.resume_dwell = num(v.at("resume_dwell"), "vsm.resume_dwell");
    }
    if (j.contains("tracker")) {
        const json& t = j.at("tracker");
        check_keys(t, "tracker",
                   {"beta", "gamma", "lambda", "eps_speed", "f_co", "f_ce", "t_co", "t_ce"});
        if (t.contains("beta")) s.tracker.beta = num(t.at("beta"), "tracker.beta");
        if (t.contains("gamma")) s.tracker.gamma = num(t.at("gamma"), "tracker.gamma");
        if (t.contains("lambda")) s.tracker.lambda = num(t.at("lambda"), "tracker.lambda");
        if (t.contains("eps_speed"))
            s.tracker.eps_speed = num(t.at("eps_speed"), "tracker.eps_speed");
        if (t.contains("f_co")) s.tracker.f_co = num(t.at("f_co"), "tracker.f_co");
        if (t.contains("f_ce")) s.tracker.f_ce = num(t.at("f_ce"), "tracker.f_ce");
        if (t.contains("t_co")) s.tracker.t_co = num(t.at("t_co"), "tracker.t_co");
        if (t.contains("t_ce")) s.tracker.t_ce = num(t.at("t_ce"), "tracker.t_ce");
    }
    if (j.contains("apf")) {
        const json& a = j.at("apf");
        check_keys(a, "apf", {"zeta", "d_cap", "eta", "rho0", "v_max", "stall_speed"});
        if (a.contains("zeta")) s.apf.zeta = num(a.at("zeta"), "apf.zeta");
        if (a.contains("d_cap")) s.apf.d_cap = num(a.at("d_cap"), "apf.d_cap");
        if (a.contains("eta")) s.apf.eta = num(a.at("eta"), "apf.eta");
        if (a.contains("rho0")) s.apf.rho0 = num(a.at("rho0"), "apf.rho0");
        if (a.contains("v_max")) s.apf.v_max = num(a.at("v_max"), "apf.v_max");
        if (a.contains("stall_speed"))
            s.apf.stall_speed = num(a.at("stall_speed"), "apf.stall_speed");
    }
    if (j.contains("admittance")) {
        const json& a = j.at("admittance");
        check_keys(a, "admittance", {"mass", "damping", "v_max"});
        if (a.contains("mass")) s.admittance.mass = num(a.at("mass"), "admittance.mass");
        if (a.contains("damping"))
            s.admittance.damping = num(a.at("damping"), "admittance.damping");
        if (a.contains("v_max")) s.admittance.v_max = num(a.at("v_max"), "admittance.v_max");
    }
    if (j.contains("fusion")) {
        const json& f = j.at("fusion");
        check_keys(f, "fusion", {"r_h", "max_vision_age"});
        if (f.contains("r_h")) s.fusion.r_h = num(f.at("r_h"), "fusion.r_h");
        if (f.contains("max_vision_age"))
            s.fusion.max_vision_age = num(f.at("max_vision_age"), "fusion.max_vision_age");
    }

    s.validate();
    return s;
}

json Scenario::to_json() const {
    json j;
    j["name"] = name;
    j["duration"] = duration;
    j["seed"] = seed;
    j["rates"] = {{"vision", rates.vision}, {"torque", rates.torque}, {"control", rates.control}};
    j["camera"] = {{"scale", camera.scale}, {"offset", sim::to_json(camera.offset)}};
    j["range"] = {{"x_min", vsm_cfg.range.x_min},
                  {"y_min", vsm_cfg.range.y_min},
                  {"x_max", vsm_cfg.range.x_max},
                  {"y_max", vsm_cfg.range.y_max}};
    json positions = json::array();
    for (const intent::Goal& g : goals.goals) positions.push_back(sim::to_json(g.pos));
    j["goals"] = {{"prep_area", sim::to_json(goals.prep_area)}, {"positions", positions}};
    j["robot_start"] = sim::to_json(robot_start);
    json waypoints = json::array();
    for (const Waypoint& w : human.waypoints)
        waypoints.push_back(json::array({w.t, w.pos.x, w.pos.y}));
    json extras = json::array();
    for (Vec2 e : human.extra_keypoints) extras.push_back(sim::to_json(e));
    j["human"] = {{"waypoints", waypoints}, {"extra_keypoints", extras}};
    json drops = json::array();
    for (const Interval& d : dropouts) drops.push_back(json::array({d.t0, d.duration}));
    j["dropouts"] = drops;
    json cts = json::array();
    for (const ContactEvent& c : contacts) {
        cts.push_back({{"t0", c.t0},
                       {"duration", c.duration},
                       {"amplitude", c.amplitude},
                       {"against", to_string(c.against)}});
    }
    j["contacts"] = cts;
    json gds = json::array();
    for (const GuidanceEvent& g : guidance) {
        gds.push_back({{"t0", g.t0}, {"duration", g.duration}, {"force", sim::to_json(g.force)}});
    }
    j["guidance"] = gds;
    j["noise_sigma"] = noise_sigma;
    j["hand_keypoint"] = hand_keypoint;
    j["vsm"] = {{"min_confidence", vsm_cfg.min_confidence},
                {"resume_dwell", vsm_cfg.resume_dwell}};
    j["csm"] = {{"monitored_joints", csm_cfg.monitored_joints},
                {"window", csm_cfg.window},
                {"theta_hi", csm_cfg.theta_hi},
                {"theta_lo", csm_cfg.theta_lo},
                {"resume_dwell", csm_cfg.resume_dwell}};
    j["tracker"] = {{"beta", tracker.beta},   {"gamma", tracker.gamma},
                    {"lambda", tracker.lambda}, {"eps_speed", tracker.eps_speed},
                    {"f_co", tracker.f_co},   {"f_ce", tracker.f_ce},
                    {"t_co", tracker.t_co},   {"t_ce", tracker.t_ce}};
    j["apf"] = {{"zeta", apf.zeta}, {"d_cap", apf.d_cap},
                {"eta", apf.eta},   {"rho0", apf.rho0},
                {"v_max", apf.v_max}, {"stall_speed", apf.stall_speed}};
    j["admittance"] = {{"mass", admittance.mass},
                       {"damping", admittance.damping},
                       {"v_max", admittance.v_max}};
    j["fusion"] = {{"r_h", fusion.r_h}, {"max_vision_age", fusion.max_vision_age}};
    return j;
}

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidScenario("cannot open scenario file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InvalidScenario(path + ": " + e.what());
    }
    try {
        return from_json(j);
    } catch (const json::exception& e) {
        throw InvalidScenario(path + ": " + e.what());
    }
}

} // namespace safehri::sim
