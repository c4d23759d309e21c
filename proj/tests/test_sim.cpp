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
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "safehri/sim/harness.hpp"
#include "safehri/sim/metrics.hpp"
#include "safehri/sim/synth.hpp"
#include "scenarios.hpp"

using namespace safehri;
using namespace safehri::sim;

TEST_CASE("camera map and its inverse") {
    CameraMap identity{1.0, {0.0, 0.0}};
    CHECK(identity.project({0.5, 0.5}) == Vec2{0.5, 0.5});

    CameraMap cam; // 100 px/m, offset (320, 240)
    CHECK(cam.project({0.5, 0.5}) == Vec2{370.0, 290.0});

    uint64_t rng = 11;
    for (int i = 0; i < 200; ++i) {
        const Vec2 p{oracles::uniform(rng, -3, 3), oracles::uniform(rng, -3, 3)};
        const Vec2 back = cam.unproject(cam.project(p));
        CHECK(std::abs(back.x - p.x) < 1e-12);
        CHECK(std::abs(back.y - p.y) < 1e-12);
    }
}

TEST_CASE("human script sampling") {
    HumanScript script;
    script.waypoints = {{0.0, {0, 0}}, {2.0, {2, 0}}, {3.0, {2, 1}}};
    CHECK(sample_human(script, 2.0) == Vec2{2.0, 0.0});
    CHECK(sample_human(script, 1.0) == Vec2{1.0, 0.0});
    CHECK(sample_human(script, -1.0) == Vec2{0.0, 0.0}); // clamp before
    CHECK(sample_human(script, 9.0) == Vec2{2.0, 1.0});  // clamp after
}

TEST_CASE("torque synthesis: pulses add, zero noise is exact, seeds pin streams") {
    sim::Scenario s = test_scenarios::quiet();
    s.noise_sigma = 0.0;
    s.contacts = {{2.0, 0.5, {3.0, 3.0}, Against::Object}};
    // Validation is irrelevant here; synth_torque reads fields directly.
    GaussianRng rng(s.seed);
    CHECK(synth_torque(1.0, s, rng).torques == std::vector<double>{0.0, 0.0});
    CHECK(synth_torque(2.2, s, rng).torques == std::vector<double>{3.0, 3.0});
    CHECK(synth_torque(2.5, s, rng).torques == std::vector<double>{0.0, 0.0});

    s.noise_sigma = 0.05;
    GaussianRng a(99);
    GaussianRng b(99);
    for (int i = 0; i < 100; ++i) {
        const double t = i / 500.0;
        CHECK(synth_torque(t, s, a).torques == synth_torque(t, s, b).torques);
    }
}

TEST_CASE("runs are deterministic down to the byte") {
    const sim::Scenario s = test_scenarios::sweep(7);
    const std::string a = serialize(run_scenario(s));
    const std::string b = serialize(run_scenario(s));
    CHECK(a == b);
    CHECK(a.size() > 1000);
}

TEST_CASE("event logs round-trip through text exactly") {
    const EventLog log = run_scenario(test_scenarios::human_contact());
    const EventLog back = parse(serialize(log));
    CHECK(back == log);
    CHECK(serialize(back) == serialize(log));
}

TEST_CASE("rate fidelity: a 10 s default-rate run has exact tick counts") {
    const EventLog log = run_scenario(test_scenarios::sweep(3));
    int frames = 0, torques = 0, commands = 0;
    for (const EventRecord& rec : log.records) {
        frames += std::holds_alternative<FramePayload>(rec.payload) ? 1 : 0;
        torques += std::holds_alternative<TorquePayload>(rec.payload) ? 1 : 0;
        commands += std::holds_alternative<CommandPayload>(rec.payload) ? 1 : 0;
    }
    CHECK(frames == 300);
    CHECK(torques == 5000);
    CHECK(commands == 1000);
}

TEST_CASE("replay reproduces recorded verdicts") {
    const EventLog log = run_scenario(test_scenarios::human_contact());
    int verdicts = 0;
    for (const EventRecord& rec : log.records) {
        verdicts += std::holds_alternative<VerdictPayload>(rec.payload) ? 1 : 0;
    }
    REQUIRE(verdicts >= 2); // vsm pause + csm pause (+ csm resume)
    CHECK(replay_verify(log) == static_cast<size_t>(verdicts));

    // A tampered verdict must be caught.
    EventLog bad = log;
    for (EventRecord& rec : bad.records) {
        if (auto* vp = std::get_if<VerdictPayload>(&rec.payload)) {
            vp->since += 0.002;
            break;
        }
    }
    CHECK_THROWS_AS(replay_verify(bad), ReplayMismatch);
}

TEST_CASE("metrics from a stationary encounter") {
    // Robot parked on goal 1; hand parked 0.3/0.4 away -> distance 0.5.
    sim::Scenario s = test_scenarios::quiet();
    s.duration = 2.0;
    s.goals.goals[0].pos = s.robot_start;
    s.human.waypoints = {{0.0, {s.robot_start.x + 0.3, s.robot_start.y + 0.4}}};
    const Metrics m = compute_metrics(run_scenario(s));
    CHECK(m.min_separation == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(m.pause_count == 0);
    CHECK(m.resume_latencies.empty());
    CHECK(m.goal_reached); // it starts on the goal
    CHECK(m.time_in_co == 0.0);
}

TEST_CASE("metrics from a contact run") {
    const Metrics m = compute_metrics(run_scenario(test_scenarios::human_contact()));
    // vsm pause at t=0 plus the csm pause.
    CHECK(m.pause_count == 2);
    REQUIRE(m.resume_latencies.size() == 1);
    CHECK(m.resume_latencies[0] ==
          doctest::Approx(5.0).epsilon(0.01)); // csm dwell
}

TEST_CASE("metrics from a guidance run") {
    const Metrics m = compute_metrics(run_scenario(test_scenarios::guidance()));
    // CO from ~2.3 to ~4.5; each edge may land one control tick late.
    CHECK(std::abs(m.time_in_co - 2.2) <= 0.0201);
    CHECK(m.goal_reached);
}

TEST_CASE("scenario json round-trips and validates with field diagnostics") {
    const sim::Scenario s = test_scenarios::human_contact();
    const sim::Scenario back = sim::Scenario::from_json(s.to_json());
    CHECK(serialize(run_scenario(back)) == serialize(run_scenario(s)));

    nlohmann::json bad = s.to_json();
    bad["csm"]["theta_lo"] = 5.0;
    CHECK_THROWS_WITH_AS(static_cast<void>(sim::Scenario::from_json(bad)),
                         doctest::Contains("theta"), InvalidScenario);

    nlohmann::json unknown = s.to_json();
    unknown["typo_field"] = 1;
    CHECK_THROWS_WITH_AS(static_cast<void>(sim::Scenario::from_json(unknown)),
                         doctest::Contains("unknown field"), InvalidScenario);

    nlohmann::json far_contact = s.to_json();
    far_contact["human"]["waypoints"] = {{0.0, 5.0, 5.0}};
    CHECK_THROWS_WITH_AS(static_cast<void>(sim::Scenario::from_json(far_contact)),
                         doctest::Contains("against=Human"), InvalidScenario);

    nlohmann::json bad_rates = s.to_json();
    bad_rates["rates"]["vision"] = 0;
    CHECK_THROWS_AS(static_cast<void>(sim::Scenario::from_json(bad_rates)),
                    InvalidScenario);
}

TEST_CASE("malformed logs are rejected with line numbers") {
    const EventLog log = run_scenario(test_scenarios::guidance());
    std::string text = serialize(log);

    CHECK_THROWS_AS(parse(text + "1.0 Gibberish 3\n"), MalformedLog);
    CHECK_THROWS_AS(parse(text + "0.0 Mode CE\n"), MalformedLog); // time backward
    CHECK_THROWS_AS(parse("0.0 Mode CE\n"), MalformedLog);        // no header
    CHECK_THROWS_AS(parse(text + "999 Wrench 0.1\n"), MalformedLog); // truncated
}

TEST_CASE("zero-duration scenarios produce only metric records") {
    sim::Scenario s = test_scenarios::quiet();
    s.duration = 0.0;
    const EventLog log = run_scenario(s);
    CHECK_FALSE(log.records.empty());
    for (const EventRecord& rec : log.records) {
        CHECK(std::holds_alternative<MetricPayload>(rec.payload));
    }
    CHECK(serialize(parse(serialize(log))) == serialize(log));
}

TEST_CASE("parallel batch equals the serial reference") {
    std::vector<sim::Scenario> batch;
    for (uint64_t seed = 1; seed <= 6; ++seed) {
        sim::Scenario s = test_scenarios::sweep(seed);
        s.duration = 3.0;
        batch.push_back(s);
    }
    const auto par = run_batch(batch, true);
    const auto ser = run_batch_serial(batch);
    REQUIRE(par.size() == ser.size());
    for (size_t i = 0; i < par.size(); ++i) {
        CHECK(serialize(par[i]) == serialize(ser[i]));
    }
}
