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

#include "safehri/supervisor.hpp"

using namespace safehri;

namespace {

constexpr double kNow = 1.0;

SupervisorInputs inputs(MonitorState vsm, MonitorState csm,
                        intent::InteractionMode mode,
                        std::vector<double> posterior = {0.25, 0.25, 0.25, 0.25}) {
    SupervisorInputs in;
    in.vsm = vsm == MonitorState::Paused
                 ? MonitorVerdict{MonitorState::Paused, PauseCause::HumanInRange, 0.5}
                 : MonitorVerdict{};
    in.csm = csm == MonitorState::Paused
                 ? MonitorVerdict{MonitorState::Paused, PauseCause::UnexpectedContact, 0.5}
                 : MonitorVerdict{};
    in.vsm_asof = kNow;
    in.csm_asof = kNow;
    in.est = {std::move(posterior), mode, kNow};
    in.now = kNow;
    in.control_period = 0.01;
    return in;
}

} // namespace

TEST_CASE("priority: contact beats zone beats mode") {
    const Directive d = arbitrate(
        inputs(MonitorState::Running, MonitorState::Paused, intent::InteractionMode::CO));
    CHECK(d.action == Action::HaltAll);
    CHECK(d.cause == PauseCause::UnexpectedContact);

    const Directive both = arbitrate(
        inputs(MonitorState::Paused, MonitorState::Paused, intent::InteractionMode::CE));
    CHECK(both.cause == PauseCause::UnexpectedContact);

    const Directive zone = arbitrate(
        inputs(MonitorState::Paused, MonitorState::Running, intent::InteractionMode::CE));
    CHECK(zone.action == Action::HaltAll);
    CHECK(zone.cause == PauseCause::HumanInRange);
}

TEST_CASE("argmax goal selection with lowest-id tie break") {
    const Directive d =
        arbitrate(inputs(MonitorState::Running, MonitorState::Running,
                         intent::InteractionMode::CE, {0.1, 0.6, 0.2, 0.1}));
    CHECK(d.action == Action::ApfTrack);
    CHECK(d.goal_id == 2);

    const Directive tie = arbitrate(inputs(MonitorState::Running, MonitorState::Running,
                                           intent::InteractionMode::CE, {0.5, 0.5}));
    CHECK(tie.goal_id == 1);

    // Scaling the posterior must not move the argmax.
    const Directive scaled =
        arbitrate(inputs(MonitorState::Running, MonitorState::Running,
                         intent::InteractionMode::CE, {1e-7, 6e-7, 2e-7, 1e-7}));
    CHECK(scaled.goal_id == 2);
}

TEST_CASE("stale snapshots are a scheduling bug") {
    SupervisorInputs in =
        inputs(MonitorState::Running, MonitorState::Running, intent::InteractionMode::CE);
    in.vsm_asof = kNow - 0.05; // five control periods old
    CHECK_THROWS_AS(arbitrate(in), StaleInput);
}

TEST_CASE("gate passes commands through except under HaltAll") {
    const motion::VelocityCommand cmd{kNow, {0.2, 0.0}, motion::CommandSource::Apf};
    const Directive halt{kNow, Action::HaltAll, 0, PauseCause::UnexpectedContact};
    const Directive track{kNow, Action::ApfTrack, 1, PauseCause::None};
    CHECK(gate_command(halt, cmd).vel == Vec2{0.0, 0.0});
    CHECK(gate_command(halt, cmd).source == motion::CommandSource::Halt);
    CHECK(gate_command(track, cmd).vel == cmd.vel);
    CHECK(gate_command(track, cmd).source == motion::CommandSource::Apf);
}

TEST_CASE("fail-closed over the whole verdict/mode product") {
    for (MonitorState vsm : {MonitorState::Running, MonitorState::Paused}) {
        for (MonitorState csm : {MonitorState::Running, MonitorState::Paused}) {
            for (intent::InteractionMode mode :
                 {intent::InteractionMode::CE, intent::InteractionMode::CO}) {
                const Directive d = arbitrate(inputs(vsm, csm, mode));
                const motion::VelocityCommand gated = gate_command(
                    d, {kNow, {0.25, 0.1}, motion::CommandSource::Admittance});
                const bool any_paused =
                    vsm == MonitorState::Paused || csm == MonitorState::Paused;
                if (any_paused) {
                    CHECK(d.action == Action::HaltAll);
                    CHECK(gated.vel == Vec2{0.0, 0.0});
                }
                CHECK((d.action == Action::AdmittanceFollow) ==
                      (!any_paused && mode == intent::InteractionMode::CO));
            }
        }
    }
}

TEST_CASE("contact fusion classifies by vision proximity and freshness") {
    const FusionConfig cfg;
    WorkspaceFrame fresh{0.95, {{0.5, 0.5}}};

    const ContactClass near_human = fuse_contact(1.0, fresh, {0.55, 0.58}, cfg);
    CHECK(near_human.kind == ContactKind::Emergent);
    CHECK(near_human.human_distance < cfg.r_h);

    const ContactClass far_human = fuse_contact(1.0, fresh, {1.4, 0.8}, cfg);
    CHECK(far_human.kind == ContactKind::NonCritical);
    CHECK(far_human.vision_age == doctest::Approx(0.05));

    const WorkspaceFrame stale{0.5, {{5.0, 5.0}}};
    const ContactClass blind = fuse_contact(1.0, stale, {0.5, 0.5}, cfg);
    CHECK(blind.kind == ContactKind::Emergent);
    CHECK(blind.vision_age == doctest::Approx(0.5));

    const ContactClass never_seen = fuse_contact(1.0, WorkspaceFrame{}, {0, 0}, cfg);
    CHECK(never_seen.kind == ContactKind::Emergent);
}

TEST_CASE("supervisor ignores guidance-consistent object contacts during CO only") {
    const FusionConfig fusion;
    const intent::Wrench guidance{kNow, {6.0, 0.0}};
    // Fresh relative to the contact time (0.5), human far away.
    const WorkspaceFrame vision{0.45, {{2.0, 2.0}}};

    // CO + NonCritical + guidance-consistent force: keep following.
    Supervisor sup(fusion, 5.0);
    auto dec = sup.decide(
        inputs(MonitorState::Running, MonitorState::Paused, intent::InteractionMode::CO),
        vision, {0.1, 0.1}, guidance);
    REQUIRE(dec.new_contact.has_value());
    CHECK(dec.new_contact->kind == ContactKind::NonCritical);
    CHECK(dec.directive.action == Action::AdmittanceFollow);

    // Same contact in CE halts.
    Supervisor sup_ce(fusion, 5.0);
    auto dec_ce = sup_ce.decide(
        inputs(MonitorState::Running, MonitorState::Paused, intent::InteractionMode::CE),
        vision, {0.1, 0.1}, guidance);
    CHECK(dec_ce.directive.action == Action::HaltAll);

    // Emergent contact halts even during CO.
    const WorkspaceFrame human_close{0.45, {{0.15, 0.1}}};
    Supervisor sup_em(fusion, 5.0);
    auto dec_em = sup_em.decide(
        inputs(MonitorState::Running, MonitorState::Paused, intent::InteractionMode::CO),
        human_close, {0.1, 0.1}, guidance);
    REQUIRE(dec_em.new_contact.has_value());
    CHECK(dec_em.new_contact->kind == ContactKind::Emergent);
    CHECK(dec_em.directive.action == Action::HaltAll);

    // Excessive force is not guidance: halt even if NonCritical.
    Supervisor sup_force(fusion, 5.0);
    auto dec_force = sup_force.decide(
        inputs(MonitorState::Running, MonitorState::Paused, intent::InteractionMode::CO),
        vision, {0.1, 0.1}, {kNow, {20.0, 0.0}});
    CHECK(dec_force.directive.action == Action::HaltAll);

    // Classification happens once per episode.
    auto dec2 = sup.decide(
        inputs(MonitorState::Running, MonitorState::Paused, intent::InteractionMode::CO),
        vision, {0.1, 0.1}, guidance);
    CHECK_FALSE(dec2.new_contact.has_value());
    CHECK(dec2.directive.action == Action::AdmittanceFollow);
}
