#include <cmath>

#include "doctest.h"
#include "pctsim/agent.hpp"
#include "pctsim/errors.hpp"

using namespace pctsim;

TEST_CASE("coop level string and index forms") {
    CoopLevel c = CoopLevel::from_string("0110");
    CHECK_FALSE(c.roam);
    CHECK(c.arrived_stuck_backoff);
    CHECK(c.stuck_stuck_backoff);
    CHECK_FALSE(c.mutual_access_gate);
    CHECK(c.to_string() == "0110");
    CHECK(CoopLevel::from_index(c.index()) == c);

    for (int i = 0; i < 16; ++i) {
        CHECK(CoopLevel::from_index(i).index() == i);
        CHECK(CoopLevel::from_string(CoopLevel::from_index(i).to_string()) ==
              CoopLevel::from_index(i));
    }
    // Index order is 0000, 1000, 0100, 1100, 0010, ...
    CHECK(CoopLevel::from_index(0).to_string() == "0000");
    CHECK(CoopLevel::from_index(1).to_string() == "1000");
    CHECK(CoopLevel::from_index(2).to_string() == "0100");
    CHECK(CoopLevel::from_index(3).to_string() == "1100");
    CHECK(CoopLevel::from_index(4).to_string() == "0010");
    CHECK(CoopLevel::from_index(15).to_string() == "1111");

    CHECK_THROWS_AS(CoopLevel::from_string("012"), ConfigError);
    CHECK_THROWS_AS(CoopLevel::from_string("01102"), ConfigError);
    CHECK_THROWS_AS(CoopLevel::from_string("01a0"), ConfigError);
    CHECK_THROWS_AS(CoopLevel::from_index(16), ConfigError);
}

TEST_CASE("control_step clamps proportional error") {
    AgentParams p;  // gain 0.01, max_step 0.005
    CHECK(control_step(0.8, 0.3, p) == 0.005);    // 0.01*0.5 exactly at clamp
    CHECK(control_step(0.9, 0.1, p) == 0.005);    // clamped
    CHECK(control_step(0.1, 0.9, p) == -0.005);   // clamped, negative
    CHECK(control_step(0.5, 0.4, p) == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(control_step(0.5, 0.5, p) == 0.0);
}

TEST_CASE("validate_params") {
    AgentParams p;
    CHECK_NOTHROW(validate_params(p));
    p.gain = 0.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p.gain = 1.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = AgentParams{};
    p.backoff_ms = 0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
    p = AgentParams{};
    p.max_step = 0.0;
    CHECK_THROWS_AS(validate_params(p), ConfigError);
}

namespace {

StatusFlags flags(bool stuck, bool access, bool arrived, bool target_known,
                  bool edge = false) {
    StatusFlags f;
    f.stuck = stuck;
    f.access = access;
    f.arrived = arrived;
    f.target_known = target_known;
    f.collided_edge = edge;
    return f;
}

}  // namespace

TEST_CASE("arbitrate: active modes run to completion") {
    AgentState st;
    st.mode = AgentMode::BackOff;
    st.temp_reference = 0.3;
    st.mode_remaining_ms = 500;
    // Even a both-stuck condition cannot preempt the running mode.
    CHECK(arbitrate(flags(true, true, false, true), flags(true, true, false, true),
                    CoopLevel::from_string("1111"), st) == Directive::BackOff);
    st.mode = AgentMode::Roam;
    CHECK(arbitrate(flags(true, true, false, true), flags(true, true, false, true),
                    CoopLevel::from_string("1111"), st) == Directive::RandomMove);
}

TEST_CASE("arbitrate: rule-by-rule directive table") {
    AgentState idle;  // Normal mode

    // a: target known => approach, else stop.
    CHECK(arbitrate(flags(false, true, false, true), {}, CoopLevel::from_string("0000"), idle) ==
          Directive::ApproachTarget);
    CHECK(arbitrate(flags(false, true, false, false), {}, CoopLevel::from_string("0000"), idle) ==
          Directive::Stop);
    // Being stuck without any enabled rule changes nothing.
    CHECK(arbitrate(flags(true, true, false, true), flags(false, true, false, true),
                    CoopLevel::from_string("0000"), idle) == Directive::ApproachTarget);

    // b: move randomly instead of stopping. A stuck agent that knows the
    // target still approaches; roaming replaces Stop, not ApproachTarget.
    CHECK(arbitrate(flags(false, true, false, false), {}, CoopLevel::from_string("1000"), idle) ==
          Directive::RandomMove);
    CHECK(arbitrate(flags(true, true, false, true), flags(false, true, false, true),
                    CoopLevel::from_string("1000"), idle) == Directive::ApproachTarget);

    // c: self arrived + other stuck => back off.
    CHECK(arbitrate(flags(false, true, true, true), flags(true, true, false, true),
                    CoopLevel::from_string("0100"), idle) == Directive::BackOff);
    CHECK(arbitrate(flags(false, true, true, true), flags(false, true, false, true),
                    CoopLevel::from_string("0100"), idle) == Directive::ApproachTarget);

    // d: both stuck => back off, and it outranks c.
    CHECK(arbitrate(flags(true, true, false, true), flags(true, true, false, true),
                    CoopLevel::from_string("0010"), idle) == Directive::BackOff);
    CHECK(arbitrate(flags(true, true, true, true), flags(true, true, false, true),
                    CoopLevel::from_string("0110"), idle) == Directive::BackOff);

    // e: approach only while both report access; otherwise fall through.
    CHECK(arbitrate(flags(false, true, false, true), flags(false, false, false, true),
                    CoopLevel::from_string("0001"), idle) == Directive::Stop);
    CHECK(arbitrate(flags(false, false, false, true), flags(false, true, false, true),
                    CoopLevel::from_string("0001"), idle) == Directive::Stop);
    CHECK(arbitrate(flags(false, true, false, true), flags(false, true, false, true),
                    CoopLevel::from_string("0001"), idle) == Directive::ApproachTarget);
    // Gate failure with roaming enabled degrades to a random move.
    CHECK(arbitrate(flags(false, true, false, true), flags(false, false, false, true),
                    CoopLevel::from_string("1001"), idle) == Directive::RandomMove);
}

TEST_CASE("arbitrate is total over every flag pair, level and mode") {
    AgentState modes[3];
    modes[1].mode = AgentMode::BackOff;
    modes[1].temp_reference = 0.5;
    modes[1].mode_remaining_ms = 100;
    modes[2].mode = AgentMode::Roam;
    modes[2].temp_reference = 0.5;
    modes[2].mode_remaining_ms = 100;

    auto unpack = [](int bits) {
        StatusFlags f;
        f.stuck = bits & 1;
        f.collided_edge = bits & 2;
        f.access = bits & 4;
        f.arrived = bits & 8;
        f.target_known = bits & 16;
        return f;
    };

    long count = 0;
    for (int self = 0; self < 32; ++self) {
        for (int other = 0; other < 32; ++other) {
            for (int level = 0; level < 16; ++level) {
                for (const AgentState& st : modes) {
                    Directive d = arbitrate(unpack(self), unpack(other),
                                            CoopLevel::from_index(level), st);
                    bool valid = d == Directive::Stop || d == Directive::ApproachTarget ||
                                 d == Directive::BackOff || d == Directive::RandomMove;
                    if (!valid) CHECK(valid);
                    // Active modes always continue.
                    if (st.mode == AgentMode::BackOff && d != Directive::BackOff) CHECK(false);
                    if (st.mode == AgentMode::Roam && d != Directive::RandomMove) CHECK(false);
                    count += 1;
                }
            }
        }
    }
    CHECK(count == 32 * 32 * 16 * 3);
}

TEST_CASE("agent_command manages modes and references") {
    AgentParams p;
    Rng rng(99);
    double tol = 0.02;

    SUBCASE("stop yields zero") {
        AgentState st;
        CHECK(agent_command(st, Directive::Stop, 0.4, 0.8, tol, p, rng) == 0.0);
        CHECK(st.mode == AgentMode::Normal);
    }
    SUBCASE("approach moves toward target, zero once within tolerance") {
        AgentState st;
        CHECK(agent_command(st, Directive::ApproachTarget, 0.1, 0.9, tol, p, rng) == 0.005);
        CHECK(agent_command(st, Directive::ApproachTarget, 0.89, 0.9, tol, p, rng) == 0.0);
        CHECK(st.mode == AgentMode::Normal);
    }
    SUBCASE("back-off draws a reference and controls toward it") {
        AgentState st;
        double cmd = agent_command(st, Directive::BackOff, 0.4, 0.8, tol, p, rng);
        CHECK(st.mode == AgentMode::BackOff);
        REQUIRE(st.temp_reference.has_value());
        CHECK(st.mode_remaining_ms == p.backoff_ms);
        CHECK(cmd == control_step(*st.temp_reference, 0.4, p));
        // Re-issuing BackOff keeps the same reference.
        double ref = *st.temp_reference;
        agent_command(st, Directive::BackOff, 0.4, 0.8, tol, p, rng);
        CHECK(*st.temp_reference == ref);
    }
    SUBCASE("roam re-rolls when the reference is reached") {
        AgentState st;
        agent_command(st, Directive::RandomMove, 0.4, 0.8, tol, p, rng);
        CHECK(st.mode == AgentMode::Roam);
        double ref = *st.temp_reference;
        // Standing exactly on the reference forces a re-roll.
        agent_command(st, Directive::RandomMove, ref, 0.8, tol, p, rng);
        CHECK(*st.temp_reference != ref);
    }
    SUBCASE("timer expiry returns to normal") {
        AgentState st;
        agent_command(st, Directive::BackOff, 0.4, 0.8, tol, p, rng);
        for (int i = 0; i < 100; ++i) agent_tick_timer(st, 10);
        CHECK(st.mode == AgentMode::Normal);
        CHECK_FALSE(st.temp_reference.has_value());
        CHECK(st.mode_remaining_ms == 0);
    }
    SUBCASE("hold time spans exactly backoff_ms of ticks") {
        AgentState st;
        agent_command(st, Directive::BackOff, 0.4, 0.8, tol, p, rng);
        for (int i = 0; i < 99; ++i) agent_tick_timer(st, 10);
        CHECK(st.mode == AgentMode::BackOff);
        agent_tick_timer(st, 10);
        CHECK(st.mode == AgentMode::Normal);
    }
}

TEST_CASE("backoff references are uniform draws from the agent stream") {
    AgentParams p;
    Rng rng(5);
    Rng twin(5);
    AgentState st;
    begin_backoff(st, p, rng);
    CHECK(*st.temp_reference == twin.uniform());
    AgentState st2;
    roam_reference(st2, p, rng);
    CHECK(*st2.temp_reference == twin.uniform());
    CHECK(st2.mode == AgentMode::Roam);
}
