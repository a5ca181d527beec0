#include <numbers>
#include <string>

#include "doctest.h"
#include "pctsim/config_file.hpp"
#include "pctsim/errors.hpp"
#include "pctsim/rng.hpp"

using namespace pctsim;

namespace {

bool has_issue_at(const ConfigParse& p, int line) {
    for (const ParseIssue& i : p.issues)
        if (i.line == line) return true;
    return false;
}

FileConfig random_file_config(Rng& rng) {
    FileConfig c;
    auto coin = [&] { return rng.uniform() < 0.5; };
    if (coin()) c.target = Vec2{rng.uniform(), rng.uniform()};
    if (coin()) c.vehicle_start = Vec2{rng.uniform(), rng.uniform()};
    int nb = static_cast<int>(rng.uniform_index(4));
    for (int i = 0; i < nb; ++i) {
        c.barriers.push_back({{rng.uniform(), rng.uniform()},
                              rng.uniform(0.0, std::numbers::pi),
                              rng.uniform(0.05, 1.0)});
    }
    c.target_tolerance = rng.uniform(0.001, 0.49);
    c.vehicle_radius = rng.uniform(0.001, 0.49);
    c.coop_x = CoopLevel::from_index(static_cast<int>(rng.uniform_index(16)));
    c.coop_y = CoopLevel::from_index(static_cast<int>(rng.uniform_index(16)));
    c.params_x.gain = rng.uniform(0.0001, 0.999);
    c.params_y.gain = rng.uniform(0.0001, 0.999);
    c.params_x.max_step = rng.uniform(0.0001, 0.5);
    c.params_y.max_step = rng.uniform(0.0001, 0.5);
    c.params_x.backoff_ms = 1 + static_cast<int>(rng.uniform_index(5000));
    c.params_y.backoff_ms = 1 + static_cast<int>(rng.uniform_index(5000));
    c.params_x.target_view = coin();
    c.params_y.target_view = coin();
    c.nruns = 1 + static_cast<int>(rng.uniform_index(500));
    c.nbarriers = static_cast<int>(rng.uniform_index(4));
    c.barrier_mode = coin() ? BarrierMode::Fixed : BarrierMode::RandomPerRun;
    c.master_seed = rng.raw();
    c.randomize_start_target = coin();
    c.tick_ms = 1 + static_cast<int>(rng.uniform_index(50));
    c.cap_ms = c.tick_ms * (1 + static_cast<int>(rng.uniform_index(3000)));
    // Fixed worlds with pinned positions must actually pin them.
    if (c.barrier_mode == BarrierMode::Fixed && !c.randomize_start_target) {
        if (!c.target) c.target = Vec2{0.7, 0.7};
        if (!c.vehicle_start) c.vehicle_start = Vec2{0.2, 0.2};
    }
    return c;
}

}  // namespace

TEST_CASE("an empty document yields all defaults") {
    ConfigParse p = parse_config("");
    REQUIRE(p.ok());
    CHECK(*p.config == FileConfig{});
    CHECK_FALSE(p.config->target.has_value());
    CHECK(p.config->nruns == 200);
    CHECK(p.config->cap_ms == 30000);
}

TEST_CASE("a hand-written document parses field by field") {
    std::string doc =
        "# experiment layout\n"
        "[world]\n"
        "target = 0.9 , 0.5\n"
        "vehicle_start=0.1,0.5\n"
        "barrier = 0.5,0.5,1.5707963267948966,0.4\n"
        "barrier = 0.3,0.25,0,0.4\n"
        "; semicolon comments work too\n"
        "target_tolerance = 0.03\n"
        "\n"
        "[agents]\n"
        "coop_x = 1100\n"
        "coop_y = 0010\n"
        "gain_x = 0.02\n"
        "backoff_ms_y = 500\n"
        "target_view_y = false\n"
        "\n"
        "[experiment]\n"
        "nruns = 50\n"
        "barrier_mode = fixed\n"
        "master_seed = 18446744073709551615\n"
        "tick_ms = 5\n"
        "cap_ms = 20000\n";
    ConfigParse p = parse_config(doc);
    REQUIRE(p.ok());
    const FileConfig& c = *p.config;
    CHECK(c.target == Vec2{0.9, 0.5});
    CHECK(c.vehicle_start == Vec2{0.1, 0.5});
    REQUIRE(c.barriers.size() == 2);
    CHECK(c.barriers[0].rotation == 1.5707963267948966);
    CHECK(c.barriers[1].length == 0.4);
    CHECK(c.target_tolerance == 0.03);
    CHECK(c.vehicle_radius == 0.01);  // untouched default
    CHECK(c.coop_x == CoopLevel::from_string("1100"));
    CHECK(c.coop_y == CoopLevel::from_string("0010"));
    CHECK(c.params_x.gain == 0.02);
    CHECK(c.params_y.gain == 0.01);
    CHECK(c.params_y.backoff_ms == 500);
    CHECK_FALSE(c.params_y.target_view);
    CHECK(c.params_x.target_view);
    CHECK(c.nruns == 50);
    CHECK(c.barrier_mode == BarrierMode::Fixed);
    CHECK(c.master_seed == 18446744073709551615ull);
    CHECK(c.tick_ms == 5);
    CHECK(c.cap_ms == 20000);
}

TEST_CASE("carriage returns and indentation are tolerated") {
    ConfigParse p = parse_config("[experiment]\r\n  nruns = 7\r\n");
    REQUIRE(p.ok());
    CHECK(p.config->nruns == 7);
}

TEST_CASE("serialize and parse are exact inverses") {
    FileConfig base;
    base.target = Vec2{0.123456789012345678, 0.9};
    base.vehicle_start = Vec2{0.1, 0.2};
    base.barriers = {{{0.5, 0.5}, 1.0471975511965976, 0.3}};
    base.params_x.gain = 0.017;
    base.master_seed = 0xdeadbeefcafef00dull;
    ConfigParse p = parse_config(serialize_config(base));
    REQUIRE(p.ok());
    CHECK(*p.config == base);

    Rng rng(2024);
    for (int i = 0; i < 100; ++i) {
        FileConfig c = random_file_config(rng);
        ConfigParse rt = parse_config(serialize_config(c));
        REQUIRE(rt.ok());
        CHECK(*rt.config == c);
    }
}

TEST_CASE("issues carry one-based line numbers") {
    ConfigParse p = parse_config("[world]\nno_such_key = 1\n");
    REQUIRE_FALSE(p.ok());
    CHECK_FALSE(p.config.has_value());
    CHECK(has_issue_at(p, 2));

    p = parse_config("[world]\ntarget = 0.5,0.5\n\n[world2]\n");
    CHECK(has_issue_at(p, 4));

    p = parse_config("[agents]\ncoop_x = 0000\ncoop_x = 0001\n");
    REQUIRE_FALSE(p.ok());
    CHECK(has_issue_at(p, 3));
    CHECK(p.issues[0].message == "duplicate key 'coop_x'");

    p = parse_config("nruns = 5\n");  // key before any section
    CHECK(has_issue_at(p, 1));

    p = parse_config("[experiment]\nnruns\n");  // missing '='
    CHECK(has_issue_at(p, 2));
}

TEST_CASE("out-of-range values are rejected") {
    CHECK_FALSE(parse_config("[agents]\ngain_x = 0\n").ok());
    CHECK_FALSE(parse_config("[agents]\ngain_x = 1\n").ok());
    CHECK_FALSE(parse_config("[agents]\nbackoff_ms_x = 0\n").ok());
    CHECK_FALSE(parse_config("[agents]\ncoop_x = 012\n").ok());
    CHECK_FALSE(parse_config("[experiment]\nnbarriers = 4\n").ok());
    CHECK_FALSE(parse_config("[experiment]\nnruns = 0\n").ok());
    CHECK_FALSE(parse_config("[world]\ntarget = 1.5,0.5\n").ok());
    CHECK_FALSE(parse_config("[world]\ntarget_tolerance = 0.5\n").ok());
    CHECK_FALSE(parse_config("[world]\nbarrier = 0.5,0.5,0.1\n").ok());
    CHECK_FALSE(parse_config("[world]\nbarrier = 0.5,0.5,3.2,0.4\n").ok());
    CHECK_FALSE(parse_config("[world]\nbarrier = 0.5,0.5,0,0\n").ok());
    CHECK_FALSE(parse_config("[experiment]\nnruns = five\n").ok());
    CHECK_FALSE(parse_config("[experiment]\nrandomize_start_target = True\n").ok());
    std::string four_barriers = "[world]\n";
    for (int i = 0; i < 4; ++i) four_barriers += "barrier = 0.5,0.5,0,0.2\n";
    CHECK_FALSE(parse_config(four_barriers).ok());
}

TEST_CASE("document-level constraints report line zero") {
    ConfigParse p = parse_config("[experiment]\ntick_ms = 7\ncap_ms = 30000\n");
    REQUIRE_FALSE(p.ok());
    CHECK(has_issue_at(p, 0));

    p = parse_config(
        "[experiment]\nbarrier_mode = fixed\nrandomize_start_target = false\n");
    REQUIRE_FALSE(p.ok());
    CHECK(has_issue_at(p, 0));
}

TEST_CASE("parse_config_or_throw folds every issue into one error") {
    std::string doc = "[world]\nbad_key = 1\nworse = 2\n";
    try {
        parse_config_or_throw(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        std::string what = e.what();
        CHECK(what.find("line 2") != std::string::npos);
        CHECK(what.find("line 3") != std::string::npos);
    }
    CHECK_NOTHROW(parse_config_or_throw("[experiment]\nnruns = 3\n"));
}
