#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "pctsim/metrics.hpp"

using namespace pctsim;

namespace {

RunResult solved_run(long st_ms, double comm_x = 0.0, double comm_y = 0.0) {
    RunResult r;
    r.solved = true;
    r.st_ms = st_ms;
    r.comm_pct_x = comm_x;
    r.comm_pct_y = comm_y;
    r.ticks = st_ms / 10;
    return r;
}

RunResult dnf_run(double comm_x = 0.0, double comm_y = 0.0) {
    RunResult r;
    r.solved = false;
    r.comm_pct_x = comm_x;
    r.comm_pct_y = comm_y;
    r.ticks = 3000;
    return r;
}

}  // namespace

TEST_CASE("goodness formula and its inversion") {
    // No DNFs: plain log10 of the mean.
    CHECK(*goodness(1000.0, 0, 100) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(*goodness(30000.0, 0, 10) == doctest::Approx(std::log10(30000.0)).epsilon(1e-15));
    // Half DNFs: exponent 1.5.
    CHECK(*goodness(100.0, 50, 100) == doctest::Approx(3.0).epsilon(1e-15));
    // Inverting a target score: gm 6.0828 at 64% DNF needs mean 10^(6.0828/1.64).
    double mean = std::pow(10.0, 6.0828 / 1.64);
    CHECK(mean == doctest::Approx(5117.9).epsilon(0.01));
    CHECK(*goodness(mean, 64, 100) == doctest::Approx(6.0828).epsilon(1e-12));
}

TEST_CASE("goodness is undefined only when nothing solved") {
    CHECK_FALSE(goodness(12345.0, 10, 10).has_value());
    CHECK(goodness(12345.0, 9, 10).has_value());
    CHECK_THROWS_AS(goodness(1000.0, -1, 10), std::invalid_argument);
    CHECK_THROWS_AS(goodness(1000.0, 11, 10), std::invalid_argument);
    CHECK_THROWS_AS(goodness(0.0, 0, 10), std::invalid_argument);
    CHECK_THROWS_AS(goodness(1000.0, 0, 0), std::invalid_argument);
}

TEST_CASE("goodness worsens with slower means and with more DNFs") {
    double prev = -1.0;
    for (double mean : {100.0, 500.0, 2500.0, 12500.0}) {
        double g = *goodness(mean, 3, 10);
        CHECK(g > prev);
        prev = g;
    }
    prev = -1.0;
    for (int dnf = 0; dnf < 10; ++dnf) {
        double g = *goodness(2000.0, dnf, 10);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("summarize of a small mixed batch") {
    std::vector<RunResult> rs{solved_run(1000), solved_run(3000), dnf_run()};
    ExperimentSummary s = summarize(rs);
    CHECK(s.nruns == 3);
    CHECK(s.dnf_count == 1);
    CHECK(*s.mean_st_ms == 2000.0);
    CHECK(*s.median_st_ms == 2000.0);
    // (1 + 1/3) * log10(2000)
    CHECK(*s.gm == doctest::Approx((4.0 / 3.0) * std::log10(2000.0)).epsilon(1e-15));
    CHECK(*s.gm == doctest::Approx(4.4013733).epsilon(1e-7));
    CHECK(s.comm_mean_x == 0.0);
    CHECK(s.comm_stddev_x == 0.0);

    // Delta-method standard error, recomputed by hand.
    double sd = std::sqrt(((1000.0 - 2000.0) * (1000.0 - 2000.0) +
                           (3000.0 - 2000.0) * (3000.0 - 2000.0)) /
                          1.0);
    double f = 1.0 / 3.0;
    double dm = (1.0 + f) / (2000.0 * std::log(10.0));
    double df = std::log10(2000.0);
    double want = std::sqrt(dm * dm * sd * sd / 2.0 + df * df * f * (1.0 - f) / 3.0);
    CHECK(*s.gm_se == doctest::Approx(want).epsilon(1e-12));
}

TEST_CASE("summarize with every run a DNF leaves ST statistics empty") {
    std::vector<RunResult> rs{dnf_run(5.0, 7.0), dnf_run(5.0, 7.0)};
    ExperimentSummary s = summarize(rs);
    CHECK(s.dnf_count == 2);
    CHECK_FALSE(s.mean_st_ms.has_value());
    CHECK_FALSE(s.median_st_ms.has_value());
    CHECK_FALSE(s.gm.has_value());
    CHECK_FALSE(s.gm_se.has_value());
    CHECK_FALSE(s.pearson_r.has_value());
    // Communication statistics still cover all runs.
    CHECK(s.comm_mean_x == 5.0);
    CHECK(s.comm_mean_y == 7.0);
    CHECK(s.comm_stddev_x == 0.0);
    CHECK_THROWS_AS(summarize(std::vector<RunResult>{}), std::invalid_argument);
}

TEST_CASE("communication statistics cover all runs, ST only solved ones") {
    std::vector<RunResult> rs{solved_run(1000, 10.0, 20.0), dnf_run(30.0, 40.0)};
    ExperimentSummary s = summarize(rs);
    CHECK(*s.mean_st_ms == 1000.0);
    CHECK(s.comm_mean_x == 20.0);
    CHECK(s.comm_mean_y == 30.0);
    // Sample stddev with n-1 in the denominator.
    CHECK(s.comm_stddev_x == doctest::Approx(std::sqrt(200.0)).epsilon(1e-12));
}

TEST_CASE("pearson matches hand-worked cases") {
    std::vector<double> xs{1, 2, 3, 4, 5};
    std::vector<double> lin{5, 7, 9, 11, 13};
    CHECK(*pearson(xs, lin) == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<double> neg{-1, -2, -3, -4, -5};
    CHECK(*pearson(xs, neg) == doctest::Approx(-1.0).epsilon(1e-15));
    // Classic 0.8: covariance 8, both variances 10.
    std::vector<double> ys{2, 1, 4, 3, 5};
    CHECK(*pearson(xs, ys) == 0.8);

    std::vector<double> flat{3, 3, 3, 3, 3};
    CHECK_FALSE(pearson(xs, flat).has_value());
    std::vector<double> one{1.0};
    CHECK_FALSE(pearson(one, one).has_value());
    std::vector<double> bad{1, 2};
    CHECK_THROWS_AS(pearson(xs, bad), std::invalid_argument);
}

TEST_CASE("summary correlation pairs per-run mean comm with ST, solved only") {
    std::vector<RunResult> rs;
    long sts[] = {10, 20, 30, 40, 50};
    double comms[] = {1, 2, 3, 4, 5};
    for (int i = 0; i < 5; ++i) rs.push_back(solved_run(sts[i], comms[i], comms[i]));
    rs.push_back(dnf_run(99.0, 99.0));  // must not disturb the correlation
    ExperimentSummary s = summarize(rs);
    CHECK(*s.pearson_r == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("histogram bins anchor at zero and conserve counts") {
    std::vector<double> vals{50, 149, 150, 1100};
    auto h = histogram(vals, 100);
    REQUIRE(h.size() == 12);  // bins 0..1100
    CHECK(h[0] == std::pair<long, long>{0, 1});
    CHECK(h[1] == std::pair<long, long>{100, 2});  // 149 and the boundary 150
    for (int b = 2; b <= 10; ++b) {
        CHECK(h[b].first == 100L * b);
        CHECK(h[b].second == 0);
    }
    CHECK(h[11] == std::pair<long, long>{1100, 1});
    long total = 0;
    for (auto [start, count] : h) total += count;
    CHECK(total == static_cast<long>(vals.size()));

    CHECK(histogram(std::vector<double>{}, 100).empty());
    CHECK_THROWS_AS(histogram(vals, 0), std::invalid_argument);
}

TEST_CASE("bootstrap interval is deterministic and ordered") {
    std::vector<RunResult> rs;
    for (int i = 0; i < 40; ++i) rs.push_back(solved_run(500 + 100L * (i % 7)));
    for (int i = 0; i < 10; ++i) rs.push_back(dnf_run());
    GmInterval a = bootstrap_gm_ci(rs, 200, 42);
    GmInterval b = bootstrap_gm_ci(rs, 200, 42);
    REQUIRE(a.lo.has_value());
    REQUIRE(a.hi.has_value());
    CHECK(*a.lo <= *a.hi);
    CHECK(*a.lo == *b.lo);
    CHECK(*a.hi == *b.hi);
    GmInterval c = bootstrap_gm_ci(rs, 200, 43);
    CHECK((*c.lo != *a.lo || *c.hi != *a.hi));

    // Identical runs collapse the interval onto the point estimate.
    std::vector<RunResult> same(25, solved_run(1000));
    GmInterval d = bootstrap_gm_ci(same, 50, 1);
    CHECK(*d.lo == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(*d.hi == doctest::Approx(3.0).epsilon(1e-15));

    CHECK_FALSE(bootstrap_gm_ci(std::vector<RunResult>{}, 200, 1).lo.has_value());
}

TEST_CASE("interval brackets the point estimate for a well-behaved batch") {
    std::vector<RunResult> rs;
    for (int i = 0; i < 100; ++i) rs.push_back(solved_run(1000 + 37L * (i % 11)));
    ExperimentSummary s = summarize(rs);
    GmInterval ci = bootstrap_gm_ci(rs, 500, 7);
    CHECK(*ci.lo <= *s.gm);
    CHECK(*ci.hi >= *s.gm);
}
