#include <set>

#include "doctest.h"
#include "pctsim/rng.hpp"

using namespace pctsim;

TEST_CASE("mix_seed separates nearby inputs") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 50; ++a)
        for (std::uint64_t b = 0; b < 50; ++b) seen.insert(mix_seed(a, b));
    CHECK(seen.size() == 2500);
    CHECK(mix_seed(1, 2) != mix_seed(2, 1));
    CHECK(mix_seed(0, 0) == mix_seed(0, 0));
}

TEST_CASE("Rng streams are deterministic and in range") {
    Rng a(42), b(42), c(43);
    bool all_equal = true;
    bool any_diff_seed_diff = false;
    for (int i = 0; i < 1000; ++i) {
        double ua = a.uniform();
        double ub = b.uniform();
        double uc = c.uniform();
        if (ua != ub) all_equal = false;
        if (ua != uc) any_diff_seed_diff = true;
        CHECK(ua >= 0.0);
        CHECK(ua < 1.0);
    }
    CHECK(all_equal);
    CHECK(any_diff_seed_diff);
}

TEST_CASE("Rng range mapping") {
    Rng r(7);
    for (int i = 0; i < 1000; ++i) {
        double v = r.uniform(0.1, 0.9);
        CHECK(v >= 0.1);
        CHECK(v < 0.9);
    }
    Rng s(8);
    for (int i = 0; i < 100; ++i) CHECK(s.uniform_index(4) < 4);
}
