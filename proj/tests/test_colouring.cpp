#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "ids/colouring.hpp"

using namespace ids;

TEST_CASE("constant rule") {
    Colouring c = Colouring::constant(2, 3, Alphabet::none(4));
    CHECK(c.at(make_site({0, 0})) == 3);
    CHECK(c.at(make_site({-17, 123})) == 3);
}

TEST_CASE("visible-points rule") {
    Colouring c = Colouring::visible_points(2, Alphabet::none(2));
    CHECK(c.at(make_site({2, 2})) == 0);
    CHECK(c.at(make_site({2, 3})) == 1);
    CHECK(c.at(make_site({0, 0})) == 1);
}

TEST_CASE("periodic rule wraps negatives") {
    // period 2, d=1, cell [a, b]
    Colouring c = Colouring::periodic(1, 2, {0, 1}, Alphabet::none(2));
    CHECK(c.at(make_site({0})) == 0);
    CHECK(c.at(make_site({1})) == 1);
    CHECK(c.at(make_site({-1})) == 1);
    CHECK(c.at(make_site({-2})) == 0);
    CHECK_THROWS(Colouring::periodic(2, 2, {0, 1}, Alphabet::none(2)));  // cell must be period^d
}

TEST_CASE("iid rule is a pure function of (seed, site)") {
    Colouring c = Colouring::iid(2, {0.5, 0.5}, 7, Alphabet::none(2));
    Site x = make_site({3, 1});
    CHECK(c.at(x) == c.at(x));
    Colouring c2 = Colouring::iid(2, {0.5, 0.5}, 7, Alphabet::none(2));
    for (Coord i = -5; i <= 5; ++i)
        for (Coord j = -5; j <= 5; ++j) CHECK(c.at(make_site({i, j})) == c2.at(make_site({i, j})));
    // different seed differs somewhere
    Colouring c3 = Colouring::iid(2, {0.5, 0.5}, 8, Alphabet::none(2));
    bool differs = false;
    for (Coord i = 0; i < 20 && !differs; ++i)
        differs = c.at(make_site({i, 0})) != c3.at(make_site({i, 0}));
    CHECK(differs);
}

TEST_CASE("iid empirical frequency matches the distribution") {
    Colouring c = Colouring::iid(1, {0.25, 0.75}, 42, Alphabet::none(2));
    std::int64_t ones = 0;
    const std::int64_t n = 100000;
    for (std::int64_t i = 0; i < n; ++i)
        if (c.at(make_site({i})) == 1) ++ones;
    CHECK(std::abs(static_cast<double>(ones) / n - 0.75) < 0.01);
}

TEST_CASE("iid validation") {
    CHECK_THROWS(Colouring::iid(1, {0.5, 0.6}, 1, Alphabet::none(2)));
    CHECK_THROWS(Colouring::iid(1, {}, 1, Alphabet::none(1)));
}

TEST_CASE("shift acts as c(x - t)") {
    Colouring c = Colouring::visible_points(2, Alphabet::none(2));
    Site t = make_site({5, -3});
    Colouring s = c.shifted(t);
    for (Coord i = -4; i <= 4; ++i)
        for (Coord j = -4; j <= 4; ++j) {
            Site x = make_site({i, j});
            CHECK(s.at(x + t) == c.at(x));
        }
}

TEST_CASE("explicit colouring is defined on its region only") {
    Cube q = make_cube(make_site({1}), 3, 1);
    Colouring c = Colouring::explicit_array(q, {2, 0, 1}, Alphabet::none(3));
    CHECK(c.at(make_site({1})) == 2);
    CHECK(c.at(make_site({3})) == 1);
    CHECK_THROWS_AS(c.at(make_site({0})), std::out_of_range);
    CHECK_THROWS(Colouring::explicit_array(q, {0, 1}, Alphabet::none(2)));
}

TEST_CASE("alphabet payloads") {
    CHECK(Alphabet::none(4).size() == 4);
    CHECK_THROWS(Alphabet::none(0));
    Alphabet p = Alphabet::site_percolation();
    CHECK(p.size() == 2);
    CHECK(std::isinf(p.potentials[0]));
    CHECK(p.potentials[1] == 0.0);
    CHECK(Alphabet::bc_tags({BCTag::Dirichlet, BCTag::Kirchhoff}).size() == 2);
    CHECK_THROWS(Alphabet::potentials_of({}));
}

TEST_CASE("site_uniform lands in [0,1) and derive_seed separates streams") {
    for (Coord i = -100; i < 100; ++i) {
        double u = site_uniform(9, make_site({i}), 1);
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(derive_seed(1, 5) == derive_seed(1, 5));
}
