#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "ids/geometry.hpp"

using namespace ids;

TEST_CASE("visible points") {
    CHECK(visible_point(make_site({2, 3}), 2));
    CHECK_FALSE(visible_point(make_site({2, 4}), 2));
    CHECK(visible_point(make_site({0, 0}), 2));
    CHECK(visible_point(make_site({0, 1}), 2));
    CHECK_FALSE(visible_point(make_site({0, 5}), 2));  // hidden behind (0, 1)
    CHECK_FALSE(visible_point(make_site({0, 4}), 2));
    CHECK(visible_point(make_site({-3, 7}), 2));
    CHECK_FALSE(visible_point(make_site({-2, -4}), 2));
    CHECK(visible_point(make_site({6, 10, 15}), 3));
}

TEST_CASE("cube indexing round-trips") {
    Cube q = make_cube(make_site({-2, 3}), 5, 2);
    CHECK(q.volume() == 25);
    std::set<std::int64_t> seen;
    for (std::int64_t i = 0; i < q.volume(); ++i) {
        Site s = q.site_at(i);
        CHECK(q.contains(s));
        CHECK(q.index_of(s) == i);
        seen.insert(i);
    }
    CHECK(seen.size() == 25);
    CHECK_FALSE(q.contains(make_site({-3, 3})));
    CHECK_FALSE(q.contains(make_site({0, 8})));
    // row-major, last axis fastest
    CHECK(q.site_at(1) == make_site({-2, 4}));
    CHECK(q.site_at(5) == make_site({-1, 3}));
}

TEST_CASE("cube validation") {
    CHECK_THROWS(make_cube(Site{}, 0, 1));
    CHECK_THROWS(make_cube(Site{}, 3, 0));
    CHECK_THROWS(make_cube(Site{}, 3, 5));
}

TEST_CASE("boxes split cleanly") {
    Box b = box_of(make_cube(make_site({1, -1}), 6, 2));
    CHECK(b.volume() == 36);
    auto [lo, hi] = split_box(b, 1, 2);
    CHECK(lo.volume() + hi.volume() == b.volume());
    for (std::int64_t i = 0; i < b.volume(); ++i) {
        Site s = b.site_at(i);
        CHECK((lo.contains(s) != hi.contains(s)));  // exact partition
    }
    for (std::int64_t i = 0; i < lo.volume(); ++i) CHECK(lo.index_of(lo.site_at(i)) == i);
    for (std::int64_t i = 0; i < hi.volume(); ++i) CHECK(hi.index_of(hi.site_at(i)) == i);
    CHECK_THROWS(split_box(b, 0, 0));
    CHECK_THROWS(split_box(b, 0, 6));
    CHECK_THROWS(split_box(b, 2, 1));
}

TEST_CASE("hyperoctahedral group orders") {
    CHECK(hyperoctahedral_group(1).size() == 2);
    CHECK(hyperoctahedral_group(2).size() == 8);
    CHECK(hyperoctahedral_group(3).size() == 48);
    // all elements distinct
    auto g3 = hyperoctahedral_group(3);
    std::set<std::pair<std::array<int, kMaxDim>, std::array<int, kMaxDim>>> uniq;
    for (const auto& e : g3) uniq.insert({e.perm, e.sign});
    CHECK(uniq.size() == g3.size());
}
