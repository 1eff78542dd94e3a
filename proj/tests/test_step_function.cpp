#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "ids/step_function.hpp"

using namespace ids;

namespace {

StepFunction random_step(std::mt19937_64& rng, int max_pieces = 8) {
    std::uniform_int_distribution<int> np(0, max_pieces);
    std::uniform_real_distribution<double> loc(-10.0, 10.0);
    std::uniform_real_distribution<double> h(0.1, 2.0);
    std::vector<Jump> atoms;
    int n = np(rng);
    for (int i = 0; i < n; ++i) atoms.push_back({loc(rng), h(rng)});
    return StepFunction::from_atoms(std::move(atoms));
}

}  // namespace

TEST_CASE("counting_from_sorted basics") {
    CHECK(StepFunction::counting_from_sorted({}).sup_distance(StepFunction::zero()) == 0.0);

    std::vector<double> eigs{1.0, 1.0, 2.0};
    StepFunction f = StepFunction::counting_from_sorted(eigs);
    CHECK(f(0.5) == 0.0);
    CHECK(f(1.0) == 2.0);
    CHECK(f(1.5) == 2.0);
    CHECK(f(2.0) == 3.0);
    CHECK(f.leading_value() == 0.0);

    std::vector<double> d123{1.0, 2.0, 3.0};
    CHECK(StepFunction::counting_from_sorted(d123)(2.5) == 2.0);

    std::vector<double> unsorted{2.0, 1.0};
    CHECK_THROWS(StepFunction::counting_from_sorted(unsorted));
}

TEST_CASE("counting matches the brute-force count at random points") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> xs;
        for (int i = 0; i < 20; ++i) xs.push_back(u(rng));
        std::sort(xs.begin(), xs.end());
        StepFunction f = StepFunction::counting_from_sorted(xs);
        for (int i = 0; i < 20; ++i) {
            double lam = u(rng);
            double brute = 0;
            for (double x : xs)
                if (x <= lam) ++brute;
            CHECK(f(lam) == brute);
        }
    }
}

TEST_CASE("combine") {
    std::mt19937_64 rng(3);
    StepFunction f = random_step(rng), g = random_step(rng);
    CHECK(StepFunction::combine(1.0, f, -1.0, f).sup_distance(StepFunction::zero()) == 0.0);

    StepFunction h0 = StepFunction::unit_jump(0.0);
    StepFunction half = StepFunction::combine(0.5, h0, 0.5, h0);
    CHECK(half.sup_distance(h0) == 0.0);
    CHECK(half.breakpoints().size() == 1);

    // evaluation exactness at random points
    std::uniform_real_distribution<double> u(-12.0, 12.0);
    for (int trial = 0; trial < 20; ++trial) {
        StepFunction a = random_step(rng), b = random_step(rng);
        StepFunction c = StepFunction::combine(0.7, a, -1.3, b);
        for (int i = 0; i < 50; ++i) {
            double lam = u(rng);
            CHECK(c(lam) == doctest::Approx(0.7 * a(lam) - 1.3 * b(lam)).epsilon(1e-12));
        }
    }
}

TEST_CASE("sup_distance examples") {
    StepFunction j0 = StepFunction::unit_jump(0.0), j1 = StepFunction::unit_jump(1.0);
    CHECK(j0.sup_distance(j1) == 1.0);
    CHECK(j0.sup_distance(j0) == 0.0);
    std::vector<double> a{1.0, 2.0}, b{1.0, 3.0};
    CHECK(StepFunction::counting_from_sorted(a).sup_distance(
              StepFunction::counting_from_sorted(b)) == 1.0);
    // windowed: the two counting functions differ exactly on [2,3)
    StepFunction fa = StepFunction::counting_from_sorted(a);
    StepFunction fb = StepFunction::counting_from_sorted(b);
    CHECK(fa.sup_distance(fb, 3.0, 10.0) == 0.0);
    CHECK(fa.sup_distance(fb, 0.0, 2.5) == 1.0);
}

TEST_CASE("sup_distance is a metric") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        StepFunction a = random_step(rng), b = random_step(rng), c = random_step(rng);
        double dab = a.sup_distance(b), dba = b.sup_distance(a);
        CHECK(dab == dba);
        CHECK(a.sup_distance(a) == 0.0);
        CHECK(a.sup_distance(c) <= dab + b.sup_distance(c) + 1e-12);
        if (dab == 0.0)
            for (double lam : {-11.0, -3.3, 0.0, 4.2, 11.0}) CHECK(a(lam) == b(lam));
    }
}

TEST_CASE("weighted norm") {
    StepFunction z = StepFunction::zero();
    CHECK(StepFunction::unit_jump(0.0).weighted_sup_distance(z) == 1.0);
    CHECK(StepFunction::unit_jump(3.0).weighted_sup_distance(z) == doctest::Approx(0.5));
    StepFunction j = StepFunction::unit_jump(-3.0);
    CHECK(j.weighted_sup_distance(j) == 0.0);
    // weight never exceeds 1
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        StepFunction a = random_step(rng), b = random_step(rng);
        CHECK(a.weighted_sup_distance(b) <= a.sup_distance(b) + 1e-15);
    }
}

TEST_CASE("jumps") {
    std::vector<double> eigs{1.0, 1.0, 2.0};
    JumpList j = StepFunction::counting_from_sorted(eigs).jumps(1.5);
    REQUIRE(j.size() == 1);
    CHECK(j[0].location == 1.0);
    CHECK(j[0].height == 2.0);

    std::vector<double> stair;
    for (int i = 0; i < 50; ++i) stair.push_back(i * 0.1);
    CHECK(StepFunction::counting_from_sorted(stair).jumps(2.0).empty());
}

TEST_CASE("restrict and monotonicity") {
    std::vector<double> eigs{-1.0, 0.5, 2.0};
    StepFunction f = StepFunction::counting_from_sorted(eigs);
    StepFunction r = f.restrict_to(0.0, 1.0);
    CHECK(r(-5.0) == f(0.0));
    CHECK(r(0.7) == f(0.7));
    CHECK(r(100.0) == f(1.0));
    CHECK(f.is_non_decreasing());
    CHECK_FALSE(StepFunction::combine(-1.0, f, 0.0, f).is_non_decreasing());
}

TEST_CASE("csv round-trip is lossless") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        StepFunction f = random_step(rng);
        std::stringstream ss;
        f.write_csv(ss);
        std::string first;
        std::getline(ss, first);
        CHECK(first == "lambda,value");
        ss.seekg(0);
        StepFunction g = StepFunction::read_csv(ss);
        CHECK(f.breakpoints() == g.breakpoints());
        CHECK(f.values() == g.values());
    }
    // leading row carries v0
    std::stringstream ss;
    StepFunction::unit_jump(2.5).write_csv(ss);
    std::string line;
    std::getline(ss, line);
    std::getline(ss, line);
    CHECK(line == "-inf,0");
}
