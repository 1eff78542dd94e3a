#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <sstream>

#include "ids/comb_model.hpp"

using namespace ids;

namespace {

Colouring iid_percolation(int dim, double p, std::uint64_t seed) {
    return Colouring::iid(dim, {1.0 - p, p}, seed, Alphabet::site_percolation());
}

CombModelSpec adjacency() {
    CombModelSpec m;
    m.kind = CombModelSpec::Kind::Adjacency;
    return m;
}

CombModelSpec percolation() {
    CombModelSpec m;
    m.kind = CombModelSpec::Kind::SitePercolation;
    return m;
}

Colouring trivial_colouring(int dim) { return Colouring::constant(dim, 0, Alphabet::potentials_of({0.0})); }

}  // namespace

TEST_CASE("adjacency on a 2-site chain") {
    SymBand m = assemble(adjacency(), trivial_colouring(1), origin_cube(2, 1));
    REQUIRE(m.order() == 2);
    CHECK(m.get(0, 0) == 0.0);
    CHECK(m.get(1, 0) == 1.0);
    CHECK(m.get(0, 1) == 1.0);
    std::vector<double> eig = symmetric_eigenvalues(m);
    CHECK(eig[0] == doctest::Approx(-1.0));
    CHECK(eig[1] == doctest::Approx(1.0));
}

TEST_CASE("all-deleted percolation assembles the zero matrix") {
    Colouring dead = Colouring::constant(2, 0, Alphabet::site_percolation());
    SymBand m = assemble(percolation(), dead, origin_cube(3, 2));
    CHECK(m.order() == 9);
    CHECK(m.max_abs() == 0.0);
    StepFunction n = counting_function(m);
    CHECK(n(-1e-9) == 0.0);
    CHECK(n(0.0) == 9.0);
}

TEST_CASE("periodic block chain: period 1, diagonal 5, unit hopping") {
    CombModelSpec m;
    m.kind = CombModelSpec::Kind::PeriodicBlock;
    m.period = 1;
    m.blocks = {{{}, {}, {5.0}},
                {{}, {1, 0, 0, 0}, {1.0}},
                {{}, {-1, 0, 0, 0}, {1.0}}};
    SymBand a = assemble(m, trivial_colouring(1), origin_cube(3, 1));
    REQUIRE(a.order() == 3);
    for (int i = 0; i < 3; ++i) CHECK(a.get(i, i) == 5.0);
    CHECK(a.get(1, 0) == 1.0);
    CHECK(a.get(2, 1) == 1.0);
    CHECK(a.get(2, 0) == 0.0);
}

TEST_CASE("block validation rejects non-symmetric hopping") {
    CombModelSpec m;
    m.kind = CombModelSpec::Kind::PeriodicBlock;
    m.period = 1;
    m.blocks = {{{}, {1, 0, 0, 0}, {1.0}}};  // missing the -1 partner
    CHECK_THROWS(m.validate());
    m.blocks.push_back({{}, {-1, 0, 0, 0}, {2.0}});  // wrong transpose value
    CHECK_THROWS(m.validate());
}

TEST_CASE("eigenvalues: fixed matrices and the Chebyshev chain") {
    SymBand d(3, 0);
    d.at(0, 0) = 3.0;
    d.at(1, 1) = 1.0;
    d.at(2, 2) = 2.0;
    std::vector<double> e = symmetric_eigenvalues(d);
    CHECK(e[0] == doctest::Approx(1.0));
    CHECK(e[1] == doctest::Approx(2.0));
    CHECK(e[2] == doctest::Approx(3.0));

    const int n = 10;
    SymBand path = assemble(adjacency(), trivial_colouring(1), origin_cube(n, 1));
    std::vector<double> eig = symmetric_eigenvalues(path);
    for (int k = 1; k <= n; ++k)
        CHECK(std::abs(eig[static_cast<std::size_t>(k - 1)] -
                       2.0 * std::cos((n + 1 - k) * M_PI / (n + 1))) < 1e-9);
}

TEST_CASE("counting function fixed cases") {
    SymBand z(3, 0);
    StepFunction n = counting_function(z);
    CHECK(n(-1e-12) == 0.0);
    CHECK(n(0.0) == 3.0);

    SymBand d(2, 0);
    d.at(0, 0) = 1.0;
    d.at(1, 1) = 1.0;
    JumpList j = counting_function(d).jumps(0.5);
    REQUIRE(j.size() == 1);
    CHECK(j[0].location == doctest::Approx(1.0));
    CHECK(j[0].height == 2.0);
}

TEST_CASE("Z^2 adjacency matches the separable closed form") {
    const int M = 8;
    SymBand m = assemble(adjacency(), trivial_colouring(2), origin_cube(M, 2));
    std::vector<double> eig = symmetric_eigenvalues(m);
    std::vector<double> oracle;
    for (int j = 1; j <= M; ++j)
        for (int k = 1; k <= M; ++k)
            oracle.push_back(2.0 * std::cos(M_PI * j / (M + 1)) + 2.0 * std::cos(M_PI * k / (M + 1)));
    std::sort(oracle.begin(), oracle.end());
    REQUIRE(eig.size() == oracle.size());
    for (std::size_t i = 0; i < eig.size(); ++i)
        CHECK(std::abs(eig[i] - oracle[i]) < 1e-9);
}

TEST_CASE("clusters") {
    Colouring full = Colouring::constant(1, 1, Alphabet::site_percolation());
    ClusterList cl = clusters(full, origin_cube(3, 1));
    REQUIRE(cl.components.size() == 1);
    CHECK(cl.components[0].size() == 3);
    CHECK(cl.deleted_sites == 0);

    Colouring dead = Colouring::constant(1, 0, Alphabet::site_percolation());
    ClusterList cd = clusters(dead, origin_cube(3, 1));
    CHECK(cd.components.empty());
    CHECK(cd.deleted_sites == 3);

    // checkerboard: occupied iff (x+y) even
    const int S = 6;
    std::vector<std::uint8_t> data(static_cast<std::size_t>(S) * S);
    Cube q = origin_cube(S, 2);
    for (std::int64_t i = 0; i < q.volume(); ++i) {
        Site s = q.site_at(i);
        data[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((s[0] + s[1]) % 2 == 0);
    }
    Colouring cb = Colouring::explicit_array(q, data, Alphabet::site_percolation());
    ClusterList cc = clusters(cb, q);
    CHECK(cc.components.size() == static_cast<std::size_t>(q.volume() / 2));
    for (const auto& comp : cc.components) CHECK(comp.size() == 1);
}

TEST_CASE("cluster decoupling reproduces the whole-box spectrum") {
    // both routes produce the same multiset of eigenvalues; they round
    // differently, so the comparison is elementwise on the sorted lists
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> up(0.2, 0.8);
    for (int trial = 0; trial < 30; ++trial) {
        int dim = 1 + trial % 2;
        int side = dim == 1 ? 12 : 5;
        Colouring c = iid_percolation(dim, up(rng), rng());
        Box q = box_of(origin_cube(side, dim));
        StepFunction direct = counting_function(assemble(percolation(), c, q));
        StepFunction via = counting_via_clusters(percolation(), c, q);
        auto atoms = [](const StepFunction& f) {
            std::vector<double> evs;
            for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
                auto mult = static_cast<std::int64_t>(
                    std::llround(f.values()[i + 1] - f.values()[i]));
                for (std::int64_t k = 0; k < mult; ++k) evs.push_back(f.breakpoints()[i]);
            }
            return evs;
        };
        std::vector<double> a = atoms(direct), b = atoms(via);
        REQUIRE(a.size() == b.size());
        CHECK(a.size() == static_cast<std::size_t>(q.volume()));
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-8);
    }
}

TEST_CASE("shift invariance of the spectrum") {
    std::mt19937_64 rng(9);
    std::uniform_int_distribution<Coord> t(-100, 100);
    for (int trial = 0; trial < 20; ++trial) {
        Colouring c = iid_percolation(2, 0.6, 1000 + static_cast<std::uint64_t>(trial));
        Site shift = make_site({t(rng), t(rng)});
        Cube q = make_cube(make_site({t(rng), t(rng)}), 4, 2);
        Cube qs = make_cube(q.anchor + shift, 4, 2);
        std::vector<double> a = symmetric_eigenvalues(assemble(percolation(), c, q));
        std::vector<double> b =
            symmetric_eigenvalues(assemble(percolation(), c.shifted(shift), qs));
        REQUIRE(a.size() == b.size());
        for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
    }
}

TEST_CASE("eigenvalue sum equals the trace") {
    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        Colouring c = Colouring::iid(2, {0.2, 0.5, 0.3}, rng(),
                                     Alphabet::potentials_of({kDeleted, -1.5, 2.0}));
        SymBand m = assemble(percolation(), c, origin_cube(5, 2));
        std::vector<double> eig = symmetric_eigenvalues(m);
        double sum = 0;
        for (double e : eig) sum += e;
        double scale = std::max(1.0, std::abs(m.trace()));
        CHECK(std::abs(sum - m.trace()) / scale < 1e-8);
    }
}

TEST_CASE("size caps raise resource errors") {
    CHECK_THROWS_AS(assemble(adjacency(), trivial_colouring(1), origin_cube(100, 1), 50),
                    ResourceCapError);
    SymBand big(10, 1);
    CHECK_THROWS_AS(counting_function(big, 5), ResourceCapError);
}

TEST_CASE("matrix coordinate dump") {
    SymBand m(2, 1);
    m.at(0, 0) = 1.0;
    m.at(1, 0) = -0.5;
    std::ostringstream os;
    m.write_coordinate(os);
    CHECK(os.str().find("0 0 1") != std::string::npos);
    CHECK(os.str().find("-0.5") != std::string::npos);
}
