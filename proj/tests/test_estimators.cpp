#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "ids/estimators.hpp"

using namespace ids;

namespace {

ModelHandle adjacency_model(int dim) {
    ModelHandle m;
    m.kind = ModelHandle::Kind::Combinatorial;
    m.dim = dim;
    m.comb.kind = CombModelSpec::Kind::Adjacency;
    m.comb_colouring = ColouringSpec::constant(0, Alphabet::potentials_of({0.0}));
    return m;
}

ModelHandle percolation_model(int dim, double p) {
    ModelHandle m;
    m.kind = ModelHandle::Kind::Combinatorial;
    m.dim = dim;
    m.comb.kind = CombModelSpec::Kind::SitePercolation;
    m.comb_colouring = ColouringSpec::iid({1.0 - p, p}, Alphabet::site_percolation());
    return m;
}

ModelHandle kirchhoff_model(int dim) {
    ModelHandle m;
    m.kind = ModelHandle::Kind::Quantum;
    m.dim = dim;
    m.quantum.bc = ColouringSpec::constant(0, Alphabet::bc_tags({BCTag::Kirchhoff}));
    return m;
}

}  // namespace

TEST_CASE("finite-volume ids of the 2-site chain") {
    IdsCurve c = finite_volume_ids(adjacency_model(1), 0, 2, {-3.0, 3.0});
    CHECK(c.volume == 2);
    CHECK(c.curve(-1.5) == 0.0);
    CHECK(c.curve(-1.0) == doctest::Approx(0.5));
    CHECK(c.curve(0.0) == doctest::Approx(0.5));
    CHECK(c.curve(1.0) == doctest::Approx(1.0));
}

TEST_CASE("all-deleted percolation gives the unit jump at zero") {
    IdsCurve c = finite_volume_ids(percolation_model(2, 0.0), 3, 10, {-5.0, 5.0});
    CHECK(c.curve(-1e-9) == 0.0);
    CHECK(c.curve(0.0) == doctest::Approx(1.0));
    CHECK(c.curve(4.9) == doctest::Approx(1.0));
}

TEST_CASE("kirchhoff chain ids approximates sqrt(lambda)/pi") {
    const int M = 50;
    IdsCurve c = finite_volume_ids(kirchhoff_model(1), 0, M, {0.0, 100.0});
    for (double lam = 2.0; lam <= 100.0; lam += 7.0) {
        double target = std::sqrt(lam) / M_PI;
        CHECK(std::abs(c.curve(lam) - target) < 1.0 / M + 0.01);
    }
}

TEST_CASE("pattern estimator reproduces the constant-colouring identity") {
    ModelHandle model = adjacency_model(1);
    const int S = 40, M = 4;
    Colouring c = model.comb_colouring.instantiate(1, 0);
    FrequencyTable t = estimate_frequencies(c, origin_cube(S, 1), M);
    IdsCurve pat = pattern_estimator(model, t, {-3.0, 3.0});
    IdsCurve fv = finite_volume_ids(model, 0, M, {-3.0, 3.0});
    // nu of the single pattern is (S-M+1)/S, and the estimator is linear
    double nu = double(S - M + 1) / S;
    for (double lam = -2.9; lam < 3.0; lam += 0.1)
        CHECK(pat.curve(lam) == doctest::Approx(nu * fv.curve(lam)).epsilon(1e-12));
}

TEST_CASE("pattern estimator on an empty table is zero") {
    FrequencyTable t;
    t.dim = 1;
    t.side = 1;
    t.window_volume = 1;
    IdsCurve pat = pattern_estimator(adjacency_model(1), t, {-3.0, 3.0});
    CHECK(pat.curve.sup_distance(StepFunction::zero()) == 0.0);
}

TEST_CASE("shubin-pastur validates its geometry") {
    CHECK_THROWS(shubin_pastur_mc(adjacency_model(1), 3, 1, 1, 0, {-3.0, 3.0}));
    CHECK_THROWS(shubin_pastur_mc(adjacency_model(1), 3, 50, 0, 0, {-3.0, 3.0}));
}

TEST_CASE("shubin-pastur agrees with the direct route on the free chain") {
    ModelHandle model = adjacency_model(1);
    IdsCurve mc = shubin_pastur_mc(model, 1, 50, 1, 0, {-2.5, 2.5});
    IdsCurve fv = finite_volume_ids(model, 0, 2000, {-2.5, 2.5});
    for (double lam = -1.9; lam < 1.95; lam += 0.13)
        CHECK(std::abs(mc.curve(lam) - fv.curve(lam)) < 0.05);
}

TEST_CASE("convergence report is deterministic and anchored at zero") {
    ModelHandle model = percolation_model(1, 0.5);
    ConvergenceReport a = convergence_report(model, {20, 40, 80}, 11, {-3.0, 3.0}, true);
    ConvergenceReport b = convergence_report(model, {20, 40, 80}, 11, {-3.0, 3.0}, true);
    REQUIRE(a.rows.size() == 3);
    CHECK(a.reference_side == 80);
    CHECK(a.rows.back().sup_distance == 0.0);
    CHECK(a.rows.back().weighted_distance == 0.0);
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(a.rows[i].sup_distance == b.rows[i].sup_distance);
        CHECK(a.rows[i].weighted_distance <= a.rows[i].sup_distance + 1e-15);
    }
    CHECK_THROWS(convergence_report(model, {10, 20}, 0, {-3.0, 3.0}, false));
}

TEST_CASE("free chain convergence decays like 1/M") {
    ConvergenceReport r = convergence_report(adjacency_model(1), {10, 20, 40, 160}, 0,
                                             {-3.0, 3.0}, false);
    REQUIRE(r.rows.size() == 4);
    CHECK(r.rows[0].sup_distance > r.rows[1].sup_distance);
    CHECK(r.rows[1].sup_distance > r.rows[2].sup_distance);
    CHECK(r.rows[0].sup_distance < 0.2);
}

TEST_CASE("jump detection") {
    IdsCurve c = finite_volume_ids(adjacency_model(1), 0, 400, {-3.0, 3.0});
    // the free chain has no macroscopic jumps: each is 1/400
    CHECK(detect_jumps(c, 0.05).empty());

    IdsCurve p = finite_volume_ids(percolation_model(1, 0.5), 5, 100000, {-3.0, 3.0});
    JumpList j = detect_jumps(p, 0.05);
    // size-2 clusters put macroscopic jumps at +-1 too; the one at 0 dominates
    REQUIRE(j.size() >= 1);
    const Jump& top = *std::max_element(
        j.begin(), j.end(), [](const Jump& a, const Jump& b) { return a.height < b.height; });
    CHECK(std::abs(top.location) < 1e-8);
    CHECK(std::abs(top.height - expected_jump_oracle(0.5)) < 0.01);
    CHECK(detect_jumps(p, 2.0).empty());
}

TEST_CASE("expected jump oracle") {
    CHECK(expected_jump_oracle(0.5) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(expected_jump_oracle(0.0) == doctest::Approx(1.0));
    CHECK(expected_jump_oracle(1.0) == doctest::Approx(0.0));
    CHECK_THROWS(expected_jump_oracle(-0.1));
    CHECK_THROWS(expected_jump_oracle(1.5));
}

TEST_CASE("per-realization jump is at least the cluster-count prediction") {
    ModelHandle model = percolation_model(1, 0.4);
    const int M = 5000;
    IdsCurve c = finite_volume_ids(model, 21, M, {-3.0, 3.0});
    Colouring col = model.comb_colouring.instantiate(1, 21);
    ClusterList cl = clusters(col, origin_cube(M, 1));
    std::int64_t zero_modes = cl.deleted_sites;
    for (const auto& comp : cl.components)
        if (comp.size() % 2 == 1) ++zero_modes;  // odd paths have a kernel vector
    double jump = c.curve(0.0) - c.curve(-1e-9);
    CHECK(jump >= double(zero_modes) / M - 1e-9);
}

TEST_CASE("curves are normalized ids candidates") {
    for (IdsCurve c : {finite_volume_ids(percolation_model(2, 0.6), 2, 12, {-5.0, 5.0}),
                       finite_volume_ids(kirchhoff_model(1), 0, 10, {0.0, 60.0})}) {
        CHECK(c.curve.is_non_decreasing());
        CHECK(c.curve.leading_value() == 0.0);
        CHECK(c.curve(c.window_lo - 1.0) >= 0.0);
    }
    // combinatorial curves are bounded by 1 at the right window edge
    IdsCurve c = finite_volume_ids(percolation_model(2, 0.6), 2, 12, {-5.0, 5.0});
    CHECK(c.curve(5.0) == doctest::Approx(1.0));
}

TEST_CASE("almost additivity") {
    // all-Dirichlet quantum model decouples exactly: discrepancy 0
    ModelHandle dirichlet = kirchhoff_model(1);
    dirichlet.quantum.bc = ColouringSpec::constant(0, Alphabet::bc_tags({BCTag::Dirichlet}));
    AdditivityReport rd = almost_additivity_check(dirichlet, 0, origin_cube(8, 1), 0);
    CHECK(rd.max_discrepancy == 0.0);
    CHECK(rd.ok());

    AdditivityReport r1 = almost_additivity_check(adjacency_model(1), 0, origin_cube(100, 1), 0);
    CHECK(r1.interface_size == 1);
    CHECK(r1.max_discrepancy <= 2.0);
    CHECK(r1.ok());

    AdditivityReport r2 = almost_additivity_check(percolation_model(2, 0.6), 9, origin_cube(20, 2), 1);
    CHECK(r2.interface_size == 20);
    CHECK(r2.ok());

    AdditivityReport rq = almost_additivity_check(kirchhoff_model(1), 0, origin_cube(12, 1), 0);
    CHECK(rq.interface_size == 1);
    CHECK(rq.ok());
}
