#pragma once
// IDS estimators: direct finite-volume limits, the pattern-frequency
// formula, the localized-trace Monte-Carlo formula, convergence reports,
// jump detection, and the almost-additivity diagnostic.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ids/colouring.hpp"
#include "ids/comb_model.hpp"
#include "ids/errors.hpp"
#include "ids/geometry.hpp"
#include "ids/metric_graph.hpp"
#include "ids/pattern.hpp"
#include "ids/step_function.hpp"

namespace ids {

/// Recipe for a colouring; stochastic rules consume a seed at
/// instantiation time, deterministic rules ignore it.
struct ColouringSpec {
    Colouring::Rule rule = Colouring::Rule::Constant;
    Alphabet alphabet;
    std::uint8_t constant_symbol = 0;
    int period = 1;
    std::vector<std::uint8_t> cell;  // Periodic
    std::vector<double> probs;       // Iid

    bool needs_seed() const { return rule == Colouring::Rule::Iid; }
    Colouring instantiate(int dim, std::uint64_t seed) const;

    static ColouringSpec constant(std::uint8_t symbol, Alphabet a);
    static ColouringSpec iid(std::vector<double> probs, Alphabet a);
    static ColouringSpec periodic(int period, std::vector<std::uint8_t> cell, Alphabet a);
    static ColouringSpec visible(Alphabet a);
};

/// Laplacian on a metric graph over Z^d: vertex conditions come from a
/// colouring (per-vertex tags or percolation masks), lengths optionally
/// from a second one. Sub-seeds keep the two streams independent.
struct QuantumModelSpec {
    enum class BcModel { PerVertex, EdgePercolation, SiteEdgePercolation };
    BcModel bc_model = BcModel::PerVertex;
    ColouringSpec bc;
    std::optional<ColouringSpec> lengths;
    int mesh = 100;

    bool needs_seed() const {
        return bc.needs_seed() || (lengths && lengths->needs_seed());
    }
    double max_edge_length() const;  // l_+
    MetricRegion region(int dim, std::uint64_t seed, const Box& q) const;
};

struct ModelHandle {
    enum class Kind { Combinatorial, Quantum };
    Kind kind = Kind::Combinatorial;
    int dim = 1;

    // Kind::Combinatorial
    CombModelSpec comb;
    ColouringSpec comb_colouring;

    // Kind::Quantum
    QuantumModelSpec quantum;

    bool needs_seed() const {
        return kind == Kind::Combinatorial ? comb_colouring.needs_seed() : quantum.needs_seed();
    }
    /// Per-vertex |Q| (combinatorial) or per-edge d|Q| (quantum).
    double normalization(std::int64_t volume) const {
        return kind == Kind::Combinatorial ? static_cast<double>(volume)
                                           : static_cast<double>(dim) * static_cast<double>(volume);
    }
    std::pair<double, double> default_window() const;
};

struct IdsCurve {
    StepFunction curve;
    std::string estimator;
    std::uint64_t seed = 0;
    std::int64_t volume = 0;
    int side = 0;
    double window_lo = 0.0;
    double window_hi = 0.0;
};

/// Counting function of the restriction to C_M divided by the model's
/// normalization, truncated to [a, b].
IdsCurve finite_volume_ids(const ModelHandle& model, std::uint64_t seed, int side,
                           std::pair<double, double> window);

/// Pattern-frequency formula: sum over stored patterns P of
/// nu_P * n(H restricted to P with boundary truncation) / |C_M|.
IdsCurve pattern_estimator(const ModelHandle& model, const FrequencyTable& freq,
                           std::pair<double, double> window);

/// Localized-trace Monte-Carlo estimator: average over samples of the
/// spectral-projection mass carried by the central cell of a buffered cube.
IdsCurve shubin_pastur_mc(const ModelHandle& model, int cell_side, int buffer_radius,
                          int samples, std::uint64_t seed, std::pair<double, double> window);

struct ConvergenceRow {
    int side = 0;
    double sup_distance = 0.0;
    double weighted_distance = 0.0;
    double seconds = 0.0;
};

/// Distances of each curve to the largest-side curve (a Cauchy-style
/// surrogate for the unknown limit). The reference row closes the list
/// with zero distances.
struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;
    int reference_side = 0;
};

ConvergenceReport convergence_report(const ModelHandle& model, const std::vector<int>& sides,
                                     std::uint64_t seed, std::pair<double, double> window,
                                     bool weighted);

JumpList detect_jumps(const IdsCurve& curve, double min_height);

/// d=1 site percolation with extension by zero: IDS jump at 0 equals
/// (1-p) + p(1-p)/(1+p) — deleted sites plus odd-length path clusters.
double expected_jump_oracle(double p);

struct AdditivityReport {
    double max_discrepancy = 0.0;  // sup_lambda |n_Q - n_Q1 - n_Q2|, unnormalized
    double bound = 0.0;            // C_b * interface size
    std::int64_t interface_size = 0;
    bool ok() const { return max_discrepancy <= bound + 1e-9; }
};

/// Splits the cube in half along `axis` and verifies the counting-function
/// discrepancy bound C_b * (cross-section size), with C_b = 2 dim(H) R_fr
/// for combinatorial models and 4 for quantum ones.
AdditivityReport almost_additivity_check(const ModelHandle& model, std::uint64_t seed,
                                         const Cube& q, int axis);

}  // namespace ids
