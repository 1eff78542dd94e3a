#pragma once
// Finite-volume restrictions of finite-range colouring-invariant operators
// on Z^d: assembly, eigenvalue counting, percolation clusters.

#include <cstdint>
#include <vector>

#include "ids/colouring.hpp"
#include "ids/eigen_solve.hpp"
#include "ids/errors.hpp"
#include "ids/geometry.hpp"
#include "ids/pattern.hpp"
#include "ids/step_function.hpp"
#include "ids/sym_band.hpp"

namespace ids {

inline constexpr int kDenseCap = 2000;
inline constexpr std::int64_t kAssemblySizeCap = 4'000'000;

/// One hopping block of a periodic operator: sites x with x mod N == cell
/// couple to x + hop through `mat` (fiber_dim x fiber_dim, row-major).
struct PeriodicBlock {
    std::array<int, kMaxDim> cell{};
    std::array<int, kMaxDim> hop{};
    std::vector<double> mat;
};

struct CombModelSpec {
    enum class Kind { Adjacency, SitePercolation, PeriodicBlock };
    Kind kind = Kind::Adjacency;
    int range = 1;      // hopping range R_fr
    int fiber_dim = 1;  // dim(H); 1 for adjacency/percolation
    int period = 1;     // PeriodicBlock only
    std::vector<PeriodicBlock> blocks;

    void validate() const;
};

/// Restriction of the operator to q, row-major site order, entries outside
/// q dropped. Deleted percolation sites keep an all-zero row/column.
SymBand assemble(const CombModelSpec& model, const Colouring& c, const Box& q,
                 std::int64_t size_cap = kAssemblySizeCap);
inline SymBand assemble(const CombModelSpec& model, const Colouring& c, const Cube& q,
                        std::int64_t size_cap = kAssemblySizeCap) {
    return assemble(model, c, box_of(q), size_cap);
}

/// Same operator restricted to an arbitrary ordered site list (used for
/// per-cluster assembly). Sites must be distinct.
SymBand assemble_on_sites(const CombModelSpec& model, const Colouring& c,
                          const std::vector<Site>& sites);

/// n(A) as a step function (dense eigensolve; order capped).
StepFunction counting_function(const SymBand& m, int dense_cap = kDenseCap);

struct ClusterList {
    std::vector<std::vector<Site>> components;  // row-major within component
    std::int64_t deleted_sites = 0;
};

/// Connected components of occupied (finite-potential) sites in q under the
/// nearest-neighbour relation.
ClusterList clusters(const Colouring& c, const Box& q);
inline ClusterList clusters(const Colouring& c, const Cube& q) { return clusters(c, box_of(q)); }

/// Counting function of a site-percolation restriction computed cluster by
/// cluster; deleted sites contribute zero modes. Exact block decoupling,
/// so this scales to cubes far past the dense cap.
StepFunction counting_via_clusters(const CombModelSpec& model, const Colouring& c, const Box& q,
                                   int cluster_dense_cap = kDenseCap);
inline StepFunction counting_via_clusters(const CombModelSpec& model, const Colouring& c,
                                          const Cube& q, int cluster_dense_cap = kDenseCap) {
    return counting_via_clusters(model, c, box_of(q), cluster_dense_cap);
}

}  // namespace ids
