#pragma once
// Metric graphs over Z^d with Dirichlet/Neumann/Kirchhoff vertex conditions,
// optional random edge lengths, FEM eigenvalue counting, and spectral shift.

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "ids/colouring.hpp"
#include "ids/errors.hpp"
#include "ids/geometry.hpp"
#include "ids/step_function.hpp"
#include "ids/sym_band.hpp"

namespace ids {

/// One metric edge [init, init + e_axis]; each end carries its own
/// condition tag. Kirchhoff ends at a vertex share a single DOF; Neumann
/// ends get an independent DOF; Dirichlet ends are pinned to zero.
struct MetricEdge {
    Site init{};
    int axis = 0;
    double length = 1.0;
    BCTag bc_init = BCTag::Kirchhoff;
    BCTag bc_term = BCTag::Kirchhoff;
    double potential = 0.0;  // piecewise-constant per-edge potential
};

struct MetricRegion {
    int dim = 1;
    Box box{};
    std::vector<MetricEdge> edges;        // site row-major, axis minor
    std::int64_t volume = 0;              // |Q|
    std::int64_t boundary_vertices = 0;   // |V^partial_Q|

    std::int64_t edge_count() const { return static_cast<std::int64_t>(edges.size()); }
};

/// Per-vertex boundary conditions (site model): bc colouring carries BCTag
/// payload; boundary vertices of the cube are forced Dirichlet. The length
/// colouring (LengthVector payload, forward edges per vertex) is optional;
/// unit lengths otherwise.
MetricRegion build_region(const Colouring& bc, const Colouring* lengths, const Box& q);
inline MetricRegion build_region(const Colouring& bc, const Colouring* lengths, const Cube& q) {
    return build_region(bc, lengths, box_of(q));
}

/// Edge percolation: symbol at x is a d-bit mask; bit j set deletes edge
/// (x, j) with Dirichlet at both ends, otherwise Kirchhoff.
MetricRegion build_region_edge_percolation(const Colouring& masks, const Colouring* lengths,
                                           const Box& q);
inline MetricRegion build_region_edge_percolation(const Colouring& masks, const Colouring* lengths,
                                                  const Cube& q) {
    return build_region_edge_percolation(masks, lengths, box_of(q));
}

/// Site-edge percolation: symbol at x is a 2d-bit mask; bit j decouples the
/// forward edge (x, j) at x, bit d+j decouples the backward edge
/// (x - e_j, j) at x. Zero bits mean Kirchhoff.
MetricRegion build_region_site_edge_percolation(const Colouring& masks, const Colouring* lengths,
                                                const Box& q);
inline MetricRegion build_region_site_edge_percolation(const Colouring& masks,
                                                       const Colouring* lengths, const Cube& q) {
    return build_region_site_edge_percolation(masks, lengths, box_of(q));
}

/// Text lines `edge init_vertex axis length bc_init bc_term`.
void write_region_dump(const MetricRegion& r, std::ostream& os);

/// floor((l/pi) sqrt(max(lambda, 0))) — Dirichlet interval counting.
std::int64_t dirichlet_interval_count(double l, double lambda);

/// Counting function of the unit Dirichlet interval, truncated to lambda_max.
StepFunction dirichlet_interval_counting(double l, double lambda_max);

/// Linear-element Galerkin pencil: A (stiffness + potential) and B (mass).
struct FemElement {
    int dof_left = -1;   // -1: pinned to zero
    int dof_right = -1;
    double h = 0.0;
    std::size_t edge = 0;
};

struct FemPencil {
    SymBand stiffness;
    SymBand mass;
    std::vector<FemElement> elements;
    int order() const { return stiffness.order(); }
};

/// Meshes each edge with max(2, round(m * l_e)) linear elements.
FemPencil assemble_fem(const MetricRegion& r, int mesh_density);

inline constexpr int kQgComponentCap = 200'000;

/// Counting function of generalized eigenvalues of (A, B) up to lambda_max,
/// solved per connected component of the pencil's sparsity graph.
StepFunction qg_counting(const MetricRegion& r, int mesh_density, double lambda_max);

/// Eigenpairs up to lambda_max plus the B-weighted mass each eigenfunction
/// carries on the edges selected by `in_cell` (Shubin-Pastur localization).
struct LocalizedSpectrum {
    std::vector<double> values;
    std::vector<double> cell_mass;  // same length
};
LocalizedSpectrum qg_localized_spectrum(const MetricRegion& r, int mesh_density, double lambda_max,
                                        const std::function<bool(const MetricEdge&)>& in_cell);

/// xi = n - d|Q| n_D truncated to the working window.
StepFunction spectral_shift(const StepFunction& n, std::int64_t q_volume, int dim,
                            double lambda_max);

/// Exact spectra of small clusters (<= 12 edges) from the secular
/// determinant of per-edge trigonometric solutions; independent test oracle
/// for the FEM route.
std::vector<double> secular_cluster_oracle(const MetricRegion& r, double k_max,
                                           int k_grid_per_unit = 2000);

}  // namespace ids
