#include "ids/metric_graph.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include "ids/eigen_solve.hpp"

namespace ids {

namespace {

constexpr double kPi = std::numbers::pi_v<double>;

bool vertex_interior(const Site& v, const Box& q) {
    if (!q.contains(v)) return false;
    for (int j = 0; j < q.dim; ++j) {
        Site w = v;
        --w[j];
        if (!q.contains(w)) return false;
    }
    return true;
}

double edge_length(const Colouring* lengths, const Site& x, int axis) {
    if (!lengths) return 1.0;
    if (lengths->alphabet().kind != PayloadKind::LengthVector)
        throw std::invalid_argument("length colouring must carry length-vector payload");
    double l = lengths->alphabet().length_vectors[lengths->at(x)][static_cast<std::size_t>(axis)];
    if (!(l > 0.0)) throw std::invalid_argument("edge lengths must be positive");
    return l;
}

/// Shared region skeleton: edges with lengths, vertex interior flags, and
/// the boundary-vertex tally; end tags are provided by the caller.
template <typename EndTags>
MetricRegion build_skeleton(const Colouring* lengths, const Box& q, EndTags&& tags) {
    MetricRegion r;
    r.dim = q.dim;
    r.box = q;
    r.volume = q.volume();
    std::map<std::array<Coord, kMaxDim>, bool> vertex_seen;
    for (std::int64_t i = 0; i < q.volume(); ++i) {
        Site x = q.site_at(i);
        for (int j = 0; j < q.dim; ++j) {
            MetricEdge e;
            e.init = x;
            e.axis = j;
            e.length = edge_length(lengths, x, j);
            Site t = x;
            ++t[j];
            const bool init_interior = vertex_interior(x, q);
            const bool term_interior = vertex_interior(t, q);
            e.bc_init = init_interior ? tags(e, x, true) : BCTag::Dirichlet;
            e.bc_term = term_interior ? tags(e, t, false) : BCTag::Dirichlet;
            r.edges.push_back(e);
            vertex_seen.emplace(x.x, init_interior);
            vertex_seen.emplace(t.x, term_interior);
        }
    }
    for (const auto& [v, interior] : vertex_seen)
        if (!interior) ++r.boundary_vertices;
    return r;
}

}  // namespace

MetricRegion build_region(const Colouring& bc, const Colouring* lengths, const Box& q) {
    if (bc.alphabet().kind != PayloadKind::BoundaryTag)
        throw std::invalid_argument("bc colouring must carry boundary-tag payload");
    return build_skeleton(lengths, q, [&](const MetricEdge&, const Site& v, bool) {
        return bc.alphabet().tags[bc.at(v)];
    });
}

MetricRegion build_region_edge_percolation(const Colouring& masks, const Colouring* lengths,
                                           const Box& q) {
    return build_skeleton(lengths, q, [&](const MetricEdge& e, const Site&, bool) {
        const unsigned mask = masks.at(e.init);
        return (mask >> e.axis) & 1u ? BCTag::Dirichlet : BCTag::Kirchhoff;
    });
}

MetricRegion build_region_site_edge_percolation(const Colouring& masks, const Colouring* lengths,
                                                const Box& q) {
    const int d = q.dim;
    return build_skeleton(lengths, q, [&](const MetricEdge& e, const Site& v, bool at_init) {
        const unsigned mask = masks.at(v);
        const int bit = at_init ? e.axis : d + e.axis;
        return (mask >> bit) & 1u ? BCTag::Dirichlet : BCTag::Kirchhoff;
    });
}

void write_region_dump(const MetricRegion& r, std::ostream& os) {
    auto tag_name = [](BCTag t) {
        switch (t) {
            case BCTag::Dirichlet: return "D";
            case BCTag::Neumann: return "N";
            case BCTag::Kirchhoff: return "K";
        }
        return "?";
    };
    char buf[160];
    for (std::size_t i = 0; i < r.edges.size(); ++i) {
        const MetricEdge& e = r.edges[i];
        std::string v = "(";
        for (int j = 0; j < r.dim; ++j) {
            if (j) v += ',';
            v += std::to_string(e.init[j]);
        }
        v += ')';
        std::snprintf(buf, sizeof buf, "%zu %s %d %.17g %s %s\n", i, v.c_str(), e.axis, e.length,
                      tag_name(e.bc_init), tag_name(e.bc_term));
        os << buf;
    }
}

std::int64_t dirichlet_interval_count(double l, double lambda) {
    if (!(l > 0.0)) throw std::invalid_argument("interval length must be positive");
    if (lambda <= 0.0) return 0;
    return static_cast<std::int64_t>(std::floor(l / kPi * std::sqrt(lambda)));
}

StepFunction dirichlet_interval_counting(double l, double lambda_max) {
    std::vector<double> eigs;
    for (std::int64_t k = 1;; ++k) {
        double ev = static_cast<double>(k) * kPi / l;
        ev *= ev;
        if (ev > lambda_max) break;
        eigs.push_back(ev);
    }
    return StepFunction::counting_from_sorted(eigs);
}

FemPencil assemble_fem(const MetricRegion& r, int mesh_density) {
    if (r.edges.empty()) throw std::invalid_argument("empty region");
    if (mesh_density < 2) throw std::invalid_argument("mesh density must be at least 2");

    // DOF layout: Kirchhoff ends share one DOF per vertex, Neumann ends get
    // their own, Dirichlet ends are pinned. Edge interiors are numbered in
    // edge order, which keeps chains banded.
    std::map<std::array<Coord, kMaxDim>, int> kirchhoff_dof;
    int next_dof = 0;
    auto end_dof = [&](BCTag tag, const Site& v) -> int {
        switch (tag) {
            case BCTag::Dirichlet: return -1;
            case BCTag::Neumann: return next_dof++;
            case BCTag::Kirchhoff: {
                auto [it, inserted] = kirchhoff_dof.try_emplace(v.x, next_dof);
                if (inserted) ++next_dof;
                return it->second;
            }
        }
        return -1;
    };

    FemPencil p;
    for (std::size_t ei = 0; ei < r.edges.size(); ++ei) {
        const MetricEdge& e = r.edges[ei];
        const int ne = std::max(2, static_cast<int>(std::lround(mesh_density * e.length)));
        const double h = e.length / ne;
        Site term = e.init;
        ++term[e.axis];
        int prev = end_dof(e.bc_init, e.init);
        for (int k = 1; k <= ne; ++k) {
            int cur = k == ne ? end_dof(e.bc_term, term) : next_dof++;
            p.elements.push_back({prev, cur, h, ei});
            prev = cur;
        }
    }

    int bw = 0;
    for (const FemElement& el : p.elements)
        if (el.dof_left >= 0 && el.dof_right >= 0)
            bw = std::max(bw, std::abs(el.dof_left - el.dof_right));
    if (next_dof == 0) throw std::invalid_argument("region has no degrees of freedom");

    p.stiffness = SymBand(next_dof, std::min(bw, next_dof - 1));
    p.mass = SymBand(next_dof, std::min(bw, next_dof - 1));
    auto add = [](SymBand& m, int i, int j, double v) {
        if (i < 0 || j < 0) return;
        if (i < j) std::swap(i, j);
        m.at(i, j) += v;
    };
    for (const FemElement& el : p.elements) {
        const double q = r.edges[el.edge].potential;
        const double kd = 1.0 / el.h + q * el.h / 3.0;   // diagonal: stiffness + potential mass
        const double ko = -1.0 / el.h + q * el.h / 6.0;  // off-diagonal
        add(p.stiffness, el.dof_left, el.dof_left, kd);
        add(p.stiffness, el.dof_right, el.dof_right, kd);
        add(p.stiffness, el.dof_left, el.dof_right, ko);
        add(p.mass, el.dof_left, el.dof_left, el.h / 3.0);
        add(p.mass, el.dof_right, el.dof_right, el.h / 3.0);
        add(p.mass, el.dof_left, el.dof_right, el.h / 6.0);
    }
    return p;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

struct PencilComponents {
    std::vector<std::vector<int>> dofs;       // global dofs per component, ascending
    std::vector<int> component_of;            // global dof -> component index
    std::vector<int> local_index;             // global dof -> index within component
};

PencilComponents split_components(const FemPencil& p) {
    const int n = p.order();
    UnionFind uf(n);
    for (const FemElement& el : p.elements)
        if (el.dof_left >= 0 && el.dof_right >= 0) uf.unite(el.dof_left, el.dof_right);
    std::map<int, int> root_to_comp;
    PencilComponents out;
    out.component_of.assign(static_cast<std::size_t>(n), -1);
    out.local_index.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < n; ++i) {
        int root = uf.find(i);
        auto [it, inserted] = root_to_comp.try_emplace(root, static_cast<int>(out.dofs.size()));
        if (inserted) out.dofs.emplace_back();
        out.component_of[static_cast<std::size_t>(i)] = it->second;
        out.local_index[static_cast<std::size_t>(i)] =
            static_cast<int>(out.dofs[static_cast<std::size_t>(it->second)].size());
        out.dofs[static_cast<std::size_t>(it->second)].push_back(i);
    }
    return out;
}

struct SubPencil {
    SymBand a, b;
};

SubPencil extract(const FemPencil& p, const PencilComponents& comps, int comp) {
    const auto& dofs = comps.dofs[static_cast<std::size_t>(comp)];
    const int n = static_cast<int>(dofs.size());
    if (n > kQgComponentCap) throw ResourceCapError("pencil component exceeds the size cap");
    int bw = 0;
    for (std::size_t i = 0; i < dofs.size(); ++i)
        for (int g = dofs[i] + 1; g <= dofs[i] + p.stiffness.bandwidth() && g < p.order(); ++g)
            if (comps.component_of[static_cast<std::size_t>(g)] == comp &&
                (p.stiffness.get(g, dofs[i]) != 0.0 || p.mass.get(g, dofs[i]) != 0.0))
                bw = std::max(bw, comps.local_index[static_cast<std::size_t>(g)] - static_cast<int>(i));
    SubPencil sp{SymBand(n, bw), SymBand(n, bw)};
    for (int i = 0; i < n; ++i) {
        int gi = dofs[static_cast<std::size_t>(i)];
        for (int j = std::max(0, i - bw); j <= i; ++j) {
            int gj = dofs[static_cast<std::size_t>(j)];
            double av = p.stiffness.get(gi, gj);
            double bv = p.mass.get(gi, gj);
            if (av != 0.0) sp.a.at(i, j) = av;
            if (bv != 0.0) sp.b.at(i, j) = bv;
        }
    }
    return sp;
}

}  // namespace

StepFunction qg_counting(const MetricRegion& r, int mesh_density, double lambda_max) {
    if (!(lambda_max > 0.0)) throw std::invalid_argument("lambda_max must be positive");
    if (r.edges.empty()) return StepFunction::zero();
    FemPencil p = assemble_fem(r, mesh_density);
    PencilComponents comps = split_components(p);
    std::vector<Jump> atoms;
    for (int c = 0; c < static_cast<int>(comps.dofs.size()); ++c) {
        SubPencil sp = extract(p, comps, c);
        BandGenEig eig = band_generalized_eig_upto(sp.a, sp.b, lambda_max, false);
        for (double ev : eig.values) atoms.push_back({ev, 1.0});
    }
    return StepFunction::from_atoms(std::move(atoms));
}

LocalizedSpectrum qg_localized_spectrum(const MetricRegion& r, int mesh_density, double lambda_max,
                                        const std::function<bool(const MetricEdge&)>& in_cell) {
    if (r.edges.empty()) return {};
    FemPencil p = assemble_fem(r, mesh_density);
    PencilComponents comps = split_components(p);

    std::vector<std::pair<double, double>> pairs;
    for (int c = 0; c < static_cast<int>(comps.dofs.size()); ++c) {
        SubPencil sp = extract(p, comps, c);
        BandGenEig eig = band_generalized_eig_upto(sp.a, sp.b, lambda_max, true);
        const int n = sp.a.order();
        for (std::size_t k = 0; k < eig.values.size(); ++k) {
            const double* v = eig.vectors.data() + k * static_cast<std::size_t>(n);
            double mass = 0.0;
            for (const FemElement& el : p.elements) {
                if (!in_cell(r.edges[el.edge])) continue;
                auto local = [&](int dof) -> double {
                    if (dof < 0 || comps.component_of[static_cast<std::size_t>(dof)] != c) return 0.0;
                    return v[comps.local_index[static_cast<std::size_t>(dof)]];
                };
                const double a = local(el.dof_left);
                const double b = local(el.dof_right);
                mass += el.h / 6.0 * (2.0 * a * a + 2.0 * b * b + 2.0 * a * b);
            }
            pairs.emplace_back(eig.values[k], mass);
        }
    }
    std::sort(pairs.begin(), pairs.end());
    LocalizedSpectrum out;
    for (auto& [ev, mass] : pairs) {
        out.values.push_back(ev);
        out.cell_mass.push_back(mass);
    }
    return out;
}

StepFunction spectral_shift(const StepFunction& n, std::int64_t q_volume, int dim,
                            double lambda_max) {
    StepFunction nd = dirichlet_interval_counting(1.0, lambda_max);
    return StepFunction::combine(1.0, n, -static_cast<double>(dim) * static_cast<double>(q_volume),
                                 nd, 0.0);
}

namespace {

/// Secular matrix M(k): rows are boundary/continuity conditions, columns
/// are (a_e, b_e) pairs with f_e(t) = a sin(kt) + b cos(kt).
struct SecularSystem {
    const MetricRegion* region;
    int n;  // 2 * edges
    struct VertexEnds {
        std::vector<std::pair<std::size_t, bool>> ends;  // (edge, at_init)
        std::vector<BCTag> tags;
    };
    std::vector<VertexEnds> vertices;

    explicit SecularSystem(const MetricRegion& r) : region(&r), n(2 * static_cast<int>(r.edges.size())) {
        std::map<std::array<Coord, kMaxDim>, std::size_t> vmap;
        auto slot = [&](const Site& v) -> VertexEnds& {
            auto [it, inserted] = vmap.try_emplace(v.x, vertices.size());
            if (inserted) vertices.emplace_back();
            return vertices[it->second];
        };
        for (std::size_t e = 0; e < r.edges.size(); ++e) {
            Site term = r.edges[e].init;
            ++term[r.edges[e].axis];
            auto& vi = slot(r.edges[e].init);
            vi.ends.emplace_back(e, true);
            vi.tags.push_back(r.edges[e].bc_init);
            auto& vt = slot(term);
            vt.ends.emplace_back(e, false);
            vt.tags.push_back(r.edges[e].bc_term);
        }
    }

    /// Column-major n x n matrix of the linear system at wavenumber k.
    std::vector<double> matrix(double k) const {
        std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
        auto set = [&](int row, int col, double v) {
            m[static_cast<std::size_t>(col) * static_cast<std::size_t>(n) + static_cast<std::size_t>(row)] = v;
        };
        // value and outward derivative (divided by k) coefficients of (a, b)
        auto value_coeff = [&](std::size_t e, bool at_init) -> std::pair<double, double> {
            if (at_init) return {0.0, 1.0};
            double kl = k * region->edges[e].length;
            return {std::sin(kl), std::cos(kl)};
        };
        auto deriv_coeff = [&](std::size_t e, bool at_init) -> std::pair<double, double> {
            if (at_init) return {1.0, 0.0};
            double kl = k * region->edges[e].length;
            return {-std::cos(kl), std::sin(kl)};
        };
        int row = 0;
        for (const auto& v : vertices) {
            std::vector<std::size_t> kirchhoff;
            for (std::size_t i = 0; i < v.ends.size(); ++i) {
                auto [e, at_init] = v.ends[i];
                const int ca = static_cast<int>(2 * e);
                const int cb = ca + 1;
                switch (v.tags[i]) {
                    case BCTag::Dirichlet: {
                        auto [va, vb] = value_coeff(e, at_init);
                        set(row, ca, va);
                        set(row, cb, vb);
                        ++row;
                        break;
                    }
                    case BCTag::Neumann: {
                        auto [da, db] = deriv_coeff(e, at_init);
                        set(row, ca, da);
                        set(row, cb, db);
                        ++row;
                        break;
                    }
                    case BCTag::Kirchhoff:
                        kirchhoff.push_back(i);
                        break;
                }
            }
            if (kirchhoff.empty()) continue;
            // continuity against the first Kirchhoff end
            auto [e0, init0] = v.ends[kirchhoff[0]];
            auto [v0a, v0b] = value_coeff(e0, init0);
            for (std::size_t i = 1; i < kirchhoff.size(); ++i) {
                auto [e, at_init] = v.ends[kirchhoff[i]];
                auto [va, vb] = value_coeff(e, at_init);
                set(row, static_cast<int>(2 * e0), v0a);
                set(row, static_cast<int>(2 * e0 + 1), v0b);
                set(row, static_cast<int>(2 * e), -va);
                set(row, static_cast<int>(2 * e + 1), -vb);
                ++row;
            }
            // outward derivative sum
            for (std::size_t i : kirchhoff) {
                auto [e, at_init] = v.ends[i];
                auto [da, db] = deriv_coeff(e, at_init);
                m[static_cast<std::size_t>(2 * e) * static_cast<std::size_t>(n) + static_cast<std::size_t>(row)] += da;
                m[static_cast<std::size_t>(2 * e + 1) * static_cast<std::size_t>(n) + static_cast<std::size_t>(row)] += db;
            }
            ++row;
        }
        if (row != n) throw std::logic_error("secular system is not square");
        return m;
    }

    /// Sign of det M(k) (0 if numerically singular pivot encountered).
    int det_sign(double k) const {
        std::vector<double> m = matrix(k);
        std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
        lapack_int info = LAPACKE_dgetrf(LAPACK_COL_MAJOR, n, n, m.data(), n, ipiv.data());
        if (info != 0) return 0;
        int sign = 1;
        for (int i = 0; i < n; ++i) {
            double d = m[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(i)];
            if (d < 0) sign = -sign;
            if (ipiv[static_cast<std::size_t>(i)] != i + 1) sign = -sign;
        }
        return sign;
    }

    /// Nullity of M(k) by singular-value thresholding.
    int nullity(double k) const {
        std::vector<double> m = matrix(k);
        std::vector<double> s(static_cast<std::size_t>(n));
        std::vector<double> superb(static_cast<std::size_t>(n));
        lapack_int info = LAPACKE_dgesvd(LAPACK_COL_MAJOR, 'N', 'N', n, n, m.data(), n, s.data(),
                                         nullptr, 1, nullptr, 1, superb.data());
        if (info != 0) throw NumericalError("dgesvd failed on the secular matrix");
        const double tol = std::max(s[0], 1.0) * 1e-8;
        int count = 0;
        for (double sv : s)
            if (sv < tol) ++count;
        return count;
    }
};

}  // namespace

std::vector<double> secular_cluster_oracle(const MetricRegion& r, double k_max,
                                           int k_grid_per_unit) {
    if (r.edges.size() > 12) throw std::invalid_argument("secular oracle clusters are capped at 12 edges");
    if (r.edges.empty()) return {};
    SecularSystem sys(r);

    // resonance candidates k = j*pi/l_e
    std::vector<double> candidates;
    for (const MetricEdge& e : r.edges)
        for (int j = 1; static_cast<double>(j) * kPi / e.length <= k_max; ++j)
            candidates.push_back(static_cast<double>(j) * kPi / e.length);

    // sign-change bisection on the determinant
    const double k_lo = 1e-4;
    const int steps = std::max(16, static_cast<int>(std::ceil((k_max - k_lo) * k_grid_per_unit)));
    double prev_k = k_lo;
    int prev_sign = sys.det_sign(prev_k);
    for (int i = 1; i <= steps; ++i) {
        double k = k_lo + (k_max - k_lo) * static_cast<double>(i) / steps;
        int sign = sys.det_sign(k);
        if (sign != 0 && prev_sign != 0 && sign != prev_sign) {
            double lo = prev_k, hi = k;
            for (int it = 0; it < 80 && hi - lo > 1e-13 * std::max(1.0, hi); ++it) {
                double mid = 0.5 * (lo + hi);
                int ms = sys.det_sign(mid);
                if (ms == 0) {
                    lo = hi = mid;
                    break;
                }
                (ms == prev_sign ? lo : hi) = mid;
            }
            candidates.push_back(0.5 * (lo + hi));
        }
        if (sign != 0) {
            prev_sign = sign;
            prev_k = k;
        }
    }

    std::sort(candidates.begin(), candidates.end());
    std::vector<double> eigen_k;
    const double dedupe = 1e-7;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        if (!eigen_k.empty() && candidates[i] - eigen_k.back() < dedupe) continue;
        if (i + 1 < candidates.size() && candidates[i + 1] - candidates[i] < dedupe) continue;
        eigen_k.push_back(candidates[i]);
    }

    std::vector<double> eigs;
    for (double k : eigen_k) {
        int mult = sys.nullity(k);
        for (int j = 0; j < mult; ++j) eigs.push_back(k * k);
    }
    std::sort(eigs.begin(), eigs.end());
    return eigs;
}

}  // namespace ids
