#include "ids/comb_model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <stdexcept>

namespace ids {

namespace {

bool is_occupied(const Colouring& c, const Site& s) {
    return std::isfinite(c.alphabet().potentials[c.at(s)]);
}

double potential_at(const Colouring& c, const Site& s) {
    return c.alphabet().potentials[c.at(s)];
}

void require_potential_payload(const Colouring& c) {
    if (c.alphabet().kind != PayloadKind::Potential)
        throw std::invalid_argument("model requires a potential-payload colouring");
}

std::array<int, kMaxDim> mod_cell(const Site& s, int period) {
    std::array<int, kMaxDim> cell{};
    for (int j = 0; j < kMaxDim; ++j) {
        Coord m = s[j] % period;
        if (m < 0) m += period;
        cell[static_cast<std::size_t>(j)] = static_cast<int>(m);
    }
    return cell;
}

}  // namespace

void CombModelSpec::validate() const {
    if (range < 1) throw std::invalid_argument("hopping range must be at least 1");
    if (fiber_dim < 1) throw std::invalid_argument("fiber dimension must be at least 1");
    if (kind != Kind::PeriodicBlock) {
        if (fiber_dim != 1) throw std::invalid_argument("adjacency/percolation models have fiber dimension 1");
        return;
    }
    if (period < 1) throw std::invalid_argument("period must be at least 1");
    const std::size_t fd = static_cast<std::size_t>(fiber_dim);
    std::map<std::pair<std::array<int, kMaxDim>, std::array<int, kMaxDim>>, const PeriodicBlock*> index;
    for (const auto& b : blocks) {
        if (b.mat.size() != fd * fd) throw std::invalid_argument("block matrix size must be fiber_dim^2");
        for (int h : b.hop)
            if (std::abs(h) > range) throw std::invalid_argument("block hop exceeds the hopping range");
        if (!index.emplace(std::make_pair(b.cell, b.hop), &b).second)
            throw std::invalid_argument("duplicate block for the same (cell, hop)");
    }
    for (const auto& b : blocks) {
        std::array<int, kMaxDim> tcell{};
        std::array<int, kMaxDim> thop{};
        for (int j = 0; j < kMaxDim; ++j) {
            int c = b.cell[static_cast<std::size_t>(j)] + b.hop[static_cast<std::size_t>(j)];
            c %= period;
            if (c < 0) c += period;
            tcell[static_cast<std::size_t>(j)] = c;
            thop[static_cast<std::size_t>(j)] = -b.hop[static_cast<std::size_t>(j)];
        }
        auto it = index.find(std::make_pair(tcell, thop));
        if (it == index.end())
            throw std::invalid_argument("block set is not transpose-symmetric: missing partner block");
        for (std::size_t a = 0; a < fd; ++a)
            for (std::size_t c = 0; c < fd; ++c)
                if (b.mat[a * fd + c] != it->second->mat[c * fd + a])
                    throw std::invalid_argument("block set is not transpose-symmetric");
    }
}

namespace {

/// Fills one hopping entry group; only lower-triangle elements are stored.
struct BandFiller {
    SymBand* m;
    void add(int r, int c, double v) {
        if (r >= c && v != 0.0) m->at(r, c) += v;
    }
};

int band_for_cube(const CombModelSpec& model, const Box& q) {
    std::int64_t delta = 0;
    std::int64_t stride = 1;
    for (int j = q.dim - 1; j >= 0; --j) {
        delta += static_cast<std::int64_t>(model.range) * stride;
        stride *= q.sides[static_cast<std::size_t>(j)];
    }
    std::int64_t bw = (delta + 1) * model.fiber_dim - 1;
    std::int64_t nm1 = q.volume() * model.fiber_dim - 1;
    return static_cast<int>(std::min(bw, std::max<std::int64_t>(nm1, 0)));
}

}  // namespace

SymBand assemble(const CombModelSpec& model, const Colouring& c, const Box& q,
                 std::int64_t size_cap) {
    model.validate();
    const std::int64_t n = q.volume() * model.fiber_dim;
    if (n > size_cap) throw ResourceCapError("assembled operator exceeds the size cap");
    SymBand m(static_cast<int>(n), band_for_cube(model, q));
    BandFiller fill{&m};

    switch (model.kind) {
        case CombModelSpec::Kind::Adjacency: {
            for (std::int64_t i = 0; i < q.volume(); ++i) {
                Site s = q.site_at(i);
                for (int j = 0; j < q.dim; ++j) {
                    Site t = s;
                    ++t[j];
                    if (!q.contains(t)) continue;
                    fill.add(static_cast<int>(q.index_of(t)), static_cast<int>(i), 1.0);
                }
            }
            break;
        }
        case CombModelSpec::Kind::SitePercolation: {
            require_potential_payload(c);
            for (std::int64_t i = 0; i < q.volume(); ++i) {
                Site s = q.site_at(i);
                if (!is_occupied(c, s)) continue;  // deleted: all-zero row/column
                fill.add(static_cast<int>(i), static_cast<int>(i), potential_at(c, s));
                for (int j = 0; j < q.dim; ++j) {
                    Site t = s;
                    ++t[j];
                    if (!q.contains(t) || !is_occupied(c, t)) continue;
                    fill.add(static_cast<int>(q.index_of(t)), static_cast<int>(i), 1.0);
                }
            }
            break;
        }
        case CombModelSpec::Kind::PeriodicBlock: {
            const int fd = model.fiber_dim;
            for (std::int64_t i = 0; i < q.volume(); ++i) {
                Site s = q.site_at(i);
                auto cell = mod_cell(s, model.period);
                for (const auto& b : model.blocks) {
                    if (b.cell != cell) continue;
                    Site t = s;
                    for (int j = 0; j < q.dim; ++j) t[j] += b.hop[static_cast<std::size_t>(j)];
                    bool hop_in_dim = true;
                    for (int j = q.dim; j < kMaxDim; ++j)
                        if (b.hop[static_cast<std::size_t>(j)] != 0) hop_in_dim = false;
                    if (!hop_in_dim || !q.contains(t)) continue;
                    const std::int64_t it = q.index_of(t);
                    for (int a = 0; a < fd; ++a)
                        for (int bb = 0; bb < fd; ++bb)
                            fill.add(static_cast<int>(it) * fd + a, static_cast<int>(i) * fd + bb,
                                     b.mat[static_cast<std::size_t>(a * fd + bb)]);
                }
            }
            break;
        }
    }
    return m;
}

SymBand assemble_on_sites(const CombModelSpec& model, const Colouring& c,
                          const std::vector<Site>& sites) {
    model.validate();
    if (sites.empty()) throw std::invalid_argument("site list must be non-empty");
    std::map<std::array<Coord, kMaxDim>, int> index;
    for (std::size_t i = 0; i < sites.size(); ++i)
        if (!index.emplace(sites[i].x, static_cast<int>(i)).second)
            throw std::invalid_argument("site list has duplicates");

    const int fd = model.fiber_dim;
    const int n = static_cast<int>(sites.size()) * fd;

    auto couplings = [&](auto&& emit) {
        for (std::size_t i = 0; i < sites.size(); ++i) {
            const Site& s = sites[i];
            if (model.kind == CombModelSpec::Kind::PeriodicBlock) {
                auto cell = mod_cell(s, model.period);
                for (const auto& b : model.blocks) {
                    if (b.cell != cell) continue;
                    Site t = s;
                    for (int j = 0; j < kMaxDim; ++j) t[j] += b.hop[static_cast<std::size_t>(j)];
                    auto it = index.find(t.x);
                    if (it == index.end()) continue;
                    emit(static_cast<int>(i), it->second, &b);
                }
            } else {
                for (int j = 0; j < c.dim(); ++j) {
                    for (int dir : {-1, 1}) {
                        Site t = s;
                        t[j] += dir;
                        auto it = index.find(t.x);
                        if (it == index.end()) continue;
                        emit(static_cast<int>(i), it->second, static_cast<const PeriodicBlock*>(nullptr));
                    }
                }
            }
        }
    };

    int bw = 0;
    couplings([&](int i, int j, const PeriodicBlock*) { bw = std::max(bw, std::abs(i - j)); });
    bw = (bw + 1) * fd - 1;
    SymBand m(n, std::min(bw, n - 1));
    BandFiller fill{&m};

    const bool percolation = model.kind == CombModelSpec::Kind::SitePercolation;
    if (percolation) require_potential_payload(c);
    for (std::size_t i = 0; i < sites.size(); ++i) {
        if (percolation) {
            if (!is_occupied(c, sites[i]))
                throw std::invalid_argument("cluster assembly given a deleted site");
            fill.add(static_cast<int>(i), static_cast<int>(i), potential_at(c, sites[i]));
        }
    }
    couplings([&](int i, int j, const PeriodicBlock* b) {
        if (b) {
            for (int a = 0; a < fd; ++a)
                for (int bb = 0; bb < fd; ++bb)
                    fill.add(j * fd + a, i * fd + bb, b->mat[static_cast<std::size_t>(a * fd + bb)]);
        } else {
            if (percolation && (!is_occupied(c, sites[static_cast<std::size_t>(i)]) ||
                                !is_occupied(c, sites[static_cast<std::size_t>(j)])))
                return;
            fill.add(j, i, 1.0);  // lower triangle only; the reverse pair fills nothing
        }
    });
    return m;
}

StepFunction counting_function(const SymBand& m, int dense_cap) {
    if (m.order() > dense_cap) throw ResourceCapError("matrix order exceeds the dense eigensolver cap");
    std::vector<double> eigs = symmetric_eigenvalues(m);
    return StepFunction::counting_from_sorted(eigs);
}

ClusterList clusters(const Colouring& c, const Box& q) {
    require_potential_payload(c);
    ClusterList out;
    std::vector<char> seen(static_cast<std::size_t>(q.volume()), 0);
    for (std::int64_t i = 0; i < q.volume(); ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        Site s0 = q.site_at(i);
        if (!is_occupied(c, s0)) {
            seen[static_cast<std::size_t>(i)] = 1;
            ++out.deleted_sites;
            continue;
        }
        // BFS over occupied nearest neighbours
        std::vector<Site> comp;
        std::deque<std::int64_t> queue{i};
        seen[static_cast<std::size_t>(i)] = 1;
        while (!queue.empty()) {
            std::int64_t cur = queue.front();
            queue.pop_front();
            Site s = q.site_at(cur);
            comp.push_back(s);
            for (int j = 0; j < q.dim; ++j) {
                for (int dir : {-1, 1}) {
                    Site t = s;
                    t[j] += dir;
                    if (!q.contains(t)) continue;
                    std::int64_t ti = q.index_of(t);
                    if (seen[static_cast<std::size_t>(ti)]) continue;
                    if (!is_occupied(c, t)) {
                        // deleted sites are tallied when their own loop index arrives
                        continue;
                    }
                    seen[static_cast<std::size_t>(ti)] = 1;
                    queue.push_back(ti);
                }
            }
        }
        std::sort(comp.begin(), comp.end(),
                  [&](const Site& a, const Site& b) { return q.index_of(a) < q.index_of(b); });
        out.components.push_back(std::move(comp));
    }
    return out;
}

StepFunction counting_via_clusters(const CombModelSpec& model, const Colouring& c, const Box& q,
                                   int cluster_dense_cap) {
    if (model.kind != CombModelSpec::Kind::SitePercolation)
        throw std::invalid_argument("cluster counting applies to site-percolation models");
    ClusterList cl = clusters(c, q);
    std::vector<Jump> atoms;
    if (cl.deleted_sites > 0)
        atoms.push_back({0.0, static_cast<double>(cl.deleted_sites)});
    for (const auto& comp : cl.components) {
        if (static_cast<int>(comp.size()) > cluster_dense_cap)
            throw ResourceCapError("cluster size exceeds the dense eigensolver cap");
        SymBand m = assemble_on_sites(model, c, comp);
        for (double ev : symmetric_eigenvalues(m)) atoms.push_back({ev, 1.0});
    }
    return StepFunction::from_atoms(std::move(atoms));
}

}  // namespace ids
