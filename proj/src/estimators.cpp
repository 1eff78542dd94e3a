#include "ids/estimators.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

namespace ids {

Colouring ColouringSpec::instantiate(int dim, std::uint64_t seed) const {
    switch (rule) {
        case Colouring::Rule::Constant:
            return Colouring::constant(dim, constant_symbol, alphabet);
        case Colouring::Rule::Periodic:
            return Colouring::periodic(dim, period, cell, alphabet);
        case Colouring::Rule::VisiblePoints:
            return Colouring::visible_points(dim, alphabet);
        case Colouring::Rule::Iid:
            return Colouring::iid(dim, probs, seed, alphabet);
        case Colouring::Rule::Explicit:
            break;
    }
    throw std::invalid_argument("explicit colourings have no seeded recipe");
}

ColouringSpec ColouringSpec::constant(std::uint8_t symbol, Alphabet a) {
    ColouringSpec s;
    s.rule = Colouring::Rule::Constant;
    s.constant_symbol = symbol;
    s.alphabet = std::move(a);
    return s;
}

ColouringSpec ColouringSpec::iid(std::vector<double> probs, Alphabet a) {
    ColouringSpec s;
    s.rule = Colouring::Rule::Iid;
    s.probs = std::move(probs);
    s.alphabet = std::move(a);
    return s;
}

ColouringSpec ColouringSpec::periodic(int period, std::vector<std::uint8_t> cell, Alphabet a) {
    ColouringSpec s;
    s.rule = Colouring::Rule::Periodic;
    s.period = period;
    s.cell = std::move(cell);
    s.alphabet = std::move(a);
    return s;
}

ColouringSpec ColouringSpec::visible(Alphabet a) {
    ColouringSpec s;
    s.rule = Colouring::Rule::VisiblePoints;
    s.alphabet = std::move(a);
    return s;
}

double QuantumModelSpec::max_edge_length() const {
    if (!lengths) return 1.0;
    double m = 0.0;
    for (const auto& lv : lengths->alphabet.length_vectors)
        for (double l : lv)
            if (l > m) m = l;
    return m > 0.0 ? m : 1.0;
}

namespace {

MetricRegion region_from_colourings(const QuantumModelSpec& spec, const Colouring& bc,
                                    const Colouring* lengths, const Box& q) {
    switch (spec.bc_model) {
        case QuantumModelSpec::BcModel::PerVertex:
            return build_region(bc, lengths, q);
        case QuantumModelSpec::BcModel::EdgePercolation:
            return build_region_edge_percolation(bc, lengths, q);
        case QuantumModelSpec::BcModel::SiteEdgePercolation:
            return build_region_site_edge_percolation(bc, lengths, q);
    }
    throw std::logic_error("unreachable");
}

}  // namespace

MetricRegion QuantumModelSpec::region(int dim, std::uint64_t seed, const Box& q) const {
    // independent sub-streams for the two random ingredients
    Colouring bc_col = bc.instantiate(dim, derive_seed(seed, 0));
    std::optional<Colouring> len_col;
    if (lengths) len_col = lengths->instantiate(dim, derive_seed(seed, 1));
    return region_from_colourings(*this, bc_col, len_col ? &*len_col : nullptr, q);
}

std::pair<double, double> ModelHandle::default_window() const {
    if (kind == Kind::Quantum) return {0.0, 100.0};
    double max_pot = 0.0;
    for (double v : comb_colouring.alphabet.potentials)
        if (std::isfinite(v) && v > max_pot) max_pot = v;
    double r = 2.0 * dim + 1.0;
    return {-r, r + max_pot};
}

namespace {

/// Unnormalized eigenvalue counting function on a box; quantum counts are
/// truncated at lambda_max.
StepFunction raw_counting(const ModelHandle& model, std::uint64_t seed, const Box& q,
                          double lambda_max) {
    if (model.kind == ModelHandle::Kind::Combinatorial) {
        Colouring c = model.comb_colouring.instantiate(model.dim, seed);
        if (model.comb.kind == CombModelSpec::Kind::SitePercolation)
            return counting_via_clusters(model.comb, c, q);
        return counting_function(assemble(model.comb, c, q));
    }
    MetricRegion r = model.quantum.region(model.dim, seed, q);
    return qg_counting(r, model.quantum.mesh, lambda_max);
}

void require_window(std::pair<double, double> w) {
    if (!(w.first < w.second)) throw std::invalid_argument("window must satisfy a < b");
}

/// Appends the atoms of f, scaled by w, to out.
void harvest_atoms(const StepFunction& f, double w, std::vector<Jump>& out) {
    const auto& bp = f.breakpoints();
    const auto& val = f.values();
    for (std::size_t i = 0; i < bp.size(); ++i) {
        double h = (val[i + 1] - val[i]) * w;
        if (h != 0.0) out.push_back({bp[i], h});
    }
}

}  // namespace

IdsCurve finite_volume_ids(const ModelHandle& model, std::uint64_t seed, int side,
                           std::pair<double, double> window) {
    if (side < 2) throw std::invalid_argument("side must be at least 2");
    require_window(window);
    Box q = box_of(origin_cube(side, model.dim));
    StepFunction n = raw_counting(model, seed, q, window.second);
    IdsCurve out;
    out.curve = n.scaled(1.0 / model.normalization(q.volume()))
                    .restrict_to(window.first, window.second);
    out.estimator = "finite_volume";
    out.seed = seed;
    out.volume = q.volume();
    out.side = side;
    out.window_lo = window.first;
    out.window_hi = window.second;
    return out;
}

IdsCurve pattern_estimator(const ModelHandle& model, const FrequencyTable& freq,
                           std::pair<double, double> window) {
    if (freq.dim != model.dim) throw std::invalid_argument("frequency table dimension mismatch");
    require_window(window);
    const Cube pq = origin_cube(freq.side, model.dim);
    const double norm = model.normalization(pq.volume());

    const Alphabet& alpha = model.kind == ModelHandle::Kind::Combinatorial
                                ? model.comb_colouring.alphabet
                                : model.quantum.bc.alphabet;
    std::optional<Colouring> len_col;
    if (model.kind == ModelHandle::Kind::Quantum && model.quantum.lengths) {
        if (model.quantum.lengths->needs_seed())
            throw std::invalid_argument("pattern estimation requires deterministic edge lengths");
        len_col = model.quantum.lengths->instantiate(model.dim, 0);
    }

    // fixed key order keeps the floating-point accumulation deterministic
    std::vector<std::string> keys;
    keys.reserve(freq.counts.size());
    for (const auto& [key, count] : freq.counts) keys.push_back(key);
    std::sort(keys.begin(), keys.end());

    std::vector<Jump> atoms;
    for (const std::string& key : keys) {
        Pattern p = decode(key, freq.dim, freq.side);
        for (std::uint8_t sym : p.colours)
            if (sym >= static_cast<std::uint8_t>(alpha.size()))
                throw std::invalid_argument("pattern symbol outside the model alphabet");
        Colouring c = Colouring::explicit_array(pq, p.colours, alpha);
        StepFunction n =
            model.kind == ModelHandle::Kind::Combinatorial
                ? (model.comb.kind == CombModelSpec::Kind::SitePercolation
                       ? counting_via_clusters(model.comb, c, box_of(pq))
                       : counting_function(assemble(model.comb, c, pq)))
                : qg_counting(region_from_colourings(model.quantum, c,
                                                     len_col ? &*len_col : nullptr, box_of(pq)),
                              model.quantum.mesh, window.second);
        harvest_atoms(n, freq.frequency(key) / norm, atoms);
    }

    IdsCurve out;
    out.curve = StepFunction::from_atoms(std::move(atoms))
                    .restrict_to(window.first, window.second);
    out.estimator = "pattern";
    out.volume = freq.window_volume;
    out.side = freq.side;
    out.window_lo = window.first;
    out.window_hi = window.second;
    return out;
}

IdsCurve shubin_pastur_mc(const ModelHandle& model, int cell_side, int buffer_radius,
                          int samples, std::uint64_t seed, std::pair<double, double> window) {
    if (samples < 1) throw std::invalid_argument("at least one sample is required");
    if (cell_side < 1) throw std::invalid_argument("cell side must be positive");
    const int min_buf = model.kind == ModelHandle::Kind::Combinatorial ? 2 * model.comb.range : 2;
    if (buffer_radius < min_buf)
        throw std::invalid_argument("buffer radius must cover twice the interaction range");
    require_window(window);

    Box big;
    big.dim = model.dim;
    for (int j = 0; j < model.dim; ++j) {
        big.anchor[j] = -buffer_radius;
        big.sides[static_cast<std::size_t>(j)] = cell_side + 2 * buffer_radius;
    }
    const Cube cell = origin_cube(cell_side, model.dim);

    std::vector<Jump> atoms;
    for (int i = 0; i < samples; ++i) {
        const std::uint64_t s = derive_seed(seed, static_cast<std::uint64_t>(i));
        if (model.kind == ModelHandle::Kind::Combinatorial) {
            Colouring c = model.comb_colouring.instantiate(model.dim, s);
            SymBand m = assemble(model.comb, c, big);
            if (m.order() > kDenseCap)
                throw ResourceCapError("buffered cube exceeds the dense eigensolver cap");
            DenseEig eig = symmetric_eig(m);
            const int n = m.order();
            const int fd = model.comb.fiber_dim;
            const double w = 1.0 / (static_cast<double>(cell.volume()) * samples);
            for (int k = 0; k < n; ++k) {
                const double* v = eig.vectors.data() + static_cast<std::size_t>(k) * n;
                double mass = 0.0;
                for (std::int64_t ci = 0; ci < cell.volume(); ++ci) {
                    std::int64_t gi = big.index_of(cell.site_at(ci));
                    for (int f = 0; f < fd; ++f) {
                        double x = v[gi * fd + f];
                        mass += x * x;
                    }
                }
                if (mass > 0.0) atoms.push_back({eig.values[static_cast<std::size_t>(k)], mass * w});
            }
        } else {
            MetricRegion r = model.quantum.region(model.dim, s, big);
            auto in_cell = [&](const MetricEdge& e) { return cell.contains(e.init); };
            double cell_length = 0.0;
            for (const MetricEdge& e : r.edges)
                if (in_cell(e)) cell_length += e.length;
            LocalizedSpectrum ls =
                qg_localized_spectrum(r, model.quantum.mesh, window.second, in_cell);
            const double w = 1.0 / (cell_length * samples);
            for (std::size_t k = 0; k < ls.values.size(); ++k)
                if (ls.cell_mass[k] > 0.0) atoms.push_back({ls.values[k], ls.cell_mass[k] * w});
        }
    }

    IdsCurve out;
    out.curve = StepFunction::from_atoms(std::move(atoms))
                    .restrict_to(window.first, window.second);
    out.estimator = "shubin_pastur";
    out.seed = seed;
    out.volume = big.volume();
    out.side = cell_side;
    out.window_lo = window.first;
    out.window_hi = window.second;
    return out;
}

ConvergenceReport convergence_report(const ModelHandle& model, const std::vector<int>& sides,
                                     std::uint64_t seed, std::pair<double, double> window,
                                     bool weighted) {
    if (sides.size() < 3) throw std::invalid_argument("at least three sides are required");
    if (!std::is_sorted(sides.begin(), sides.end()))
        throw std::invalid_argument("sides must be ascending");
    require_window(window);

    std::vector<IdsCurve> curves;
    std::vector<double> seconds;
    for (int m : sides) {
        auto t0 = std::chrono::steady_clock::now();
        curves.push_back(finite_volume_ids(model, seed, m, window));
        auto t1 = std::chrono::steady_clock::now();
        seconds.push_back(std::chrono::duration<double>(t1 - t0).count());
    }

    ConvergenceReport rep;
    rep.reference_side = sides.back();
    const StepFunction& ref = curves.back().curve;
    for (std::size_t i = 0; i < sides.size(); ++i) {
        ConvergenceRow row;
        row.side = sides[i];
        row.seconds = seconds[i];
        if (i + 1 < sides.size()) {
            row.sup_distance = curves[i].curve.sup_distance(ref, window.first, window.second);
            if (weighted) row.weighted_distance = curves[i].curve.weighted_sup_distance(ref);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

JumpList detect_jumps(const IdsCurve& curve, double min_height) {
    // Coalesce breakpoints within relative tolerance: eigensolver noise
    // splits one spectral atom across adjacent locations.
    JumpList raw = curve.curve.jumps(1e-300);
    JumpList out;
    std::size_t i = 0;
    while (i < raw.size()) {
        std::size_t j = i, best = i;
        double height = raw[i].height;
        while (j + 1 < raw.size() &&
               raw[j + 1].location - raw[j].location <=
                   1e-8 * std::max(1.0, std::abs(raw[j].location))) {
            ++j;
            height += raw[j].height;
            if (raw[j].height > raw[best].height) best = j;
        }
        if (height >= min_height) out.push_back({raw[best].location, height});
        i = j + 1;
    }
    return out;
}

double expected_jump_oracle(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0, 1]");
    return (1.0 - p) + p * (1.0 - p) / (1.0 + p);
}

AdditivityReport almost_additivity_check(const ModelHandle& model, std::uint64_t seed,
                                         const Cube& q, int axis) {
    if (axis < 0 || axis >= q.dim) throw std::invalid_argument("split axis out of range");
    if (q.side < 2) throw std::invalid_argument("cube is too small to split");
    const Box whole = box_of(q);
    auto [lo, hi] = split_box(whole, axis, q.side / 2);

    const double lambda_max = model.default_window().second;
    StepFunction n = raw_counting(model, seed, whole, lambda_max);
    StepFunction n1 = raw_counting(model, seed, lo, lambda_max);
    StepFunction n2 = raw_counting(model, seed, hi, lambda_max);
    StepFunction sum = StepFunction::combine(1.0, n1, 1.0, n2, 0.0);

    AdditivityReport rep;
    rep.interface_size = whole.volume() / whole.sides[static_cast<std::size_t>(axis)];
    if (model.kind == ModelHandle::Kind::Combinatorial) {
        rep.bound = 2.0 * model.comb.fiber_dim * model.comb.range *
                    static_cast<double>(rep.interface_size);
        rep.max_discrepancy = n.sup_distance(sum);
    } else {
        rep.bound = 4.0 * static_cast<double>(rep.interface_size);
        rep.max_discrepancy = n.sup_distance(sum, 0.0, lambda_max);
    }
    return rep;
}

}  // namespace ids
