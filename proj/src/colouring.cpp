#include "ids/colouring.hpp"

#include <cmath>
#include <stdexcept>

namespace ids {

int Alphabet::size() const {
    switch (kind) {
        case PayloadKind::Potential: return static_cast<int>(potentials.size());
        case PayloadKind::BoundaryTag: return static_cast<int>(tags.size());
        case PayloadKind::LengthVector: return static_cast<int>(length_vectors.size());
        case PayloadKind::None: return bare_symbols;
    }
    return 0;
}

void Alphabet::validate() const {
    if (kind != PayloadKind::None && size() == 0)
        throw std::invalid_argument("alphabet must be non-empty");
    if (kind == PayloadKind::LengthVector) {
        for (const auto& lv : length_vectors)
            for (double l : lv)
                if (l < 0) throw std::invalid_argument("edge lengths must be non-negative");
    }
}

Alphabet Alphabet::none(int n) {
    if (n < 1 || n > 256) throw std::invalid_argument("alphabet size must be in [1, 256]");
    Alphabet a;
    a.bare_symbols = n;
    return a;
}

Alphabet Alphabet::site_percolation() {
    Alphabet a;
    a.kind = PayloadKind::Potential;
    a.potentials = {kDeleted, 0.0};
    return a;
}

Alphabet Alphabet::potentials_of(std::vector<double> v) {
    Alphabet a;
    a.kind = PayloadKind::Potential;
    a.potentials = std::move(v);
    a.validate();
    return a;
}

Alphabet Alphabet::bc_tags(std::vector<BCTag> t) {
    Alphabet a;
    a.kind = PayloadKind::BoundaryTag;
    a.tags = std::move(t);
    a.validate();
    return a;
}

Alphabet Alphabet::lengths(std::vector<std::array<double, kMaxDim>> ls) {
    Alphabet a;
    a.kind = PayloadKind::LengthVector;
    a.length_vectors = std::move(ls);
    a.validate();
    return a;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double site_uniform(std::uint64_t seed, const Site& s, int dim) {
    std::uint64_t h = splitmix64(seed);
    for (int j = 0; j < dim; ++j)
        h = splitmix64(h ^ splitmix64(static_cast<std::uint64_t>(s[j]) + static_cast<std::uint64_t>(j) * 0x632be59bd9b4e019ULL));
    return static_cast<double>(h >> 11) * 0x1.0p-53;
}

Colouring Colouring::constant(int dim, std::uint8_t symbol, Alphabet a) {
    Colouring c;
    c.rule_ = Rule::Constant;
    c.dim_ = dim;
    c.alphabet_ = std::move(a);
    c.constant_symbol_ = symbol;
    return c;
}

Colouring Colouring::periodic(int dim, int period, std::vector<std::uint8_t> cell, Alphabet a) {
    if (period < 1) throw std::invalid_argument("period must be positive");
    std::size_t expect = 1;
    for (int j = 0; j < dim; ++j) expect *= static_cast<std::size_t>(period);
    if (cell.size() != expect) throw std::invalid_argument("periodic cell table size must be period^d");
    Colouring c;
    c.rule_ = Rule::Periodic;
    c.dim_ = dim;
    c.alphabet_ = std::move(a);
    c.period_ = period;
    c.cell_ = std::move(cell);
    return c;
}

Colouring Colouring::visible_points(int dim, Alphabet a) {
    Colouring c;
    c.rule_ = Rule::VisiblePoints;
    c.dim_ = dim;
    c.alphabet_ = std::move(a);
    return c;
}

Colouring Colouring::iid(int dim, std::vector<double> probs, std::uint64_t seed, Alphabet a) {
    if (probs.empty()) throw std::invalid_argument("iid colouring needs a probability vector");
    double sum = 0;
    for (double p : probs) {
        if (p < 0) throw std::invalid_argument("probabilities must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("probabilities must sum to 1");
    Colouring c;
    c.rule_ = Rule::Iid;
    c.dim_ = dim;
    c.alphabet_ = std::move(a);
    c.seed_ = seed;
    c.cum_probs_.resize(probs.size());
    double acc = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        c.cum_probs_[i] = acc;
    }
    c.cum_probs_.back() = 1.0;
    return c;
}

Colouring Colouring::explicit_array(Cube region, std::vector<std::uint8_t> data, Alphabet a) {
    if (static_cast<std::int64_t>(data.size()) != region.volume())
        throw std::invalid_argument("explicit colouring data size must equal region volume");
    Colouring c;
    c.rule_ = Rule::Explicit;
    c.dim_ = region.dim;
    c.alphabet_ = std::move(a);
    c.region_ = region;
    c.data_ = std::move(data);
    return c;
}

std::uint8_t Colouring::at(const Site& query) const {
    Site s = query - shift_;
    switch (rule_) {
        case Rule::Constant:
            return constant_symbol_;
        case Rule::Periodic: {
            std::int64_t idx = 0;
            for (int j = 0; j < dim_; ++j) {
                Coord m = s[j] % period_;
                if (m < 0) m += period_;
                idx = idx * period_ + m;
            }
            return cell_[static_cast<std::size_t>(idx)];
        }
        case Rule::VisiblePoints:
            return visible_point(s, dim_) ? 1 : 0;
        case Rule::Iid: {
            double u = site_uniform(seed_, s, dim_);
            for (std::size_t i = 0; i < cum_probs_.size(); ++i)
                if (u < cum_probs_[i]) return static_cast<std::uint8_t>(i);
            return static_cast<std::uint8_t>(cum_probs_.size() - 1);
        }
        case Rule::Explicit:
            if (!region_.contains(s))
                throw std::out_of_range("explicit colouring queried outside its region");
            return data_[static_cast<std::size_t>(region_.index_of(s))];
    }
    throw std::logic_error("unreachable");
}

Colouring Colouring::shifted(const Site& t) const {
    Colouring c = *this;
    c.shift_ = c.shift_ + t;
    return c;
}

}  // namespace ids
