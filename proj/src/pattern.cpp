#include "ids/pattern.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace ids {

Pattern restrict_to(const Colouring& c, const Cube& q) {
    Pattern p;
    p.dim = q.dim;
    p.side = q.side;
    p.colours.resize(static_cast<std::size_t>(q.volume()));
    for (std::int64_t i = 0; i < q.volume(); ++i)
        p.colours[static_cast<std::size_t>(i)] = c.at(q.site_at(i));
    return p;
}

Pattern apply_point_group(const Pattern& p, const PointGroupElement& g) {
    Pattern out;
    out.dim = p.dim;
    out.side = p.side;
    out.colours.assign(p.colours.size(), 0);
    const Cube cell = origin_cube(p.side, p.dim);
    for (std::int64_t i = 0; i < cell.volume(); ++i) {
        Site s = cell.site_at(i);
        Site t{};
        for (int j = 0; j < p.dim; ++j) {
            Coord v = s[g.perm[static_cast<std::size_t>(j)]];
            t[j] = g.sign[static_cast<std::size_t>(j)] > 0 ? v : p.side - 1 - v;
        }
        out.colours[static_cast<std::size_t>(cell.index_of(t))] = p.colours[static_cast<std::size_t>(i)];
    }
    return out;
}

Pattern canonicalize(const Pattern& p, GroupChoice g) {
    if (g == GroupChoice::TranslationsOnly) return p;
    Pattern best = p;
    for (const auto& elem : hyperoctahedral_group(p.dim)) {
        Pattern cand = apply_point_group(p, elem);
        if (cand.colours < best.colours) best = std::move(cand);
    }
    return best;
}

std::string encode(const Pattern& p) {
    return std::string(reinterpret_cast<const char*>(p.colours.data()), p.colours.size());
}

std::string hex_encode(const Pattern& p) {
    static const char* digits = "0123456789abcdef";
    std::string out;
    out.reserve(p.colours.size() * 2);
    for (std::uint8_t b : p.colours) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

Pattern decode(const std::string& key, int dim, int side) {
    Pattern p;
    p.dim = dim;
    p.side = side;
    p.colours.assign(key.begin(), key.end());
    if (static_cast<std::int64_t>(p.colours.size()) != p.volume())
        throw std::invalid_argument("pattern key length does not match side^d");
    return p;
}

std::int64_t count_occurrences(const Pattern& p, const Pattern& big, GroupChoice g) {
    if (p.side > big.side) throw std::invalid_argument("pattern side exceeds host side");
    if (p.dim != big.dim) throw std::invalid_argument("pattern dimension mismatch");
    const std::string target = encode(canonicalize(p, g));
    const Cube host = origin_cube(big.side, big.dim);
    const Colouring view = Colouring::explicit_array(host, big.colours);
    const int anchors = big.side - p.side + 1;
    Cube anchor_cube = origin_cube(anchors, big.dim);
    std::int64_t n = 0;
    for (std::int64_t i = 0; i < anchor_cube.volume(); ++i) {
        Cube window = make_cube(anchor_cube.site_at(i), p.side, p.dim);
        Pattern w = restrict_to(view, window);
        if (encode(canonicalize(w, g)) == target) ++n;
    }
    return n;
}

FrequencyTable estimate_frequencies(const Colouring& c, const Cube& window, int M,
                                    GroupChoice g, std::size_t cap) {
    if (M < 1 || M > window.side) throw std::invalid_argument("pattern side must be in [1, window side]");
    FrequencyTable t;
    t.dim = window.dim;
    t.side = M;
    t.window_volume = window.volume();
    t.group = g;
    const int anchors = window.side - M + 1;
    Cube anchor_cube = make_cube(window.anchor, anchors, window.dim);
    for (std::int64_t i = 0; i < anchor_cube.volume(); ++i) {
        Cube w = make_cube(anchor_cube.site_at(i), M, window.dim);
        std::string key = encode(canonicalize(restrict_to(c, w), g));
        auto [it, inserted] = t.counts.try_emplace(std::move(key), 0);
        if (inserted && t.counts.size() > cap)
            throw ResourceCapError("distinct pattern count exceeds the configured cap");
        ++it->second;
    }
    return t;
}

void write_frequency_dump(const FrequencyTable& t, std::ostream& os) {
    std::vector<std::pair<std::string, std::int64_t>> rows(t.counts.begin(), t.counts.end());
    std::sort(rows.begin(), rows.end());
    for (const auto& [key, count] : rows) {
        Pattern p = decode(key, t.dim, t.side);
        os << hex_encode(p) << ',' << count << '\n';
    }
}

}  // namespace ids
