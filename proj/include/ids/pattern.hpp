#pragma once
// Cube patterns, canonical forms under the symmetry group, occurrence
// counting, and empirical pattern frequencies.

#include <cstdint>
#include <string>
#include <unordered_map>

#include "ids/colouring.hpp"
#include "ids/errors.hpp"
#include "ids/geometry.hpp"

namespace ids {

/// A colouring restricted to a cube, anchor normalized to the origin.
/// Colours are stored row-major (last axis fastest).
struct Pattern {
    int dim = 1;
    int side = 1;
    std::vector<std::uint8_t> colours;

    std::int64_t volume() const {
        std::int64_t v = 1;
        for (int j = 0; j < dim; ++j) v *= side;
        return v;
    }
    friend bool operator==(const Pattern&, const Pattern&) = default;
};

/// Restriction of a colouring to a cube.
Pattern restrict_to(const Colouring& c, const Cube& q);

/// Image of p under a point-group element (acting on [0, side)^d).
Pattern apply_point_group(const Pattern& p, const PointGroupElement& g);

/// Translations: identity on the stored pattern. Full group: the
/// lexicographically smallest colour array over the hyperoctahedral orbit.
Pattern canonicalize(const Pattern& p, GroupChoice g);

/// Raw byte encoding of the colour array; associative key and disk key.
std::string encode(const Pattern& p);
std::string hex_encode(const Pattern& p);
Pattern decode(const std::string& key, int dim, int side);

/// Number of fully contained windows of `big` equivalent to p under g.
std::int64_t count_occurrences(const Pattern& p, const Pattern& big, GroupChoice g);

struct FrequencyTable {
    int dim = 1;
    int side = 1;                    // pattern side M
    std::int64_t window_volume = 0;  // |Q|
    GroupChoice group = GroupChoice::TranslationsOnly;
    std::unordered_map<std::string, std::int64_t> counts;  // canonical key -> count

    double frequency(const std::string& key) const {
        auto it = counts.find(key);
        return it == counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(window_volume);
    }
    std::int64_t total_count() const {
        std::int64_t t = 0;
        for (const auto& [k, v] : counts) t += v;
        return t;
    }
};

inline constexpr std::size_t kDefaultPatternCap = 1'000'000;

/// Sliding-window empirical frequencies of side-M patterns in `window`.
/// Throws if the number of distinct canonical patterns exceeds `cap`.
FrequencyTable estimate_frequencies(const Colouring& c, const Cube& window, int M,
                                    GroupChoice g = GroupChoice::TranslationsOnly,
                                    std::size_t cap = kDefaultPatternCap);

/// Frequency dump: one `hex(encoding),count` line per pattern, key-sorted.
void write_frequency_dump(const FrequencyTable& t, std::ostream& os);

}  // namespace ids
