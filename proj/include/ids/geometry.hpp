#pragma once
// Z^d geometry: sites, cubes, and the hyperoctahedral point group.

#include <array>
#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace ids {

using Coord = std::int64_t;
inline constexpr int kMaxDim = 4;

/// A lattice site in Z^d. Coordinates beyond the working dimension are zero.
struct Site {
    std::array<Coord, kMaxDim> x{};

    Coord operator[](int j) const { return x[static_cast<std::size_t>(j)]; }
    Coord& operator[](int j) { return x[static_cast<std::size_t>(j)]; }
    friend bool operator==(const Site&, const Site&) = default;
};

inline Site operator+(Site a, const Site& b) {
    for (int j = 0; j < kMaxDim; ++j) a[j] += b[j];
    return a;
}
inline Site operator-(Site a, const Site& b) {
    for (int j = 0; j < kMaxDim; ++j) a[j] -= b[j];
    return a;
}

inline Site make_site(std::initializer_list<Coord> cs) {
    Site s{};
    int j = 0;
    for (Coord c : cs) {
        if (j >= kMaxDim) throw std::invalid_argument("site has too many coordinates");
        s[j++] = c;
    }
    return s;
}

/// Axis-aligned cube anchor + [0, side)^d.
struct Cube {
    Site anchor{};
    int side = 1;
    int dim = 1;

    std::int64_t volume() const {
        std::int64_t v = 1;
        for (int j = 0; j < dim; ++j) v *= side;
        return v;
    }

    bool contains(const Site& s) const {
        for (int j = 0; j < dim; ++j) {
            Coord o = s[j] - anchor[j];
            if (o < 0 || o >= side) return false;
        }
        for (int j = dim; j < kMaxDim; ++j)
            if (s[j] != 0) return false;
        return true;
    }

    /// Row-major site enumeration, last axis fastest.
    Site site_at(std::int64_t index) const {
        Site s = anchor;
        for (int j = dim - 1; j >= 0; --j) {
            s[j] += static_cast<Coord>(index % side);
            index /= side;
        }
        return s;
    }

    std::int64_t index_of(const Site& s) const {
        std::int64_t idx = 0;
        for (int j = 0; j < dim; ++j) idx = idx * side + (s[j] - anchor[j]);
        return idx;
    }
};

inline Cube make_cube(Site anchor, int side, int dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dimension must be in [1,4]");
    if (side < 1) throw std::invalid_argument("cube side must be positive");
    return Cube{anchor, side, dim};
}

/// Origin-anchored cube C_M.
inline Cube origin_cube(int side, int dim) { return make_cube(Site{}, side, dim); }

/// Axis-aligned box with per-axis extents; cubes split along a hyperplane
/// stay representable. Same row-major enumeration as Cube.
struct Box {
    Site anchor{};
    std::array<int, kMaxDim> sides{};
    int dim = 1;

    std::int64_t volume() const {
        std::int64_t v = 1;
        for (int j = 0; j < dim; ++j) v *= sides[static_cast<std::size_t>(j)];
        return v;
    }

    bool contains(const Site& s) const {
        for (int j = 0; j < dim; ++j) {
            Coord o = s[j] - anchor[j];
            if (o < 0 || o >= sides[static_cast<std::size_t>(j)]) return false;
        }
        for (int j = dim; j < kMaxDim; ++j)
            if (s[j] != 0) return false;
        return true;
    }

    Site site_at(std::int64_t index) const {
        Site s = anchor;
        for (int j = dim - 1; j >= 0; --j) {
            s[j] += static_cast<Coord>(index % sides[static_cast<std::size_t>(j)]);
            index /= sides[static_cast<std::size_t>(j)];
        }
        return s;
    }

    std::int64_t index_of(const Site& s) const {
        std::int64_t idx = 0;
        for (int j = 0; j < dim; ++j)
            idx = idx * sides[static_cast<std::size_t>(j)] + (s[j] - anchor[j]);
        return idx;
    }
};

inline Box box_of(const Cube& q) {
    Box b;
    b.anchor = q.anchor;
    b.dim = q.dim;
    for (int j = 0; j < q.dim; ++j) b.sides[static_cast<std::size_t>(j)] = q.side;
    return b;
}

/// Split a box at `offset` sites along `axis` (0 < offset < side).
inline std::pair<Box, Box> split_box(const Box& b, int axis, int offset) {
    if (axis < 0 || axis >= b.dim) throw std::invalid_argument("split axis out of range");
    if (offset <= 0 || offset >= b.sides[static_cast<std::size_t>(axis)])
        throw std::invalid_argument("split offset must be interior");
    Box lo = b, hi = b;
    lo.sides[static_cast<std::size_t>(axis)] = offset;
    hi.sides[static_cast<std::size_t>(axis)] -= offset;
    hi.anchor[axis] += offset;
    return {lo, hi};
}

enum class GroupChoice { TranslationsOnly, Full };

/// One signed-permutation element of the hyperoctahedral group B_d.
struct PointGroupElement {
    std::array<int, kMaxDim> perm{};  // output axis j reads input axis perm[j]
    std::array<int, kMaxDim> sign{};  // +1 or -1 per output axis
};

/// All 2^d d! signed permutations.
std::vector<PointGroupElement> hyperoctahedral_group(int dim);

/// True iff x is the origin or gcd(|x_1|,...,|x_d|) = 1.
bool visible_point(const Site& s, int dim);

}  // namespace ids
