#include "ids/geometry.hpp"

#include <algorithm>
#include <numeric>

namespace ids {

std::vector<PointGroupElement> hyperoctahedral_group(int dim) {
    if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("dimension must be in [1,4]");
    std::array<int, kMaxDim> perm{};
    std::iota(perm.begin(), perm.begin() + dim, 0);
    std::vector<PointGroupElement> out;
    do {
        for (int mask = 0; mask < (1 << dim); ++mask) {
            PointGroupElement g;
            g.perm = perm;
            for (int j = 0; j < dim; ++j) g.sign[static_cast<std::size_t>(j)] = (mask >> j) & 1 ? -1 : 1;
            out.push_back(g);
        }
    } while (std::next_permutation(perm.begin(), perm.begin() + dim));
    return out;
}

bool visible_point(const Site& s, int dim) {
    std::int64_t g = 0;
    bool all_zero = true;
    for (int j = 0; j < dim; ++j) {
        std::int64_t a = std::abs(s[j]);
        if (a != 0) all_zero = false;
        g = std::gcd(g, a);
    }
    return all_zero || g == 1;
}

}  // namespace ids
