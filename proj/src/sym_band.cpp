#include "ids/sym_band.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace ids {

double SymBand::get(int i, int j) const {
    if (i < j) std::swap(i, j);
    if (i - j > bw_) return 0.0;
    return a_[static_cast<std::size_t>(j) * static_cast<std::size_t>(bw_ + 1) +
              static_cast<std::size_t>(i - j)];
}

std::vector<double> SymBand::dense() const {
    std::vector<double> d(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0.0);
    for (int j = 0; j < n_; ++j) {
        for (int i = j; i <= j + bw_ && i < n_; ++i) {
            double v = a_[static_cast<std::size_t>(j) * static_cast<std::size_t>(bw_ + 1) +
                          static_cast<std::size_t>(i - j)];
            d[static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(i)] = v;
            d[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j)] = v;
        }
    }
    return d;
}

double SymBand::trace() const {
    double t = 0.0;
    for (int j = 0; j < n_; ++j)
        t += a_[static_cast<std::size_t>(j) * static_cast<std::size_t>(bw_ + 1)];
    return t;
}

double SymBand::max_abs() const {
    double m = 0.0;
    for (int j = 0; j < n_; ++j)
        for (int i = j; i <= j + bw_ && i < n_; ++i)
            m = std::max(m, std::abs(a_[static_cast<std::size_t>(j) * static_cast<std::size_t>(bw_ + 1) +
                                        static_cast<std::size_t>(i - j)]));
    return m;
}

bool SymBand::all_finite() const {
    for (int j = 0; j < n_; ++j)
        for (int i = j; i <= j + bw_ && i < n_; ++i)
            if (!std::isfinite(a_[static_cast<std::size_t>(j) * static_cast<std::size_t>(bw_ + 1) +
                                  static_cast<std::size_t>(i - j)]))
                return false;
    return true;
}

void SymBand::write_coordinate(std::ostream& os) const {
    char buf[96];
    for (int j = 0; j < n_; ++j) {
        for (int i = j; i <= j + bw_ && i < n_; ++i) {
            double v = a_[static_cast<std::size_t>(j) * static_cast<std::size_t>(bw_ + 1) +
                          static_cast<std::size_t>(i - j)];
            if (v == 0.0) continue;
            std::snprintf(buf, sizeof buf, "%d %d %.17g\n", j, i, v);
            os << buf;
        }
    }
}

}  // namespace ids
