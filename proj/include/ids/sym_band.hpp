#pragma once
// Symmetric matrices in LAPACK lower-band storage. Dense problems are the
// bw = n-1 special case, so one type covers both spec storage modes.

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace ids {

class SymBand {
  public:
    SymBand() = default;
    SymBand(int order, int bandwidth)
        : n_(order),
          bw_(bandwidth < order ? bandwidth : (order > 0 ? order - 1 : 0)),
          a_(static_cast<std::size_t>(n_) * static_cast<std::size_t>(bw_ + 1), 0.0) {}

    int order() const { return n_; }
    int bandwidth() const { return bw_; }

    /// Mutable access; requires j <= i <= j + bandwidth.
    double& at(int i, int j) {
        return a_[static_cast<std::size_t>(j) * static_cast<std::size_t>(bw_ + 1) +
                  static_cast<std::size_t>(i - j)];
    }
    /// Symmetric read; zero outside the band.
    double get(int i, int j) const;

    /// Column-major LAPACK band array ('L', ldab = bandwidth + 1).
    double* band_data() { return a_.data(); }
    const double* band_data() const { return a_.data(); }

    std::vector<double> dense() const;  // column-major n x n, both triangles
    double trace() const;
    double max_abs() const;
    bool all_finite() const;

    /// Upper-triangle coordinate text dump `i j value`, 17 significant digits.
    void write_coordinate(std::ostream& os) const;

  private:
    int n_ = 0;
    int bw_ = 0;
    std::vector<double> a_;
};

}  // namespace ids
