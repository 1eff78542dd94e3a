#include "ids/eigen_solve.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>

#include "ids/simd/kernels.hpp"

namespace ids {

namespace {

SymBand widen(const SymBand& m, int bw) {
    if (m.bandwidth() == bw) return m;
    SymBand out(m.order(), bw);
    for (int j = 0; j < m.order(); ++j)
        for (int i = j; i <= j + m.bandwidth() && i < m.order(); ++i)
            out.at(i, j) = m.get(i, j);
    return out;
}

}  // namespace

std::vector<double> symmetric_eigenvalues(const SymBand& m) {
    if (m.order() < 1) throw std::invalid_argument("matrix order must be at least 1");
    if (!m.all_finite()) throw NumericalError("matrix has non-finite entries");
    std::vector<double> a = m.dense();
    std::vector<double> w(static_cast<std::size_t>(m.order()));
    lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', m.order(), a.data(), m.order(), w.data());
    if (info != 0) throw NumericalError("dsyev failed to converge");
    return w;
}

DenseEig symmetric_eig(const SymBand& m) {
    if (m.order() < 1) throw std::invalid_argument("matrix order must be at least 1");
    if (!m.all_finite()) throw NumericalError("matrix has non-finite entries");
    DenseEig out;
    out.vectors = m.dense();
    out.values.resize(static_cast<std::size_t>(m.order()));
    lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'V', 'L', m.order(), out.vectors.data(),
                                    m.order(), out.values.data());
    if (info != 0) throw NumericalError("dsyev failed to converge");
    return out;
}

BandGenEig band_generalized_eig_upto(const SymBand& a, const SymBand& b, double vmax,
                                     bool want_vectors) {
    const int n = a.order();
    if (n < 1 || b.order() != n) throw std::invalid_argument("pencil order mismatch");
    if (!a.all_finite() || !b.all_finite()) throw NumericalError("pencil has non-finite entries");
    const int ka = std::max(a.bandwidth(), b.bandwidth());
    const int kb = ka;  // dsbgvx needs ka >= kb; pad both to a common band
    SymBand ac = widen(a, ka);
    SymBand bc = widen(b, kb);

    std::vector<double> w(static_cast<std::size_t>(n));
    std::vector<double> z, q;
    std::vector<lapack_int> ifail;
    lapack_int found = 0;
    const char jobz = want_vectors ? 'V' : 'N';
    const lapack_int ldq = want_vectors ? n : 1;
    const lapack_int ldz = want_vectors ? n : 1;
    if (want_vectors) {
        q.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        z.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        ifail.resize(static_cast<std::size_t>(n));
    } else {
        q.resize(1);
        z.resize(1);
    }
    // Range is (vl, vu]; all implemented operators are lower bounded, so a
    // deep vl catches everything including numerically negative zero modes.
    const double vl = -1.0e30;
    lapack_int info = LAPACKE_dsbgvx(LAPACK_COL_MAJOR, jobz, 'V', 'L', n, ka, kb,
                                     ac.band_data(), ka + 1, bc.band_data(), kb + 1,
                                     q.data(), ldq, vl, vmax, 0, 0, 2.0e-308, &found,
                                     w.data(), z.data(), ldz,
                                     want_vectors ? ifail.data() : nullptr);
    if (info < 0) throw NumericalError("dsbgvx: invalid argument");
    if (info > n) throw NumericalError("mass matrix is not positive definite");
    if (info != 0) throw NumericalError("dsbgvx: eigenvectors failed to converge");

    BandGenEig out;
    out.values.assign(w.begin(), w.begin() + found);
    std::vector<std::size_t> order(static_cast<std::size_t>(found));
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return out.values[x] < out.values[y]; });
    std::vector<double> sorted(out.values.size());
    for (std::size_t i = 0; i < order.size(); ++i) sorted[i] = out.values[order[i]];
    out.values = std::move(sorted);
    if (want_vectors) {
        out.vectors.resize(static_cast<std::size_t>(n) * static_cast<std::size_t>(found));
        for (std::size_t i = 0; i < order.size(); ++i)
            std::copy_n(z.begin() + static_cast<std::ptrdiff_t>(order[i] * static_cast<std::size_t>(n)),
                        n, out.vectors.begin() + static_cast<std::ptrdiff_t>(i * static_cast<std::size_t>(n)));
    }
    return out;
}

std::optional<int> band_inertia_below(const SymBand& m, double shift) {
    const int n = m.order();
    const int bw = m.bandwidth();
    SymBand f = m;
    const double scale = std::max({f.max_abs(), std::abs(shift), 1.0});
    const double tiny = scale * static_cast<double>(n) * 1e-15;
    const auto& k = simd::kernels();
    const int ld = bw + 1;
    double* ab = f.band_data();
    int negatives = 0;
    for (int j = 0; j < n; ++j) {
        double* col_j = ab + static_cast<std::size_t>(j) * static_cast<std::size_t>(ld);
        const double d = col_j[0] - shift;
        if (std::abs(d) <= tiny) return std::nullopt;
        if (d < 0.0) ++negatives;
        const int w = std::min(bw, n - 1 - j);
        for (int c = 1; c <= w; ++c) {
            const double lc = col_j[c] / d;
            double* col_jc = ab + static_cast<std::size_t>(j + c) * static_cast<std::size_t>(ld);
            k.axpy(col_jc, col_j + c, -lc, static_cast<std::size_t>(w - c + 1));
        }
    }
    return negatives;
}

int count_leq(const SymBand& m, double lambda) {
    if (!m.all_finite()) throw NumericalError("matrix has non-finite entries");
    double eps = std::max(1.0, std::abs(lambda)) * 1e-10;
    for (int attempt = 0; attempt < 4; ++attempt) {
        if (auto r = band_inertia_below(m, lambda + eps)) return *r;
        eps *= 2.0;
    }
    throw NumericalError("inertia factorization breakdown after 3 retries");
}

}  // namespace ids
