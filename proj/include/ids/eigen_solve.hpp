#pragma once
// LAPACK-backed eigensolvers and the hand-written Sylvester-inertia counter.
// The two are deliberately independent computation routes; tests pit them
// against each other.

#include <optional>
#include <vector>

#include "ids/errors.hpp"
#include "ids/sym_band.hpp"

namespace ids {

/// All eigenvalues of a symmetric matrix, ascending, with multiplicity.
/// Backward-stable (LAPACK dsyev).
std::vector<double> symmetric_eigenvalues(const SymBand& m);

struct DenseEig {
    std::vector<double> values;
    std::vector<double> vectors;  // column-major order n x n
};
DenseEig symmetric_eig(const SymBand& m);

struct BandGenEig {
    std::vector<double> values;   // eigenvalues <= vmax, ascending
    std::vector<double> vectors;  // column-major n x values.size(); empty unless requested
};

/// Generalized eigenvalues of (A, B) up to vmax, B positive definite,
/// both banded (LAPACK dsbgvx). Eigenvectors are B-orthonormal.
BandGenEig band_generalized_eig_upto(const SymBand& a, const SymBand& b, double vmax,
                                     bool want_vectors);

/// Number of negative pivots of the LDL^T factorization (no pivoting) of
/// m - shift*I. Returns nullopt on factorization breakdown (near-zero pivot).
std::optional<int> band_inertia_below(const SymBand& m, double shift);

/// Number of eigenvalues <= lambda via inertia counting at the shifted
/// point lambda + eps_shift, eps_shift = max(1,|lambda|)*1e-10. Breakdown
/// retried with doubled shift; NumericalError after 3 retries.
int count_leq(const SymBand& m, double lambda);

}  // namespace ids
