#pragma once
// Data-parallel inner-loop kernels with scalar reference implementations
// and SIMD variants selected once at startup from CPU capabilities.
//
// axpy is elementwise and must be bit-identical across variants (no FMA
// contraction); the reductions may differ by association and are compared
// under tolerance in the equivalence tests.

#include <cstddef>

namespace ids::simd {

struct Kernels {
    // y[i] += a * x[i]
    void (*axpy)(double* y, const double* x, double a, std::size_t n);
    // sum_i x[i] * y[i]
    double (*dot)(const double* x, const double* y, std::size_t n);
    // sum_i x[i]^2
    double (*sum_sq)(const double* x, std::size_t n);
};

extern const Kernels scalar_kernels;
#if defined(__x86_64__)
extern const Kernels avx2_kernels;
#endif
#if defined(__aarch64__)
extern const Kernels neon_kernels;
#endif

/// The variant selected for this machine.
const Kernels& kernels();

/// Name of the active variant ("scalar", "avx2", "neon").
const char* active_variant();

}  // namespace ids::simd
