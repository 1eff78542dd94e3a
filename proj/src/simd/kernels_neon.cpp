#if defined(__aarch64__)

#include <arm_neon.h>

#include "ids/simd/kernels.hpp"

namespace ids::simd {

namespace {

void axpy_neon(double* y, const double* x, double a, std::size_t n) {
    const float64x2_t va = vdupq_n_f64(a);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vy = vld1q_f64(y + i);
        float64x2_t vx = vld1q_f64(x + i);
        vy = vaddq_f64(vy, vmulq_f64(va, vx));
        vst1q_f64(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double dot_neon(const double* x, const double* y, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        acc = vaddq_f64(acc, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double sum_sq_neon(const double* x, std::size_t n) {
    float64x2_t acc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        acc = vaddq_f64(acc, vmulq_f64(vx, vx));
    }
    double s = vgetq_lane_f64(acc, 0) + vgetq_lane_f64(acc, 1);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

}  // namespace

const Kernels neon_kernels{axpy_neon, dot_neon, sum_sq_neon};

}  // namespace ids::simd

#endif  // __aarch64__
