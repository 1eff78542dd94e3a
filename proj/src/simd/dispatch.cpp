#include "ids/simd/kernels.hpp"

namespace ids::simd {

namespace {

struct Selection {
    const Kernels* k;
    const char* name;
};

Selection select() {
#if defined(__x86_64__)
    if (__builtin_cpu_supports("avx2")) return {&avx2_kernels, "avx2"};
#endif
#if defined(__aarch64__)
    return {&neon_kernels, "neon"};
#endif
    return {&scalar_kernels, "scalar"};
}

const Selection g_selected = select();

}  // namespace

const Kernels& kernels() { return *g_selected.k; }

const char* active_variant() { return g_selected.name; }

}  // namespace ids::simd
