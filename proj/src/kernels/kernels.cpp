#include "ricciwave/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace ricciwave::kernels {

void wave_accel_row_scalar(const double*, const double*, const double*,
                           const double*, const double*, const double*,
                           double, double, double, double, double*, int);
void axpy_scalar(double, const double*, double*, int);
void second_diff_scalar(const double*, double, double*, int);

#if defined(RICCIWAVE_HAVE_AVX2)
void wave_accel_row_avx2(const double*, const double*, const double*,
                         const double*, const double*, const double*,
                         double, double, double, double, double*, int);
void axpy_avx2(double, const double*, double*, int);
void second_diff_avx2(const double*, double, double*, int);
#endif

#if defined(__aarch64__)
void wave_accel_row_neon(const double*, const double*, const double*,
                         const double*, const double*, const double*,
                         double, double, double, double, double*, int);
void axpy_neon(double, const double*, double*, int);
void second_diff_neon(const double*, double, double*, int);
#endif

namespace {

const Dispatch kScalar{wave_accel_row_scalar, axpy_scalar, second_diff_scalar, "scalar"};

#if defined(RICCIWAVE_HAVE_AVX2)
const Dispatch kAvx2{wave_accel_row_avx2, axpy_avx2, second_diff_avx2, "avx2"};
#endif

#if defined(__aarch64__)
const Dispatch kNeon{wave_accel_row_neon, axpy_neon, second_diff_neon, "neon"};
#endif

const Dispatch* lookup(std::string_view name) {
    if (name == "scalar") return &kScalar;
#if defined(RICCIWAVE_HAVE_AVX2)
    if (name == "avx2") {
        if (__builtin_cpu_supports("avx2")) return &kAvx2;
        return nullptr;
    }
#endif
#if defined(__aarch64__)
    if (name == "neon") return &kNeon;
#endif
    return nullptr;
}

const Dispatch* pick() {
    if (const char* forced = std::getenv("RICCIWAVE_SIMD")) {
        if (const Dispatch* d = lookup(forced)) return d;
        return &kScalar;
    }
#if defined(__aarch64__)
    return &kNeon;
#elif defined(RICCIWAVE_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2")) return &kAvx2;
#endif
    return &kScalar;
}

}  // namespace

const Dispatch& active() {
    static const Dispatch* d = pick();
    return *d;
}

const Dispatch& scalar() { return kScalar; }

const Dispatch* by_name(std::string_view name) { return lookup(name); }

}  // namespace ricciwave::kernels
