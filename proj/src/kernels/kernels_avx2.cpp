// AVX2 variants. Arithmetic order per element matches the scalar kernels
// exactly (mul/add only, no FMA), so results are bit-identical.

#if defined(__AVX2__)

#include <immintrin.h>

#include "ricciwave/kernels.hpp"

namespace ricciwave::kernels {

void wave_accel_row_avx2(const double* u, const double* up, const double* dn,
                         const double* crp, const double* crm, const double* v,
                         double cxp, double cxm,
                         double src, double damp,
                         double* out, int n) {
    const __m256d vcxp = _mm256_set1_pd(cxp);
    const __m256d vcxm = _mm256_set1_pd(cxm);
    const __m256d vsrc = _mm256_set1_pd(src);
    const __m256d vdamp = _mm256_set1_pd(damp);

    int i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d uc = _mm256_loadu_pd(u + i);
        const __m256d uu = _mm256_loadu_pd(up + i);
        const __m256d ud = _mm256_loadu_pd(dn + i);
        const __m256d ul = _mm256_loadu_pd(u + i - 1);
        const __m256d ur = _mm256_loadu_pd(u + i + 1);

        const __m256d fx = _mm256_sub_pd(_mm256_mul_pd(vcxp, _mm256_sub_pd(uu, uc)),
                                         _mm256_mul_pd(vcxm, _mm256_sub_pd(uc, ud)));
        const __m256d fr =
            _mm256_sub_pd(_mm256_mul_pd(_mm256_loadu_pd(crp + i), _mm256_sub_pd(ur, uc)),
                          _mm256_mul_pd(_mm256_loadu_pd(crm + i), _mm256_sub_pd(uc, ul)));
        const __m256d tail =
            _mm256_sub_pd(vsrc, _mm256_mul_pd(vdamp, _mm256_loadu_pd(v + i)));
        _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_add_pd(fx, fr), tail));
    }
    for (; i < n - 1; ++i) {
        const double fx = cxp * (up[i] - u[i]) - cxm * (u[i] - dn[i]);
        const double fr = crp[i] * (u[i + 1] - u[i]) - crm[i] * (u[i] - u[i - 1]);
        out[i] = (fx + fr) + (src - damp * v[i]);
    }
}

void axpy_avx2(double a, const double* x, double* y, int n) {
    const __m256d va = _mm256_set1_pd(a);
    int i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d acc = _mm256_add_pd(_mm256_loadu_pd(y + i),
                                          _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(y + i, acc);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void second_diff_avx2(const double* u, double inv_h2, double* out, int n) {
    const __m256d two = _mm256_set1_pd(2.0);
    const __m256d vih2 = _mm256_set1_pd(inv_h2);
    int i = 1;
    for (; i + 4 <= n - 1; i += 4) {
        const __m256d uc = _mm256_loadu_pd(u + i);
        const __m256d ul = _mm256_loadu_pd(u + i - 1);
        const __m256d ur = _mm256_loadu_pd(u + i + 1);
        const __m256d d = _mm256_add_pd(_mm256_sub_pd(ul, _mm256_mul_pd(two, uc)), ur);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(d, vih2));
    }
    for (; i < n - 1; ++i) {
        out[i] = ((u[i - 1] - 2.0 * u[i]) + u[i + 1]) * inv_h2;
    }
}

}  // namespace ricciwave::kernels

#endif  // __AVX2__
