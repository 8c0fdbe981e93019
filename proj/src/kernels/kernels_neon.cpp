// NEON variants (aarch64). Same arithmetic order as the scalar kernels
// (vmulq/vaddq, no fused multiply-add), so results are bit-identical.

#if defined(__aarch64__)

#include <arm_neon.h>

#include "ricciwave/kernels.hpp"

namespace ricciwave::kernels {

void wave_accel_row_neon(const double* u, const double* up, const double* dn,
                         const double* crp, const double* crm, const double* v,
                         double cxp, double cxm,
                         double src, double damp,
                         double* out, int n) {
    const float64x2_t vcxp = vdupq_n_f64(cxp);
    const float64x2_t vcxm = vdupq_n_f64(cxm);
    const float64x2_t vsrc = vdupq_n_f64(src);
    const float64x2_t vdamp = vdupq_n_f64(damp);

    int i = 1;
    for (; i + 2 <= n - 1; i += 2) {
        const float64x2_t uc = vld1q_f64(u + i);
        const float64x2_t uu = vld1q_f64(up + i);
        const float64x2_t ud = vld1q_f64(dn + i);
        const float64x2_t ul = vld1q_f64(u + i - 1);
        const float64x2_t ur = vld1q_f64(u + i + 1);

        const float64x2_t fx = vsubq_f64(vmulq_f64(vcxp, vsubq_f64(uu, uc)),
                                         vmulq_f64(vcxm, vsubq_f64(uc, ud)));
        const float64x2_t fr = vsubq_f64(vmulq_f64(vld1q_f64(crp + i), vsubq_f64(ur, uc)),
                                         vmulq_f64(vld1q_f64(crm + i), vsubq_f64(uc, ul)));
        const float64x2_t tail = vsubq_f64(vsrc, vmulq_f64(vdamp, vld1q_f64(v + i)));
        vst1q_f64(out + i, vaddq_f64(vaddq_f64(fx, fr), tail));
    }
    for (; i < n - 1; ++i) {
        const double fx = cxp * (up[i] - u[i]) - cxm * (u[i] - dn[i]);
        const double fr = crp[i] * (u[i + 1] - u[i]) - crm[i] * (u[i] - u[i - 1]);
        out[i] = (fx + fr) + (src - damp * v[i]);
    }
}

void axpy_neon(double a, const double* x, double* y, int n) {
    const float64x2_t va = vdupq_n_f64(a);
    int i = 0;
    for (; i + 2 <= n; i += 2) {
        vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

void second_diff_neon(const double* u, double inv_h2, double* out, int n) {
    const float64x2_t two = vdupq_n_f64(2.0);
    const float64x2_t vih2 = vdupq_n_f64(inv_h2);
    int i = 1;
    for (; i + 2 <= n - 1; i += 2) {
        const float64x2_t uc = vld1q_f64(u + i);
        const float64x2_t ul = vld1q_f64(u + i - 1);
        const float64x2_t ur = vld1q_f64(u + i + 1);
        const float64x2_t d = vaddq_f64(vsubq_f64(ul, vmulq_f64(two, uc)), ur);
        vst1q_f64(out + i, vmulq_f64(d, vih2));
    }
    for (; i < n - 1; ++i) {
        out[i] = ((u[i - 1] - 2.0 * u[i]) + u[i + 1]) * inv_h2;
    }
}

}  // namespace ricciwave::kernels

#endif  // __aarch64__
