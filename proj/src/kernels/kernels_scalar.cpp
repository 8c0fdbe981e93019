#include "ricciwave/kernels.hpp"

namespace ricciwave::kernels {

void wave_accel_row_scalar(const double* u, const double* up, const double* dn,
                           const double* crp, const double* crm, const double* v,
                           double cxp, double cxm,
                           double src, double damp,
                           double* out, int n) {
    for (int i = 1; i < n - 1; ++i) {
        const double fx = cxp * (up[i] - u[i]) - cxm * (u[i] - dn[i]);
        const double fr = crp[i] * (u[i + 1] - u[i]) - crm[i] * (u[i] - u[i - 1]);
        out[i] = (fx + fr) + (src - damp * v[i]);
    }
}

void axpy_scalar(double a, const double* x, double* y, int n) {
    for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

void second_diff_scalar(const double* u, double inv_h2, double* out, int n) {
    for (int i = 1; i < n - 1; ++i) {
        out[i] = ((u[i - 1] - 2.0 * u[i]) + u[i + 1]) * inv_h2;
    }
}

}  // namespace ricciwave::kernels
