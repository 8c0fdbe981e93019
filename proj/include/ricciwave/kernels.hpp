#pragma once

#include <string_view>

namespace ricciwave::kernels {

// Inner stencil loops of the PDE solvers. Every kernel has a scalar reference
// implementation and (where the ISA allows) a vectorized variant; the active
// set is chosen once at startup from CPU capabilities and can be forced with
// the RICCIWAVE_SIMD environment variable (scalar | avx2 | neon).
//
// All kernels are elementwise (no reductions), so the scalar and SIMD
// variants are required to produce bit-identical results; the test suite
// enforces this.

/// Flux-form stencil row (keeps the discrete operator similar to a symmetric
/// one, which the leapfrog integrator needs for stability):
/// out[i] = cxp*(up[i] - u[i]) - cxm*(u[i] - dn[i])
///        + crp[i]*(u[i+1] - u[i]) - crm[i]*(u[i] - u[i-1])
///        + src - damp*v[i],   for i in [1, n-2].
/// out[0] and out[n-1] are left untouched.
using WaveAccelRowFn = void (*)(const double* u, const double* up, const double* dn,
                                const double* crp, const double* crm, const double* v,
                                double cxp, double cxm,
                                double src, double damp,
                                double* out, int n);

/// y[i] += a * x[i] for i in [0, n-1].
using AxpyFn = void (*)(double a, const double* x, double* y, int n);

/// out[i] = (u[i-1] - 2 u[i] + u[i+1]) * inv_h2 for i in [1, n-2];
/// endpoints untouched.
using SecondDiffFn = void (*)(const double* u, double inv_h2, double* out, int n);

struct Dispatch {
    WaveAccelRowFn wave_accel_row;
    AxpyFn axpy;
    SecondDiffFn second_diff;
    const char* isa;
};

/// The runtime-selected kernel set.
const Dispatch& active();

/// Scalar reference kernels, always available.
const Dispatch& scalar();

/// Lookup by ISA name; nullptr if that variant is not compiled in or the CPU
/// lacks the feature. Used by the equivalence tests.
const Dispatch* by_name(std::string_view name);

}  // namespace ricciwave::kernels
