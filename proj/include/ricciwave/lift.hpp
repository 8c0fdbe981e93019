#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "ricciwave/heat.hpp"
#include "ricciwave/types.hpp"

namespace ricciwave {

/// Analytic base field w(t,x) together with the exact derivatives the lift
/// calculus consumes. The lifted field is u~(x, r) = w(r^2/(2N), x); slicing
/// at r = sqrt(2Nt) recovers w by construction.
struct BaseField {
    std::function<double(double, double)> w;      // w(t, x)
    std::function<double(double, double)> w_t;    // dw/dt
    std::function<double(double, double)> w_tt;   // d2w/dt2
    std::function<double(double, double)> lap_x;  // spatial Laplacian

    /// Closed-form backward-heat kernel solution for gaussian/constant data.
    static BaseField kernel(const Profile& h, double T);
    /// w(t,x) = a*t + b*x + c (harmonic, linear in t).
    static BaseField affine(double a, double b, double c);
};

/// Evaluates both sides of the radial-Laplacian identity at r = sqrt(2Nt):
/// lhs assembles u~_rr + ((N-1)/r) u~_r term by term through the chain rule,
/// rhs is w_t + (2t/N) w_tt. The two agree identically; the pair exposes the
/// floating-point assembly for testing.
std::pair<double, double> dy_laplacian_of_lift(const BaseField& w, int N, double t, double x);

/// Full (x, y)-Laplacian of the lift of a backward-heat solution, evaluated on
/// the slice r = sqrt(2Nt). Since w_t + lap_x w = 0 the result collapses to
/// (2t/N) w_tt, i.e. the defect is exactly linear in 1/N. The base field is
/// first checked against its own heat equation (tolerance 1e-9) and rejected
/// with a diagnostic if it fails.
SpaceTimeField almost_harmonic_residual(const BaseField& w, int N,
                                        std::span<const double> times,
                                        const GridSpec& x_grid);

/// Rotational average of f: R^N -> R over the sphere of each given radius,
/// N in {2, 3}. quadrature_points >= 8 controls the node count (uniform on the
/// circle for N=2; Gauss-Legendre x uniform product rule on S^2 for N=3).
std::vector<double> symmetrize_small_N(
    const std::function<double(std::span<const double>)>& f, int N,
    int quadrature_points, std::span<const double> radii);

}  // namespace ricciwave
