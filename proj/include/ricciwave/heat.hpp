#pragma once

#include <functional>
#include <span>
#include <string_view>

#include "ricciwave/metrics.hpp"
#include "ricciwave/types.hpp"

namespace ricciwave {

/// Named analytic terminal-data profile. `gaussian` and `constant` admit a
/// closed-form convolution against the heat kernel; `bump` is compactly
/// supported (for property tests); `cos_theta` is the l = 1 axisymmetric
/// spherical harmonic.
struct Profile {
    enum class Kind { constant, gaussian, cos_theta, bump };
    Kind kind = Kind::constant;
    double c = 0.0;       // constant value
    double center = 0.0;  // gaussian / bump
    double width = 1.0;   // gaussian / bump

    static Profile constant(double c);
    static Profile gaussian(double center, double width);
    static Profile cos_theta();
    static Profile bump(double center, double width);
    static Profile parse(std::string_view spec);  // e.g. "gaussian(0,1)"
};

double profile_eval(const Profile& h, double x);

/// Analytic first and second derivatives dh/dx, d2h/dx2 (closed form for all
/// four kinds).
double profile_d1(const Profile& h, double x);
double profile_d2(const Profile& h, double x);

struct HeatProblem {
    const MetricFamily* family = nullptr;
    Profile h;
    double t0 = 0.0;
    double T = 0.0;
    GridSpec x_grid;
    double dt = 0.0;
    int store_every = 1;
};

/// Closed-form solution of the backward heat equation with Euclidean metric:
/// u(t,x) = (4 pi (T-t))^{-n/2} Int exp(|x-y|^2 / (4(t-T))) h(y) dy.
/// Supported for gaussian and constant profiles (isotropic in n dims, each
/// coordinate centered at h.center).
double gaussian_kernel_solution(const Profile& h, double t, std::span<const double> x,
                                double T, int n);

/// Closed-form t-derivatives of the 1-D kernel solution (used as analytic
/// oracle by the lift module).
struct KernelDerivs {
    double u;
    double u_t;
    double u_tt;
    double lap_x;  // equals -u_t for the kernel solution
};
KernelDerivs gaussian_kernel_derivs(const Profile& h, double t, double x, double T);

/// Crank-Nicolson march of dt u + Lap_{g(t)} u = -R(t,x) from u(T,.) = h down
/// to t0. Time levels are stored in decreasing t. Boundary: Dirichlet pin to
/// the kernel oracle for euclid1 gaussian/constant data; homogeneous Neumann
/// otherwise (sphere2 pole margins included). If `observe` is set it is
/// called with every computed level (terminal first), independent of
/// store_every; observers let callers accumulate per-step functionals without
/// the memory cost of storing each level.
using LevelObserver = std::function<void(double t, std::span<const double> level)>;
SpaceTimeField solve_backward_heat(const HeatProblem& p, const LevelObserver& observe = {});

/// Forward heat dt u - Lap u = 0 on [T, t0] with T < t0 < 0, via the time
/// reflection t -> -t of solve_backward_heat with R == 0. Euclidean only.
SpaceTimeField solve_forward_heat(const HeatProblem& p);

}  // namespace ricciwave
