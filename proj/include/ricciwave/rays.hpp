#pragma once

#include <span>
#include <vector>

#include "ricciwave/metrics.hpp"
#include "ricciwave/types.hpp"

namespace ricciwave {

/// A point of the phase space over (t, x, y) with covector (tau, xi, eta).
/// y/eta have length N (the fiber dimension).
struct PhasePoint {
    double t = 0.0;
    std::vector<double> x;
    std::vector<double> y;
    double tau = 0.0;
    std::vector<double> xi;
    std::vector<double> eta;
    int N = 0;
};

struct PhaseTangent {
    double t_dot = 0.0;
    std::vector<double> x_dot;
    std::vector<double> y_dot;
    double tau_dot = 0.0;
    std::vector<double> xi_dot;
    std::vector<double> eta_dot;
};

struct RayTrajectory {
    std::vector<double> s;
    std::vector<PhasePoint> points;
    double step = 0.0;
    bool escaped = false;  // truncated at the metric-domain boundary
};

/// p = (2t/N) tau^2 - g^{ij}(t,x) xi_i xi_j - |eta|^2.
double principal_symbol(const PhasePoint& point, const MetricFamily& family);

/// Hamiltonian vector field of the principal symbol with the canonical
/// convention x_dot = dp/dxi, xi_dot = -dp/dx (and likewise for (t, tau)):
///   t_dot = 4 t tau / N,   x_dot = -2 g^{ij} xi_j,   y_dot = -2 eta,
///   tau_dot = -2 tau^2/N + (dg^{ij}/dt) xi_i xi_j,
///   xi_dot_k = (dg^{ij}/dx^k) xi_i xi_j,   eta_dot = 0.
PhaseTangent hamiltonian_field(const PhasePoint& point, const MetricFamily& family);

/// Classical 4th-order fixed-step integration from s = 0 to s_max. Exits the
/// metric domain -> truncated trajectory with `escaped` set.
RayTrajectory integrate_ray(const PhasePoint& point0, const MetricFamily& family,
                            double s_max, double step);

/// Exact Euclidean bicharacteristic. For tau(0) != 0:
///   tau(s) = tau0 N / (2 s tau0 + N),  t(s) = 4 tau0^2 t0 (s/N + 1/(2 tau0))^2,
///   x(s) = x0 - 2 xi0 s,  y(s) = y0 - 2 eta0 s,  xi/eta constant;
/// for tau(0) = 0 the (t, tau) pair is frozen. Pole 2 s tau0 + N = 0 -> error.
PhasePoint euclid_ray_closed_form(const PhasePoint& point0, double s);

enum class WfClass { terminal_stationary, escapes_to_infinity, regular, indeterminate };

struct WfResult {
    WfClass cls = WfClass::indeterminate;
    /// relative spread of |Delta(x,y)|^2 / N across the N family (escape test)
    double scale_spread = 0.0;
    std::vector<double> scaled_displacements;  // one per N
};

/// Classifies a seed covector direction against the large-N limit of the
/// characteristic flow. The template's (xi, eta) fixes a direction only; per N
/// the magnitude is rescaled so the point is characteristic (p = 0). The probe
/// parameter runs to s_probe * N so displacements are comparable across N.
WfResult classify_wf_infinity(const PhasePoint& point0, const MetricFamily& family,
                              std::span<const int> Ns, double s_probe);

}  // namespace ricciwave
