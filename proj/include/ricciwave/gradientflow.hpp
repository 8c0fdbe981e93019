#pragma once

#include <span>
#include <vector>

#include "ricciwave/metrics.hpp"
#include "ricciwave/types.hpp"

namespace ricciwave {

/// Fixture for the energy-functional checks: the potential f solves
/// dt_f = -R - Lap_g f backward from f(T,.) = 0, and the fixed reference
/// measure dm = e^{-f} dmu(t) is normalized to dmu(T) (dm_ref holds its
/// density at the grid nodes).
struct CoupledFlowState {
    const MetricFamily* family = nullptr;
    double t0 = 0.0;
    double T = 0.0;
    GridSpec x_grid;
    double dt = 0.0;
    std::vector<double> dm_ref;
};

CoupledFlowState make_coupled_flow(const MetricFamily& family, double t0, double T,
                                   const GridSpec& x_grid, double dt);

/// Solves dt_f = -R - Lap_g f from f(T,.) = 0 down to t0 (the heat scheme with
/// zero data; levels stored every store_every steps, times decreasing).
SpaceTimeField f_evolution(const MetricFamily& family, double t0, double T,
                           const GridSpec& x_grid, double dt, int store_every = 1);

/// F = Int (g^{ij} di_f dj_f + R) dm by quadrature against the fixed weight
/// dm_ref. On sphere2 the rule closes over the poles with zero weight (the
/// measure density vanishes there); on Euclidean grids it is plain trapezoid.
double f_functional(const MetricFamily& family, std::span<const double> f_level,
                    double t, std::span<const double> dm_ref, const GridSpec& x_grid);

struct MonotonicityResult {
    std::vector<double> times;  // decreasing, every solver step
    std::vector<double> F;      // F at each time
    std::vector<double> lhs;    // centered-difference dF/dt at times[1..n-2]
    std::vector<double> rhs;    // 2 Int |Ric + Hess f|^2 dm at each time
    double rn_drift = 0.0;      // max relative drift of Int e^{-f} dmu(t)
};

/// Marches the f-equation while accumulating F, the monotonicity identity
/// sides, and the Radon-Nikodym mass drift. Requires the spatially constant
/// fixture (Hess f = 0); rejects f levels with spatial variation.
MonotonicityResult monotonicity_check(const CoupledFlowState& state);

}  // namespace ricciwave
