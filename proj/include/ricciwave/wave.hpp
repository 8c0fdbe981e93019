#pragma once

#include <span>
#include <vector>

#include "ricciwave/heat.hpp"
#include "ricciwave/metrics.hpp"
#include "ricciwave/types.hpp"

namespace ricciwave {

/// Terminal velocity prescription at t = T.
///   plain:            dt_u(T) = -R(T, x)
///   heat_compatible:  dt_u(T) = -Lap_g h - R(T, x)   (default; the choice
///                     consistent with the backward heat equation)
enum class VelocityMode { plain, heat_compatible };

struct WaveConfig {
    const MetricFamily* family = nullptr;
    int N = 8;
    Profile h;
    VelocityMode velocity_mode = VelocityMode::heat_compatible;
    double c_shift = 0.0;  // >0: shifted wave operator, Euclidean families only
    double t0 = 0.0;
    double T = 0.0;
    GridSpec x_grid;
    double dr = 0.0;
    double r_min_fraction = 0.5;  // r_min = fraction * sqrt(2 N t0)
    double pad_slack = 1.2;       // causal padding multiplier beyond sqrt(2NT)
    double dt_safety = 0.4;       // Courant factor in (0, 1)
    int store_every = 1;          // slice recorded every k-th step
    int full_every = 0;           // full (x, r) level stored every k-th step (0 = never)
    std::size_t max_grid_points = 200'000'000;
};

/// Config plus the derived r-grid. r_max is sized so that the influence of the
/// r boundary, moving at local speed sqrt(N/(2t)), cannot reach the slice
/// curve r = sqrt(2Nt) within [t0, T] (with pad_slack margin).
struct WaveProblem {
    WaveConfig cfg;
    GridSpec r_grid;
    bool dirichlet_x;  // x boundary rows frozen at the terminal-data extension
    // Flux-form half-node weights (keep the discrete spatial operator similar
    // to a symmetric one, a stability requirement for leapfrog):
    // radial  r^{1-N} d/dr (r^{N-1} du/dr): r_wp[i] = (r_{i+1/2}/r_i)^{N-1}
    std::vector<double> r_wp, r_wm;
    // polar (sphere2)  (1/sin) d/dth (sin du/dth): x_wp[j] = sin(th_{j+1/2})/sin(th_j)
    std::vector<double> x_wp, x_wm;
    double cfl_weight_r = 1.0;  // max (r_wp + r_wm)/2, scales the Courant bound
    double cfl_weight_x = 1.0;
};

/// One time level of the first-order (u, v = dt_u) system; index [ix*nr + ir].
struct WaveState {
    double t = 0.0;
    std::vector<double> u;
    std::vector<double> v;
};

/// Full stored (t, x, r) levels, level-major [it][ix][ir].
struct Field3D {
    std::vector<double> times;
    GridSpec x;
    GridSpec r;
    std::vector<double> values;
};

struct WaveRecord {
    SpaceTimeField slice;            // u(t, x, sqrt(2Nt)), times decreasing
    Field3D levels;                  // populated when cfg.full_every > 0
    std::vector<double> dt_history;  // accepted step sizes, in march order
    double max_abs_u = 0.0;
};

WaveProblem build_wave_problem(const WaveConfig& cfg);

/// The terminal level: u = h(x) for every r, v per velocity_mode.
WaveState terminal_state(const WaveProblem& p);

/// Largest stable backward step from time t (Courant bound evaluated at the
/// faster end t - dt, solved self-consistently); clipped to land on t0.
double cfl_dt(const WaveProblem& p, double t);

/// One backward leapfrog step of size dt (kick-drift-kick; the damping term is
/// linear in v and absorbed implicitly in the closing half-kick).
void step(const WaveProblem& p, WaveState& s, double dt);

/// Cubic-interpolated restriction of one stored level to r = sqrt(2Nt).
std::vector<double> slice_row(const WaveProblem& p, const WaveState& s);

/// Restriction of stored levels to the hypersurface r = sqrt(2Nt).
SpaceTimeField slice_hypersurface(const Field3D& levels, int N);

/// Marches T -> t0 recording the slice (and optionally full levels).
WaveRecord solve_backward_wave(const WaveProblem& p);

/// Reference backward-heat value the slice should approach as N -> infinity:
/// kernel closed form for Euclidean data, c + ln((1-2t)/(1-2T)) for constant
/// data on sphere2, otherwise a fine-grid heat solve.
double heat_oracle(const WaveConfig& cfg, double t, double x);

struct SweepRow {
    int N = 0;
    double e = 0.0;        // max-abs slice error over the probe window
    double dt_min = 0.0;
    double runtime = 0.0;  // seconds
    bool diverged = false;
};

/// Runs the solve for each N and scores the slice against heat_oracle over the
/// probe window [t0 + probe_margin*(T-t0), T - probe_margin*(T-t0)].
std::vector<SweepRow> n_sweep(const WaveConfig& tmpl, std::span<const int> Ns,
                              double probe_margin = 0.1);

}  // namespace ricciwave
