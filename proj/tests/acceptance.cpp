// Acceptance harness: one criterion per invocation (argv[1] in 1..8), one
// PASS/FAIL line per criterion on stdout. All tolerances are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <string>
#include <vector>

#include "ricciwave/gradientflow.hpp"
#include "ricciwave/harness.hpp"
#include "ricciwave/heat.hpp"
#include "ricciwave/metrics.hpp"
#include "ricciwave/rays.hpp"
#include "ricciwave/wave.hpp"

using namespace ricciwave;

namespace {

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

bool report(int id, bool ok, const std::string& what) {
    std::printf("criterion %d: %s - %s\n", id, ok ? "PASS" : "FAIL", what.c_str());
    return ok;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

ExperimentConfig defaults(const std::string& name,
                          const std::vector<std::string>& overrides = {}) {
    return load_config("", name, overrides);
}

// ---- criterion 1: lifted-Laplacian residual is exactly (2t/N) w_tt ---------

bool criterion1() {
    Timer timer;
    const ResultTable t = run_experiment(defaults("euclid-residual"));
    // recompute the analytic maximum of |(2t/N) w_tt| on the experiment's grid
    const Profile h = Profile::gaussian(0.0, 1.0);
    const double T = 1.0;
    double peak_tt = 0.0;  // max over the (t, x) grid of |t * w_tt|
    for (int i = 0; i < 7; ++i) {
        const double tt = 0.3 + 0.6 * i / 6.0;
        for (int ix = 0; ix <= 60; ++ix) {
            const double x = -3.0 + 0.1 * ix;
            peak_tt = std::max(peak_tt,
                               std::abs(tt * gaussian_kernel_derivs(h, tt, x, T).u_tt));
        }
    }
    bool exact = true;
    for (const auto& row : t.rows) {
        const double expect = 2.0 * peak_tt / row[0];
        exact = exact && std::abs(row[1] - expect) <= 1e-12 * expect;
    }
    const RateFit f = fit_rate(t, "N", "residual_max");
    const double wall = timer.seconds();
    const bool ok = exact && std::abs(f.slope + 1.0) <= 1e-6 &&
                    f.r_squared > 0.999999 && wall < 5.0;
    return report(1, ok,
                  "almost-harmonicity residual == (2t/N) max|w_tt|, log-log slope " +
                      fmt(f.slope) + " (want -1 +- 1e-6), r^2 " + fmt(f.r_squared) +
                      ", " + fmt(wall) + " s (budget 5 s)");
}

// ---- criterion 2: Euclidean wave -> heat convergence ------------------------

bool criterion2() {
    Timer timer;
    const ResultTable t = run_experiment(defaults("euclid-wave-sweep"));
    bool decreasing = true, finite = true;
    std::string es;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        finite = finite && t.rows[i][4] == 0.0;
        if (i > 0) decreasing = decreasing && t.rows[i][1] < t.rows[i - 1][1];
        es += (i ? ", " : "") + std::string("e(") + fmt(t.rows[i][0]) + ")=" +
              fmt(t.rows[i][1]);
    }
    double slope = 0.0;
    bool slope_ok = false;
    if (finite) {
        slope = fit_rate(t, "N", "e").slope;
        slope_ok = slope >= -1.5 && slope <= -0.5;
    }
    const double e64 = t.rows.back()[1];
    const double wall = timer.seconds();
    const bool ok =
        finite && decreasing && slope_ok && e64 < 5e-3 && wall < 600.0;
    return report(2, ok,
                  "Euclidean slice error vs kernel oracle: " + es + "; slope " +
                      fmt(slope) + " (want [-1.5,-0.5]), e(64) " + fmt(e64) +
                      " (want < 5e-3), decreasing=" + (decreasing ? "yes" : "no") +
                      ", " + fmt(wall) + " s (budget 600 s)");
}

// ---- criterion 3: constant data is exact for every N ------------------------

bool criterion3() {
    Timer timer;
    WaveConfig c;
    c.family = &metric_family("euclid1");
    c.h = Profile::constant(1.0);
    c.t0 = 0.25;
    c.T = 1.0;
    c.x_grid = GridSpec{-9.6, 0.03, 641};
    c.dr = 0.03;
    const std::vector<int> ns{8, 16, 32, 64};
    double emax = 0.0;
    for (const SweepRow& r : n_sweep(c, ns, 0.1)) emax = std::max(emax, r.e);
    const double wall = timer.seconds();
    const bool ok = emax < 1e-10 && wall < 60.0;
    return report(3, ok,
                  "constant data slice error " + fmt(emax) +
                      " (want < 1e-10 for every N), " + fmt(wall) + " s (budget 60 s)");
}

// ---- criterion 4: sphere fixture convergence --------------------------------

bool criterion4() {
    Timer timer;
    const ResultTable t = run_experiment(defaults("sphere-wave-sweep"));
    bool decreasing = true, finite = true;
    std::string es;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        finite = finite && t.rows[i][4] == 0.0;
        if (i > 0) decreasing = decreasing && t.rows[i][1] < t.rows[i - 1][1];
        es += (i ? ", " : "") + std::string("e(") + fmt(t.rows[i][0]) + ")=" +
              fmt(t.rows[i][1]);
    }
    const double wall = timer.seconds();
    const bool ok = finite && decreasing && wall < 600.0;
    return report(4, ok,
                  "sphere slice error vs 1 + ln((1-2t)/(1-2T)): " + es +
                      "; decreasing=" + std::string(decreasing ? "yes" : "no") + ", " +
                      fmt(wall) + " s (budget 600 s)");
}

// ---- criterion 5: ray integrator vs closed form ------------------------------

bool criterion5() {
    const ResultTable t = run_experiment(defaults("rays-oracle"));
    double max_err = 0.0, p_drift = 0.0, inv_drift = 0.0;
    for (const auto& row : t.rows) {
        max_err = std::max(max_err, row[2]);
        p_drift = std::max(p_drift, row[3]);
        inv_drift = std::max(inv_drift, row[4]);
    }
    const bool ok = t.rows.size() == 100 && max_err < 1e-8 && p_drift < 1e-10 &&
                    inv_drift < 1e-10;
    return report(5, ok,
                  "100 random rays, step 1e-3, s in [0,10]: max err " + fmt(max_err) +
                      " (< 1e-8), symbol drift " + fmt(p_drift) +
                      " (< 1e-10), t*tau^2 drift " + fmt(inv_drift) + " (< 1e-10)");
}

// ---- criterion 6: WF_infinity classifier -------------------------------------

bool criterion6() {
    Timer timer;
    const ResultTable t = run_experiment(defaults("wf-classify"));
    // class codes: 0 = terminal_stationary, 1 = escapes_to_infinity, 2 = regular
    const bool classes = t.rows.size() == 3 && t.rows[0][1] == 0.0 &&
                         t.rows[1][1] == 1.0 && t.rows[2][1] == 2.0;
    const double spread = t.rows.size() == 3 ? t.rows[1][2] : 1.0;
    const double wall = timer.seconds();
    const bool ok = classes && spread <= 1e-6 && wall < 5.0;
    return report(6, ok,
                  "canonical seeds classify as (terminal_stationary, "
                  "escapes_to_infinity, regular); |x(s)-x(0)|^2/N cross-N spread " +
                      fmt(spread) + " (<= 1e-6), " + fmt(wall) + " s (budget 5 s)");
}

// ---- criterion 7: F-functional monotonicity ----------------------------------

bool criterion7() {
    Timer timer;
    const double t0 = 0.1, T = 0.4, dt = 1e-5;
    const double h = std::numbers::pi / 2002.0;
    const CoupledFlowState st =
        make_coupled_flow(metric_family("sphere2"), t0, T, GridSpec{h, h, 2001}, dt);
    const MonotonicityResult r = monotonicity_check(st);
    double max_rel = 0.0;
    bool nondecreasing = true;
    for (std::size_t k = 1; k + 1 < r.times.size(); ++k) {
        const double t = r.times[k];
        const double ref = 16.0 * std::numbers::pi * (1 - 2 * T) /
                           ((1 - 2 * t) * (1 - 2 * t));
        max_rel = std::max(max_rel, std::abs(r.lhs[k - 1] - ref) / ref);
        nondecreasing = nondecreasing && r.lhs[k - 1] >= 0.0;
    }
    const double wall = timer.seconds();
    const bool ok = max_rel < 1e-6 && nondecreasing && r.rn_drift < 1e-8 && wall < 60.0;
    return report(7, ok,
                  "dF/dt vs 16 pi (1-2T)/(1-2t)^2 max rel err " + fmt(max_rel) +
                      " (< 1e-6 at dt=1e-5), F nondecreasing=" +
                      std::string(nondecreasing ? "yes" : "no") +
                      ", reference-measure drift " + fmt(r.rn_drift) + " (< 1e-8), " +
                      fmt(wall) + " s (budget 60 s)");
}

// ---- criterion 8: scheme self-convergence under step halving ------------------

// Scheme-error proxy: max-abs difference between slices at successive
// refinements, over a short horizon below T (the march is compared before the
// mandated boundary pinning injects non-smooth fronts into the window) on the
// shared coarse x-nodes at the final (t = t0) level.
double proxy_gap(const WaveConfig& base, double scale_a, double scale_b) {
    auto solve = [&](double s) {
        WaveConfig c = base;
        const double dx = base.x_grid.step * s;
        if (c.family->id == FamilyId::sphere2) {
            const int n = static_cast<int>(std::llround(std::numbers::pi / dx)) - 1;
            const double h = std::numbers::pi / (n + 1);
            c.x_grid = GridSpec{h, h, n};
        } else {
            const double lo = base.x_grid.lo;
            const double hi = base.x_grid.hi();
            c.x_grid = GridSpec{lo, dx, static_cast<int>(std::llround((hi - lo) / dx)) + 1};
        }
        c.dr = base.dr * s;
        c.dt_safety = base.dt_safety * s;
        return solve_backward_wave(build_wave_problem(c));
    };
    const WaveRecord a = solve(scale_a), b = solve(scale_b);
    const int stride = static_cast<int>(std::llround(scale_a / scale_b));
    const std::size_t ia = a.slice.times.size() - 1;
    const std::size_t ib = b.slice.times.size() - 1;
    double d = 0.0;
    const int off = a.slice.x.n > 2 && b.slice.x.n > 2 &&
                            std::abs(b.slice.x.at(stride - 1) - a.slice.x.at(0)) <
                                1e-12
                        ? stride - 1
                        : 0;
    for (int ix = 0; ix * stride + off < b.slice.x.n && ix < a.slice.x.n; ++ix) {
        d = std::max(d, std::abs(a.slice.at(ia, ix) -
                                 b.slice.at(ib, ix * stride + off)));
    }
    return d;
}

bool criterion8() {
    Timer timer;
    // experiment 2 configuration, short horizon below T
    WaveConfig eu;
    eu.family = &metric_family("euclid1");
    eu.N = 8;
    eu.h = Profile::gaussian(0.0, 1.0);
    eu.t0 = 1.0 - 0.15 * 0.75;  // 15% of the [0.25, 1] march
    eu.T = 1.0;
    eu.x_grid = GridSpec{-9.6, 0.03, 641};
    eu.dr = 0.03;
    const double d1e = proxy_gap(eu, 1.0, 0.5);
    const double d2e = proxy_gap(eu, 0.5, 0.25);
    const double ratio_e = d1e / d2e;

    // experiment 4 configuration, short horizon below T
    WaveConfig sp;
    sp.family = &metric_family("sphere2");
    sp.N = 8;
    sp.h = Profile::constant(1.0);
    sp.t0 = 0.4 - 0.15 * 0.3;  // 15% of the [0.1, 0.4] march
    sp.T = 0.4;
    const double hx = std::numbers::pi / 201.0;
    sp.x_grid = GridSpec{hx, hx, 200};
    sp.dr = 0.02;
    const double d1s = proxy_gap(sp, 1.0, 0.5);
    const double d2s = proxy_gap(sp, 0.5, 0.25);
    const double ratio_s = d1s / d2s;

    const double wall = timer.seconds();
    const bool ok = ratio_e >= 3.5 && ratio_s >= 3.5;
    return report(8, ok,
                  "halving (dx, dr, dt_safety) shrinks the slice-difference proxy by " +
                      fmt(ratio_e) + "x (Euclidean) and " + fmt(ratio_s) +
                      "x (sphere), want >= 3.5x; " + fmt(wall) + " s");
}

}  // namespace

int main(int argc, char** argv) {
    bool ok = true;
    const int which = argc > 1 ? std::atoi(argv[1]) : 0;
    bool (*criteria[])() = {criterion1, criterion2, criterion3, criterion4,
                            criterion5, criterion6, criterion7, criterion8};
    if (which >= 1 && which <= 8) {
        ok = criteria[which - 1]();
    } else {
        for (auto* c : criteria) ok = c() && ok;
    }
    return ok ? 0 : 1;
}
