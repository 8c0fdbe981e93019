#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ricciwave/gradientflow.hpp"
#include "ricciwave/metrics.hpp"

using namespace ricciwave;

namespace {

constexpr double kPi = std::numbers::pi;

GridSpec sphere_grid(int n) {
    const double h = kPi / (n + 1);
    return GridSpec{h, h, n};
}

}  // namespace

TEST_SUITE("gradientflow") {

TEST_CASE("euclid1: everything vanishes identically") {
    const GridSpec xg{-2.0, 0.1, 41};
    const CoupledFlowState st = make_coupled_flow(metric_family("euclid1"), 0.2, 0.5, xg, 1e-3);
    const MonotonicityResult r = monotonicity_check(st);
    CHECK(r.rn_drift == 0.0);
    for (double v : r.F) CHECK(v == 0.0);
    for (double v : r.lhs) CHECK(v == 0.0);
    for (double v : r.rhs) CHECK(v == 0.0);

    const SpaceTimeField f = f_evolution(metric_family("euclid1"), 0.2, 0.5, xg, 1e-3, 50);
    for (double v : f.values) CHECK(v == 0.0);
}

TEST_CASE("sphere2 potential is the closed-form log factor, uniform in theta") {
    const double t0 = 0.1, T = 0.4;
    const SpaceTimeField f =
        f_evolution(metric_family("sphere2"), t0, T, sphere_grid(201), 1e-4, 300);
    CHECK(f.times.front() == T);
    // terminal normalization f(T, .) = 0
    for (int ix = 0; ix < f.x.n; ++ix) CHECK(f.at(0, ix) == 0.0);
    for (std::size_t it = 0; it < f.times.size(); ++it) {
        const double ref = std::log((1 - 2 * f.times[it]) / (1 - 2 * T));
        for (int ix = 0; ix < f.x.n; ++ix) {
            CHECK(f.at(it, ix) == doctest::Approx(ref).epsilon(1e-7));
        }
    }
}

TEST_CASE("F-functional closed forms") {
    const MetricFamily& s2 = metric_family("sphere2");
    const GridSpec xg = sphere_grid(401);
    const CoupledFlowState st = make_coupled_flow(s2, 0.1, 0.4, xg, 1e-3);
    // R = 0, f constant: F = 0 (euclid)
    const GridSpec eg{-2.0, 0.1, 41};
    const std::vector<double> fconst(41, 0.7);
    CHECK(f_functional(metric_family("euclid1"), fconst, 0.2,
                       std::vector<double>(41, 1.0), eg) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // sphere2, f spatially constant: F(t) = R(t) * mass = 8 pi (1-2T)/(1-2t)
    const std::vector<double> f0(xg.n, 0.3);
    const double t = 0.2;
    const double expect = 8.0 * kPi * (1 - 2 * 0.4) / (1 - 2 * t);
    // tolerance set by the O(h^2) pole-closure quadrature at n = 401
    CHECK(f_functional(s2, f0, t, st.dm_ref, xg) ==
          doctest::Approx(expect).epsilon(1e-5));
    // invariance under constant shifts of f
    const std::vector<double> f1(xg.n, -4.1);
    CHECK(f_functional(s2, f0, t, st.dm_ref, xg) ==
          doctest::Approx(f_functional(s2, f1, t, st.dm_ref, xg)).epsilon(1e-12));
}

TEST_CASE("monotonicity identity on the shrinking sphere") {
    const double t0 = 0.1, T = 0.4, dt = 1e-4;
    const CoupledFlowState st =
        make_coupled_flow(metric_family("sphere2"), t0, T, sphere_grid(401), dt);
    const MonotonicityResult r = monotonicity_check(st);

    // dF/dt matches 2 Int |Ric|^2 dm = 16 pi (1-2T)/(1-2t)^2 (interior points)
    for (std::size_t k = 1; k + 1 < r.times.size(); ++k) {
        const double t = r.times[k];
        const double ref = 16.0 * kPi * (1 - 2 * T) / ((1 - 2 * t) * (1 - 2 * t));
        CHECK(r.lhs[k - 1] == doctest::Approx(ref).epsilon(1e-5));
        CHECK(r.rhs[k] == doctest::Approx(ref).epsilon(1e-5));
        CHECK(r.lhs[k - 1] >= 0.0);  // F nondecreasing forward in time
    }
    // F itself matches the closed form 8 pi (1-2T)/(1-2t)
    for (std::size_t k = 0; k < r.times.size(); k += 500) {
        const double ref = 8.0 * kPi * (1 - 2 * T) / (1 - 2 * r.times[k]);
        CHECK(r.F[k] == doctest::Approx(ref).epsilon(1e-5));
    }
    // e^{-f} dmu(t) is conserved: relative drift at the integrator's accuracy
    CHECK(r.rn_drift < 1e-6);
}

}  // TEST_SUITE
