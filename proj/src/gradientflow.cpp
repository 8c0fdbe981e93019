#include "ricciwave/gradientflow.hpp"

#include <cmath>
#include <string>

#include "ricciwave/heat.hpp"

namespace ricciwave {

namespace {

// Quadrature of one sampled density against the grid. sphere2 grids sit on a
// pole margin; the integrand's measure density vanishes at the poles, so the
// rule closes the interval with implicit zero-weight pole nodes (h * sum).
double integrate(const MetricFamily& family, std::span<const double> vals,
                 const GridSpec& g) {
    double s = 0.0;
    for (double v : vals) s += v;
    if (family.id != FamilyId::sphere2) {
        s -= 0.5 * (vals.front() + vals.back());
    }
    return s * g.step;
}

}  // namespace

CoupledFlowState make_coupled_flow(const MetricFamily& family, double t0, double T,
                                   const GridSpec& x_grid, double dt) {
    CoupledFlowState st;
    st.family = &family;
    st.t0 = t0;
    st.T = T;
    st.x_grid = x_grid;
    st.dt = dt;
    st.dm_ref.resize(x_grid.n);
    for (int i = 0; i < x_grid.n; ++i) {
        const double x = x_grid.at(i);
        st.dm_ref[i] = metric_at(family, T, std::span<const double>{&x, 1}).vol_weight;
    }
    return st;
}

SpaceTimeField f_evolution(const MetricFamily& family, double t0, double T,
                           const GridSpec& x_grid, double dt, int store_every) {
    HeatProblem hp;
    hp.family = &family;
    hp.h = Profile::constant(0.0);
    hp.t0 = t0;
    hp.T = T;
    hp.x_grid = x_grid;
    hp.dt = dt;
    hp.store_every = store_every;
    return solve_backward_heat(hp);
}

double f_functional(const MetricFamily& family, std::span<const double> f_level,
                    double t, std::span<const double> dm_ref, const GridSpec& x_grid) {
    const int n = x_grid.n;
    if (static_cast<int>(f_level.size()) != n || static_cast<int>(dm_ref.size()) != n) {
        throw DomainError("f_functional: grid/field size mismatch");
    }
    std::vector<double> integrand(n);
    const double inv_2h = 1.0 / (2.0 * x_grid.step);
    for (int i = 0; i < n; ++i) {
        double d1;
        if (i == 0) {
            d1 = (-3.0 * f_level[0] + 4.0 * f_level[1] - f_level[2]) * inv_2h;
        } else if (i == n - 1) {
            d1 = (3.0 * f_level[n - 1] - 4.0 * f_level[n - 2] + f_level[n - 3]) * inv_2h;
        } else {
            d1 = (f_level[i + 1] - f_level[i - 1]) * inv_2h;
        }
        const double x = x_grid.at(i);
        const MetricSample m = metric_at(family, t, std::span<const double>{&x, 1});
        integrand[i] = (m.g_inv[0][0] * d1 * d1 + m.R) * dm_ref[i];
        if (!std::isfinite(integrand[i])) throw DomainError("f_functional: non-finite integrand");
    }
    return integrate(family, integrand, x_grid);
}

MonotonicityResult monotonicity_check(const CoupledFlowState& state) {
    const MetricFamily& family = *state.family;
    MonotonicityResult res;
    const double mass_ref = integrate(family, state.dm_ref, state.x_grid);

    HeatProblem hp;
    hp.family = &family;
    hp.h = Profile::constant(0.0);
    hp.t0 = state.t0;
    hp.T = state.T;
    hp.x_grid = state.x_grid;
    hp.dt = state.dt;
    hp.store_every = 1 << 30;  // levels consumed through the observer only

    std::vector<double> scratch(state.x_grid.n);
    solve_backward_heat(hp, [&](double t, std::span<const double> level) {
        double fmin = level[0], fmax = level[0];
        for (double v : level) {
            fmin = std::min(fmin, v);
            fmax = std::max(fmax, v);
        }
        if (fmax - fmin > 1e-10) {
            throw DomainError(
                "monotonicity_check: f not spatially constant (Hess f unavailable); "
                "spread = " + std::to_string(fmax - fmin));
        }
        res.times.push_back(t);
        res.F.push_back(f_functional(family, level, t, state.dm_ref, state.x_grid));

        // 2 Int |Ric + Hess f|^2 dm with Hess f = 0; on a 2-sphere
        // |Ric|^2_g = R^2/2, on flat families it vanishes.
        double rhs = 0.0;
        if (family.id == FamilyId::sphere2) {
            const double R = 2.0 / (1.0 - 2.0 * t);
            rhs = R * R * mass_ref;  // 2 * (R^2/2) * m
        }
        res.rhs.push_back(rhs);

        // Radon-Nikodym mass Int e^{-f} dmu(t)
        for (int i = 0; i < state.x_grid.n; ++i) {
            const double x = state.x_grid.at(i);
            const double w = metric_at(family, t, std::span<const double>{&x, 1}).vol_weight;
            scratch[i] = std::exp(-level[i]) * w;
        }
        const double m_t = integrate(family, scratch, state.x_grid);
        res.rn_drift = std::max(res.rn_drift, std::abs(m_t - mass_ref) /
                                                  std::max(std::abs(mass_ref), 1e-300));
    });

    // centered difference along the (decreasing) time series
    for (std::size_t k = 1; k + 1 < res.times.size(); ++k) {
        res.lhs.push_back((res.F[k - 1] - res.F[k + 1]) / (res.times[k - 1] - res.times[k + 1]));
    }
    return res;
}

}  // namespace ricciwave
