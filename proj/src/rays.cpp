#include "ricciwave/rays.hpp"

#include <cmath>
#include <string>

// GCC at -O2 reports a false-positive -Wmaybe-uninitialized on the by-value
// MetricSample returned from metric_at when it is read inside a loop.
#if defined(__GNUC__) && !defined(__clang__)
#pragma GCC diagnostic ignored "-Wmaybe-uninitialized"
#endif

namespace ricciwave {

namespace {

void check_point(const PhasePoint& p, const MetricFamily& family) {
    if (static_cast<int>(p.x.size()) != family.spatial_dim) {
        throw DomainError("rays: x dimension mismatch for family " + std::string(family.name));
    }
    if (p.x.size() != p.xi.size() || p.y.size() != p.eta.size()) {
        throw DomainError("rays: covector dimension mismatch");
    }
    if (p.N < 2) throw DomainError("rays: N >= 2 required");
    if (static_cast<int>(p.y.size()) != p.N) {
        throw DomainError("rays: |y| must have length N");
    }
}

bool in_domain(const PhasePoint& p, const MetricFamily& family) {
    if (!family.time_domain.contains(p.t)) return false;
    for (double xi : p.x) {
        if (xi <= family.x_domain.lo || xi >= family.x_domain.hi) return false;
    }
    return true;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace

double principal_symbol(const PhasePoint& point, const MetricFamily& family) {
    check_point(point, family);
    if (!in_domain(point, family)) {
        throw DomainError("principal_symbol: point outside metric domain");
    }
    const MetricSample m = metric_at(family, point.t, point.x);
    double xi2 = 0.0;
    for (int i = 0; i < family.spatial_dim; ++i) {
        for (int j = 0; j < family.spatial_dim; ++j) {
            xi2 += m.g_inv[i][j] * point.xi[i] * point.xi[j];
        }
    }
    return (2.0 * point.t / point.N) * point.tau * point.tau - xi2 - dot(point.eta, point.eta);
}

PhaseTangent hamiltonian_field(const PhasePoint& point, const MetricFamily& family) {
    check_point(point, family);
    if (!in_domain(point, family)) {
        throw DomainError("hamiltonian_field: point outside metric domain");
    }
    const MetricSample m = metric_at(family, point.t, point.x);
    PhaseTangent v;
    v.t_dot = 4.0 * point.t * point.tau / point.N;
    v.tau_dot = -2.0 * point.tau * point.tau / point.N;
    v.x_dot.assign(point.x.size(), 0.0);
    v.xi_dot.assign(point.x.size(), 0.0);
    for (int i = 0; i < family.spatial_dim; ++i) {
        for (int j = 0; j < family.spatial_dim; ++j) {
            v.x_dot[i] -= 2.0 * m.g_inv[i][j] * point.xi[j];
            v.tau_dot += m.dginv_dt[i][j] * point.xi[i] * point.xi[j];
            for (int k = 0; k < family.spatial_dim; ++k) {
                v.xi_dot[k] += m.dginv_dx[k][i][j] * point.xi[i] * point.xi[j];
            }
        }
    }
    v.y_dot.resize(point.y.size());
    for (std::size_t i = 0; i < point.y.size(); ++i) v.y_dot[i] = -2.0 * point.eta[i];
    v.eta_dot.assign(point.eta.size(), 0.0);
    return v;
}

namespace {

PhasePoint advance(const PhasePoint& p, const PhaseTangent& v, double h) {
    PhasePoint q = p;
    q.t += h * v.t_dot;
    q.tau += h * v.tau_dot;
    for (std::size_t i = 0; i < q.x.size(); ++i) {
        q.x[i] += h * v.x_dot[i];
        q.xi[i] += h * v.xi_dot[i];
    }
    for (std::size_t i = 0; i < q.y.size(); ++i) {
        q.y[i] += h * v.y_dot[i];
        q.eta[i] += h * v.eta_dot[i];
    }
    return q;
}

void accumulate(PhaseTangent& acc, const PhaseTangent& v, double w) {
    acc.t_dot += w * v.t_dot;
    acc.tau_dot += w * v.tau_dot;
    for (std::size_t i = 0; i < acc.x_dot.size(); ++i) {
        acc.x_dot[i] += w * v.x_dot[i];
        acc.xi_dot[i] += w * v.xi_dot[i];
    }
    for (std::size_t i = 0; i < acc.y_dot.size(); ++i) {
        acc.y_dot[i] += w * v.y_dot[i];
        acc.eta_dot[i] += w * v.eta_dot[i];
    }
}

}  // namespace

RayTrajectory integrate_ray(const PhasePoint& point0, const MetricFamily& family,
                            double s_max, double step) {
    check_point(point0, family);
    if (!(step > 0.0) || !(s_max >= 0.0)) throw DomainError("integrate_ray: bad step/s_max");
    RayTrajectory traj;
    traj.step = step;
    traj.s.push_back(0.0);
    traj.points.push_back(point0);
    if (!in_domain(point0, family)) {
        traj.escaped = true;
        return traj;
    }
    const int nsteps = static_cast<int>(std::llround(s_max / step));
    PhasePoint p = point0;
    for (int k = 0; k < nsteps; ++k) {
        try {
            const PhaseTangent k1 = hamiltonian_field(p, family);
            const PhaseTangent k2 = hamiltonian_field(advance(p, k1, 0.5 * step), family);
            const PhaseTangent k3 = hamiltonian_field(advance(p, k2, 0.5 * step), family);
            const PhaseTangent k4 = hamiltonian_field(advance(p, k3, step), family);
            PhaseTangent sum = k1;
            accumulate(sum, k2, 2.0);
            accumulate(sum, k3, 2.0);
            accumulate(sum, k4, 1.0);
            p = advance(p, sum, step / 6.0);
        } catch (const DomainError&) {
            traj.escaped = true;
            return traj;
        }
        if (!in_domain(p, family)) {
            traj.escaped = true;
            return traj;
        }
        traj.s.push_back(step * (k + 1));
        traj.points.push_back(p);
    }
    return traj;
}

PhasePoint euclid_ray_closed_form(const PhasePoint& point0, double s) {
    if (point0.N < 2) throw DomainError("euclid_ray_closed_form: N >= 2 required");
    PhasePoint p = point0;
    for (std::size_t i = 0; i < p.x.size(); ++i) p.x[i] -= 2.0 * point0.xi[i] * s;
    for (std::size_t i = 0; i < p.y.size(); ++i) p.y[i] -= 2.0 * point0.eta[i] * s;
    const double tau0 = point0.tau;
    if (tau0 != 0.0) {
        const double denom = 2.0 * s * tau0 + point0.N;
        if (std::abs(denom) < 1e-12) {
            throw DomainError("euclid_ray_closed_form: pole 2 s tau0 + N = 0");
        }
        p.tau = tau0 * point0.N / denom;
        const double lin = s / point0.N + 1.0 / (2.0 * tau0);
        p.t = 4.0 * tau0 * tau0 * point0.t * lin * lin;
    }
    return p;
}

WfResult classify_wf_infinity(const PhasePoint& point0, const MetricFamily& family,
                              std::span<const int> Ns, double s_probe) {
    if (Ns.size() < 2) throw DomainError("classify_wf_infinity: need at least 2 Ns");
    const bool euclid = family.id != FamilyId::sphere2;

    // direction magnitude in the covector slot, measured through g^{ij}
    double xihat2 = 0.0;
    {
        const MetricSample m = metric_at(family, point0.t, point0.x);
        for (int i = 0; i < family.spatial_dim; ++i) {
            for (int j = 0; j < family.spatial_dim; ++j) {
                xihat2 += m.g_inv[i][j] * point0.xi[i] * point0.xi[j];
            }
        }
    }
    double etahat2 = 0.0;
    for (double e : point0.eta) etahat2 += e * e;
    const double qhat = xihat2 + etahat2;

    WfResult res;
    if (point0.tau == 0.0) {
        // characteristic forces xi = eta = 0; the flow then fixes (t, x)
        res.cls = (qhat == 0.0) ? WfClass::terminal_stationary : WfClass::regular;
        return res;
    }
    if (qhat == 0.0) {
        // p = 2 t tau^2 / N != 0 for every N: never characteristic
        res.cls = WfClass::regular;
        return res;
    }

    for (int N : Ns) {
        if (N < 2) throw DomainError("classify_wf_infinity: N >= 2 required");
        PhasePoint seed = point0;
        seed.N = N;
        seed.y.assign(N, 0.0);
        seed.eta.assign(N, 0.0);
        // rescale the covector direction so p^(N) = 0
        const double target = 2.0 * seed.t * seed.tau * seed.tau / N;
        const double lambda = std::sqrt(target / qhat);
        for (double& v : seed.xi) v *= lambda;
        const double eta_mag = lambda;  // direction components copied below
        for (std::size_t i = 0; i < point0.eta.size() && i < seed.eta.size(); ++i) {
            seed.eta[i] = eta_mag * point0.eta[i];
        }

        const double s_eff = s_probe * N;
        PhasePoint end;
        if (euclid) {
            end = euclid_ray_closed_form(seed, s_eff);
        } else {
            RayTrajectory traj = integrate_ray(seed, family, s_eff, 1e-3);
            if (traj.escaped) {
                res.cls = WfClass::indeterminate;
                return res;
            }
            end = traj.points.back();
        }
        double disp2 = 0.0;
        for (std::size_t i = 0; i < end.x.size(); ++i) disp2 += (end.x[i] - seed.x[i]) * (end.x[i] - seed.x[i]);
        for (std::size_t i = 0; i < end.y.size(); ++i) disp2 += (end.y[i] - seed.y[i]) * (end.y[i] - seed.y[i]);
        res.scaled_displacements.push_back(disp2 / N);
    }

    double lo = res.scaled_displacements[0], hi = lo;
    for (double d : res.scaled_displacements) {
        lo = std::min(lo, d);
        hi = std::max(hi, d);
    }
    res.scale_spread = (hi - lo) / std::max(std::abs(hi), 1e-300);
    res.cls = (res.scale_spread <= 1e-6) ? WfClass::escapes_to_infinity : WfClass::indeterminate;
    return res;
}

}  // namespace ricciwave
