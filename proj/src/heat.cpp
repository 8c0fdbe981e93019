#include "ricciwave/heat.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ricciwave {

namespace {

double sq(double v) { return v * v; }

}  // namespace

Profile Profile::constant(double c) {
    Profile p;
    p.kind = Kind::constant;
    p.c = c;
    return p;
}

Profile Profile::gaussian(double center, double width) {
    Profile p;
    p.kind = Kind::gaussian;
    p.center = center;
    p.width = width;
    return p;
}

Profile Profile::cos_theta() {
    Profile p;
    p.kind = Kind::cos_theta;
    return p;
}

Profile Profile::bump(double center, double width) {
    Profile p;
    p.kind = Kind::bump;
    p.center = center;
    p.width = width;
    return p;
}

Profile Profile::parse(std::string_view spec) {
    auto num = [](std::string_view s) { return std::stod(std::string(s)); };
    const auto open = spec.find('(');
    const std::string_view name = spec.substr(0, open);
    std::vector<std::string_view> args;
    if (open != std::string_view::npos) {
        const auto close = spec.find(')', open);
        if (close == std::string_view::npos) throw ConfigError("profile: missing ')'");
        std::string_view body = spec.substr(open + 1, close - open - 1);
        while (!body.empty()) {
            const auto comma = body.find(',');
            args.push_back(body.substr(0, comma));
            if (comma == std::string_view::npos) break;
            body.remove_prefix(comma + 1);
        }
    }
    if (name == "constant") {
        if (args.size() != 1) throw ConfigError("profile: constant(c)");
        return constant(num(args[0]));
    }
    if (name == "gaussian") {
        if (args.size() != 2) throw ConfigError("profile: gaussian(center,width)");
        return gaussian(num(args[0]), num(args[1]));
    }
    if (name == "cos_theta") return cos_theta();
    if (name == "bump") {
        if (args.size() != 2) throw ConfigError("profile: bump(center,width)");
        return bump(num(args[0]), num(args[1]));
    }
    throw ConfigError("unknown profile '" + std::string(spec) + "'");
}

double profile_eval(const Profile& h, double x) {
    switch (h.kind) {
        case Profile::Kind::constant:
            return h.c;
        case Profile::Kind::gaussian:
            return std::exp(-sq(x - h.center) / sq(h.width));
        case Profile::Kind::cos_theta:
            return std::cos(x);
        case Profile::Kind::bump: {
            const double s = (x - h.center) / h.width;
            if (std::abs(s) >= 1.0) return 0.0;
            return std::exp(1.0 - 1.0 / (1.0 - s * s));
        }
    }
    return 0.0;
}

double profile_d1(const Profile& h, double x) {
    switch (h.kind) {
        case Profile::Kind::constant:
            return 0.0;
        case Profile::Kind::gaussian: {
            const double d = x - h.center;
            return -2.0 * d / sq(h.width) * std::exp(-sq(d) / sq(h.width));
        }
        case Profile::Kind::cos_theta:
            return -std::sin(x);
        case Profile::Kind::bump: {
            const double s = (x - h.center) / h.width;
            if (std::abs(s) >= 1.0) return 0.0;
            const double q = 1.0 - s * s;
            return std::exp(1.0 - 1.0 / q) * (-2.0 * s / sq(q)) / h.width;
        }
    }
    return 0.0;
}

double profile_d2(const Profile& h, double x) {
    switch (h.kind) {
        case Profile::Kind::constant:
            return 0.0;
        case Profile::Kind::gaussian: {
            const double w2 = sq(h.width);
            const double d = x - h.center;
            return (4.0 * sq(d) / sq(w2) - 2.0 / w2) * std::exp(-sq(d) / w2);
        }
        case Profile::Kind::cos_theta:
            return -std::cos(x);
        case Profile::Kind::bump: {
            const double s = (x - h.center) / h.width;
            if (std::abs(s) >= 1.0) return 0.0;
            const double q = 1.0 - s * s;
            // d/ds of exp(1 - 1/q): f' = f * (-2s/q^2), then product rule
            const double f = std::exp(1.0 - 1.0 / q);
            const double g1 = -2.0 * s / sq(q);
            const double g2 = (-2.0 * sq(q) + 2.0 * s * 2.0 * q * (-2.0 * s)) / (sq(q) * sq(q));
            return f * (g1 * g1 + g2) / sq(h.width);
        }
    }
    return 0.0;
}

double gaussian_kernel_solution(const Profile& h, double t, std::span<const double> x,
                                double T, int n) {
    if (t > T) throw DomainError("gaussian_kernel_solution: t > T");
    if (h.kind == Profile::Kind::constant) return h.c;
    if (h.kind != Profile::Kind::gaussian) {
        throw DomainError(
            "gaussian_kernel_solution: profile has no closed-form convolution; "
            "use the numerical solver");
    }
    const double sigma = T - t;
    const double B = sq(h.width) + 4.0 * sigma;
    double rho2 = 0.0;
    for (int i = 0; i < n; ++i) rho2 += sq(x[i] - h.center);
    return std::pow(sq(h.width) / B, 0.5 * n) * std::exp(-rho2 / B);
}

KernelDerivs gaussian_kernel_derivs(const Profile& h, double t, double x, double T) {
    KernelDerivs d{};
    if (h.kind == Profile::Kind::constant) {
        d.u = h.c;
        return d;
    }
    if (h.kind != Profile::Kind::gaussian) {
        throw DomainError("gaussian_kernel_derivs: gaussian or constant only");
    }
    const double sigma = T - t;
    const double B = sq(h.width) + 4.0 * sigma;
    const double xc = x - h.center;
    d.u = std::sqrt(sq(h.width) / B) * std::exp(-sq(xc) / B);
    // phi = d/dsigma log u; u_t = -u_sigma, u_tt = u_sigmasigma
    const double phi = -2.0 / B + 4.0 * sq(xc) / sq(B);
    const double phi_p = 8.0 / sq(B) - 32.0 * sq(xc) / (B * sq(B));
    d.u_t = -d.u * phi;
    d.u_tt = d.u * (phi * phi + phi_p);
    d.lap_x = -d.u_t;
    return d;
}

namespace {

struct OperatorRow {
    double a, b, c;  // coefficients of u_{i-1}, u_i, u_{i+1} in Lap_g
};

// Assembles the discrete Laplace-Beltrami row at interior node i.
OperatorRow lap_row(const MetricFamily& fam, double t, const GridSpec& g, int i) {
    const double inv_h2 = 1.0 / sq(g.step);
    if (fam.id == FamilyId::sphere2) {
        const double ginv = 1.0 / (1.0 - 2.0 * t);
        const double cot = 1.0 / std::tan(g.at(i));
        const double inv_2h = 1.0 / (2.0 * g.step);
        return {ginv * (inv_h2 - cot * inv_2h), -2.0 * ginv * inv_h2,
                ginv * (inv_h2 + cot * inv_2h)};
    }
    return {inv_h2, -2.0 * inv_h2, inv_h2};
}

// Mirror (Neumann) row at an end node: u' = 0 there, so the first-order term
// drops and the second difference folds onto the single neighbor.
OperatorRow lap_row_neumann(const MetricFamily& fam, double t, const GridSpec& g) {
    const double inv_h2 = 1.0 / sq(g.step);
    const double ginv = (fam.id == FamilyId::sphere2) ? 1.0 / (1.0 - 2.0 * t) : 1.0;
    return {0.0, -2.0 * ginv * inv_h2, 2.0 * ginv * inv_h2};
}

double scalar_curvature(const MetricFamily& fam, double t) {
    return (fam.id == FamilyId::sphere2) ? 2.0 / (1.0 - 2.0 * t) : 0.0;
}

void thomas_solve(std::vector<double>& lo, std::vector<double>& di,
                  std::vector<double>& up, std::vector<double>& rhs) {
    const int n = static_cast<int>(di.size());
    for (int i = 1; i < n; ++i) {
        const double m = lo[i] / di[i - 1];
        di[i] -= m * up[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    rhs[n - 1] /= di[n - 1];
    for (int i = n - 2; i >= 0; --i) {
        rhs[i] = (rhs[i] - up[i] * rhs[i + 1]) / di[i];
    }
}

bool has_dirichlet_oracle(const HeatProblem& p) {
    return p.family->id == FamilyId::euclid1 &&
           (p.h.kind == Profile::Kind::gaussian || p.h.kind == Profile::Kind::constant);
}

}  // namespace

SpaceTimeField solve_backward_heat(const HeatProblem& p, const LevelObserver& observe) {
    const MetricFamily& fam = *p.family;
    if (!(p.t0 > 0.0 && p.t0 < p.T)) {
        throw DomainError("heat: require 0 < t0 < T strictly");
    }
    if (!fam.time_domain.contains(p.t0) || !fam.time_domain.contains(p.T)) {
        throw DomainError("heat: [t0, T] leaves the flow's time domain");
    }
    if (fam.spatial_dim != 1) {
        throw DomainError(std::string(fam.name) + ": numerical heat solver is 1-D only");
    }
    if (p.x_grid.n < 3) throw DomainError("heat: grid shorter than 3 points");
    if (!(p.dt > 0.0) || p.dt > (p.T - p.t0) / 10.0) {
        throw DomainError("heat: require 0 < dt <= (T - t0)/10");
    }

    const int nx = p.x_grid.n;
    const int nsteps = static_cast<int>(std::ceil((p.T - p.t0) / p.dt - 1e-12));
    const double dtau = (p.T - p.t0) / nsteps;
    const bool pin = has_dirichlet_oracle(p);

    std::vector<double> u(nx);
    for (int i = 0; i < nx; ++i) {
        u[i] = profile_eval(p.h, p.x_grid.at(i));
        if (!std::isfinite(u[i])) throw DomainError("heat: terminal data not finite on grid");
    }

    SpaceTimeField out;
    out.x = p.x_grid;
    auto store = [&](double t) {
        out.times.push_back(t);
        out.values.insert(out.values.end(), u.begin(), u.end());
    };
    store(p.T);
    if (observe) observe(p.T, std::span<const double>{u});

    std::vector<double> lo(nx), di(nx), up(nx), rhs(nx);
    for (int k = 0; k < nsteps; ++k) {
        const double t_old = p.T - dtau * k;
        const double t_new = (k == nsteps - 1) ? p.t0 : t_old - dtau;
        const double R_old = scalar_curvature(fam, t_old);
        const double R_new = scalar_curvature(fam, t_new);
        const double half = 0.5 * dtau;

        // rhs = (I + half A_old) u + half (R_old + R_new)
        for (int i = 1; i < nx - 1; ++i) {
            const OperatorRow r = lap_row(fam, t_old, p.x_grid, i);
            rhs[i] = u[i] + half * (r.a * u[i - 1] + r.b * u[i] + r.c * u[i + 1]) +
                     half * (R_old + R_new);
        }
        // lhs = (I - half A_new)
        for (int i = 1; i < nx - 1; ++i) {
            const OperatorRow r = lap_row(fam, t_new, p.x_grid, i);
            lo[i] = -half * r.a;
            di[i] = 1.0 - half * r.b;
            up[i] = -half * r.c;
        }
        if (pin) {
            const double xl = p.x_grid.at(0);
            const double xr = p.x_grid.at(nx - 1);
            di[0] = 1.0;
            up[0] = 0.0;
            rhs[0] = gaussian_kernel_solution(p.h, t_new, std::span<const double>{&xl, 1}, p.T, 1);
            lo[nx - 1] = 0.0;
            di[nx - 1] = 1.0;
            rhs[nx - 1] =
                gaussian_kernel_solution(p.h, t_new, std::span<const double>{&xr, 1}, p.T, 1);
        } else {
            {
                const OperatorRow ro = lap_row_neumann(fam, t_old, p.x_grid);
                rhs[0] = u[0] + half * (ro.b * u[0] + ro.c * u[1]) + half * (R_old + R_new);
                const OperatorRow rn = lap_row_neumann(fam, t_new, p.x_grid);
                di[0] = 1.0 - half * rn.b;
                up[0] = -half * rn.c;
            }
            {
                const OperatorRow ro = lap_row_neumann(fam, t_old, p.x_grid);
                rhs[nx - 1] = u[nx - 1] + half * (ro.b * u[nx - 1] + ro.c * u[nx - 2]) +
                              half * (R_old + R_new);
                const OperatorRow rn = lap_row_neumann(fam, t_new, p.x_grid);
                lo[nx - 1] = -half * rn.c;
                di[nx - 1] = 1.0 - half * rn.b;
            }
        }

        thomas_solve(lo, di, up, rhs);
        u.swap(rhs);
        for (double v : u) {
            if (!std::isfinite(v)) throw DivergenceError("heat: non-finite value", t_new);
        }
        if ((k + 1) % p.store_every == 0 || k == nsteps - 1) store(t_new);
        if (observe) observe(t_new, std::span<const double>{u});
    }
    return out;
}

SpaceTimeField solve_forward_heat(const HeatProblem& p) {
    if (!(p.T < p.t0 && p.t0 < 0.0)) {
        throw DomainError("forward heat: require T < t0 < 0");
    }
    if (p.family->id == FamilyId::sphere2) {
        throw DomainError("forward heat: Euclidean families only (R == 0 reduction)");
    }
    HeatProblem refl = p;
    refl.t0 = -p.t0;
    refl.T = -p.T;
    SpaceTimeField f = solve_backward_heat(refl);
    for (double& t : f.times) t = -t;
    return f;
}

}  // namespace ricciwave
