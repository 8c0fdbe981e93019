#include "ricciwave/lift.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace ricciwave {

BaseField BaseField::kernel(const Profile& h, double T) {
    BaseField b;
    b.w = [h, T](double t, double x) { return gaussian_kernel_derivs(h, t, x, T).u; };
    b.w_t = [h, T](double t, double x) { return gaussian_kernel_derivs(h, t, x, T).u_t; };
    b.w_tt = [h, T](double t, double x) { return gaussian_kernel_derivs(h, t, x, T).u_tt; };
    b.lap_x = [h, T](double t, double x) { return gaussian_kernel_derivs(h, t, x, T).lap_x; };
    return b;
}

BaseField BaseField::affine(double a, double bx, double c) {
    BaseField b;
    b.w = [a, bx, c](double t, double x) { return a * t + bx * x + c; };
    b.w_t = [a](double, double) { return a; };
    b.w_tt = [](double, double) { return 0.0; };
    b.lap_x = [](double, double) { return 0.0; };
    return b;
}

std::pair<double, double> dy_laplacian_of_lift(const BaseField& w, int N, double t, double x) {
    if (t <= 0.0) throw DomainError("dy_laplacian_of_lift: t <= 0 (r = 0 pole)");
    if (N < 2) throw DomainError("dy_laplacian_of_lift: N >= 2 required");
    const double r = std::sqrt(2.0 * N * t);
    const double wt = w.w_t(t, x);
    const double wtt = w.w_tt(t, x);
    // chain rule through t = r^2/(2N): u~_r = w_t r/N, u~_rr = w_tt (r/N)^2 + w_t/N
    const double u_r = wt * r / N;
    const double u_rr = wtt * (r / N) * (r / N) + wt / N;
    const double lhs = u_rr + (N - 1.0) / r * u_r;
    const double rhs = wt + (2.0 * t / N) * wtt;
    return {lhs, rhs};
}

SpaceTimeField almost_harmonic_residual(const BaseField& w, int N,
                                        std::span<const double> times,
                                        const GridSpec& x_grid) {
    if (N < 2) throw DomainError("almost_harmonic_residual: N >= 2 required");
    SpaceTimeField out;
    out.x = x_grid;
    for (double t : times) {
        if (t <= 0.0) throw DomainError("almost_harmonic_residual: t <= 0");
        for (int i = 0; i < x_grid.n; ++i) {
            const double x = x_grid.at(i);
            const double heat_defect = w.w_t(t, x) + w.lap_x(t, x);
            if (std::abs(heat_defect) > 1e-9) {
                throw DomainError(
                    "almost_harmonic_residual: base field violates its heat equation "
                    "(|w_t + lap_x w| = " + std::to_string(std::abs(heat_defect)) +
                    " at t = " + std::to_string(t) + ", x = " + std::to_string(x) + ")");
            }
        }
        out.times.push_back(t);
        for (int i = 0; i < x_grid.n; ++i) {
            const double x = x_grid.at(i);
            const auto [lhs, rhs] = dy_laplacian_of_lift(w, N, t, x);
            (void)rhs;
            out.values.push_back(w.lap_x(t, x) + lhs);
        }
    }
    return out;
}

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] via Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
}

}  // namespace

std::vector<double> symmetrize_small_N(
    const std::function<double(std::span<const double>)>& f, int N,
    int quadrature_points, std::span<const double> radii) {
    if (N != 2 && N != 3) throw DomainError("symmetrize_small_N: N must be 2 or 3");
    if (quadrature_points < 8) throw DomainError("symmetrize_small_N: quadrature_points < 8");

    std::vector<double> out;
    out.reserve(radii.size());
    if (N == 2) {
        const int nq = quadrature_points;
        for (double r : radii) {
            double acc = 0.0;
            for (int k = 0; k < nq; ++k) {
                const double phi = 2.0 * std::numbers::pi * k / nq;
                const double y[2] = {r * std::cos(phi), r * std::sin(phi)};
                acc += f(std::span<const double>{y, 2});
            }
            out.push_back(acc / nq);
        }
        return out;
    }
    std::vector<double> mu, wt;
    gauss_legendre(quadrature_points, mu, wt);
    const int nphi = 2 * quadrature_points;
    for (double r : radii) {
        double acc = 0.0;
        for (int j = 0; j < quadrature_points; ++j) {
            const double c = mu[j];
            const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
            double ring = 0.0;
            for (int k = 0; k < nphi; ++k) {
                const double phi = 2.0 * std::numbers::pi * k / nphi;
                const double y[3] = {r * s * std::cos(phi), r * s * std::sin(phi), r * c};
                ring += f(std::span<const double>{y, 3});
            }
            acc += wt[j] * ring / nphi;
        }
        out.push_back(acc / 2.0);  // weights sum to 2 on [-1,1]
    }
    return out;
}

}  // namespace ricciwave
