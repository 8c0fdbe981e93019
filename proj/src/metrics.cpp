#include "ricciwave/metrics.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>

#include "ricciwave/kernels.hpp"

namespace ricciwave {

namespace {

constexpr double kInf = 1e300;

const MetricFamily kEuclid1{FamilyId::euclid1, "euclid1", 1, {-kInf, kInf}, {-kInf, kInf}};
const MetricFamily kEuclid2{FamilyId::euclid2, "euclid2", 2, {-kInf, kInf}, {-kInf, kInf}};
const MetricFamily kSphere2{FamilyId::sphere2, "sphere2", 1, {-kInf, 0.5}, {0.0, std::numbers::pi}};

void check_domain(const MetricFamily& f, double t, std::span<const double> x) {
    if (!f.time_domain.contains(t)) {
        throw DomainError(std::string(f.name) + ": time t = " + std::to_string(t) +
                          " outside flow domain");
    }
    if (static_cast<int>(x.size()) != f.spatial_dim) {
        throw DomainError(std::string(f.name) + ": expected " +
                          std::to_string(f.spatial_dim) + " spatial coordinates, got " +
                          std::to_string(x.size()));
    }
    for (double xi : x) {
        if (xi <= f.x_domain.lo || xi >= f.x_domain.hi) {
            if (f.id == FamilyId::sphere2) {
                throw DomainError(std::string(f.name) + ": coordinate theta = " +
                                  std::to_string(xi) + " outside (0, pi)");
            }
            throw DomainError(std::string(f.name) + ": coordinate x = " +
                              std::to_string(xi) + " outside domain");
        }
    }
}

}  // namespace

const MetricFamily& metric_family(std::string_view name) {
    if (name == "euclid1") return kEuclid1;
    if (name == "euclid2") return kEuclid2;
    if (name == "sphere2") return kSphere2;
    throw ConfigError("unknown metric family '" + std::string(name) + "'");
}

MetricSample metric_at(const MetricFamily& family, double t, std::span<const double> x) {
    check_domain(family, t, x);
    MetricSample s{};
    switch (family.id) {
        case FamilyId::euclid1:
            s.g_inv[0][0] = 1.0;
            s.vol_weight = 1.0;
            break;
        case FamilyId::euclid2:
            s.g_inv[0][0] = 1.0;
            s.g_inv[1][1] = 1.0;
            s.vol_weight = 1.0;
            break;
        case FamilyId::sphere2: {
            // g(t) = (1-2t) g_unit, R = 2/(1-2t), gdot = -2 Ric = -R g
            const double shrink = 1.0 - 2.0 * t;
            s.g_inv[0][0] = 1.0 / shrink;
            s.R = 2.0 / shrink;
            s.dginv_dt[0][0] = 2.0 / (shrink * shrink);
            s.tr_gdot = -2.0 * s.R;
            s.vol_weight = 2.0 * std::numbers::pi * shrink * std::sin(x[0]);
            break;
        }
    }
    return s;
}

std::vector<double> laplace_beltrami(const MetricFamily& family, double t,
                                     std::span<const double> field, double spacing,
                                     double x0) {
    if (family.spatial_dim != 1) {
        throw DomainError(std::string(family.name) + ": use laplace_beltrami_2d");
    }
    const int n = static_cast<int>(field.size());
    if (n < 3) throw DomainError("laplace_beltrami: grid shorter than 3 points");
    for (double v : field) {
        if (!std::isfinite(v)) throw DomainError("laplace_beltrami: non-finite field value");
    }
    check_domain(family, t, std::span<const double>{&x0, 1});
    const double x_last = x0 + spacing * (n - 1);
    check_domain(family, t, std::span<const double>{&x_last, 1});

    std::vector<double> out(n);
    const double inv_h2 = 1.0 / (spacing * spacing);
    kernels::active().second_diff(field.data(), inv_h2, out.data(), n);
    // one-sided second differences at the ends (second order, 4 points)
    if (n >= 4) {
        out[0] = (2.0 * field[0] - 5.0 * field[1] + 4.0 * field[2] - field[3]) * inv_h2;
        out[n - 1] =
            (2.0 * field[n - 1] - 5.0 * field[n - 2] + 4.0 * field[n - 3] - field[n - 4]) * inv_h2;
    } else {
        out[0] = out[1];
        out[n - 1] = out[1];
    }

    if (family.id == FamilyId::sphere2) {
        const double ginv = 1.0 / (1.0 - 2.0 * t);
        const double inv_2h = 1.0 / (2.0 * spacing);
        for (int i = 0; i < n; ++i) {
            double d1;
            if (i == 0) {
                d1 = (-3.0 * field[0] + 4.0 * field[1] - field[2]) * inv_2h;
            } else if (i == n - 1) {
                d1 = (3.0 * field[n - 1] - 4.0 * field[n - 2] + field[n - 3]) * inv_2h;
            } else {
                d1 = (field[i + 1] - field[i - 1]) * inv_2h;
            }
            const double theta = x0 + spacing * i;
            out[i] = ginv * (out[i] + d1 / std::tan(theta));
        }
    }
    return out;
}

std::vector<double> laplace_beltrami_2d(const MetricFamily& family, double t,
                                        std::span<const double> field,
                                        int nx, int ny, double spacing) {
    if (family.id != FamilyId::euclid2) {
        throw DomainError(std::string(family.name) + ": laplace_beltrami_2d is euclid2-only");
    }
    if (nx < 3 || ny < 3) throw DomainError("laplace_beltrami_2d: grid shorter than 3 points");
    if (static_cast<int>(field.size()) != nx * ny) {
        throw DomainError("laplace_beltrami_2d: field size mismatch");
    }
    for (double v : field) {
        if (!std::isfinite(v)) throw DomainError("laplace_beltrami_2d: non-finite field value");
    }
    (void)t;
    std::vector<double> out(field.size());
    const double inv_h2 = 1.0 / (spacing * spacing);
    auto idx = [ny](int i, int j) { return static_cast<size_t>(i) * ny + j; };
    auto d2 = [&](double a, double b, double c) { return ((a - 2.0 * b) + c) * inv_h2; };
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const int ic = (i == 0) ? 1 : (i == nx - 1) ? nx - 2 : i;
            const int jc = (j == 0) ? 1 : (j == ny - 1) ? ny - 2 : j;
            out[idx(i, j)] = d2(field[idx(ic - 1, j)], field[idx(ic, j)], field[idx(ic + 1, j)]) +
                             d2(field[idx(i, jc - 1)], field[idx(i, jc)], field[idx(i, jc + 1)]);
        }
    }
    return out;
}

}  // namespace ricciwave
