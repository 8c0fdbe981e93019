#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ricciwave/types.hpp"

namespace ricciwave {

enum class FamilyId { euclid1, euclid2, sphere2 };

/// An exact time-dependent metric family in reduced coordinates. All
/// quantities are analytic closed forms; nothing is differentiated
/// numerically.
///
///   euclid1  flat R^1, static
///   euclid2  flat R^2, static
///   sphere2  shrinking round 2-sphere g(t) = (1-2t) g_unit, axisymmetric
///            reduced coordinate theta in (0, pi), extinct at t = 1/2
struct MetricFamily {
    FamilyId id;
    const char* name;
    int spatial_dim;
    Interval time_domain;
    Interval x_domain;
};

const MetricFamily& metric_family(std::string_view name);

/// Everything the solvers and the ray tracer read at one (t, x).
/// Matrix entries are in reduced coordinates; unused slots (beyond
/// spatial_dim) are zero. vol_weight is the full reduced-measure density:
/// integrating f(x) * vol_weight dx over x_domain reproduces the integral of
/// f over the manifold (for sphere2 this includes the 2*pi*sin(theta) factor
/// of the collapsed azimuthal direction).
struct MetricSample {
    double g_inv[2][2]{};
    double R{};
    double dginv_dt[2][2]{};
    double dginv_dx[2][2][2]{};  // [coordinate][i][j]
    double tr_gdot{};
    double vol_weight{};
};

MetricSample metric_at(const MetricFamily& family, double t, std::span<const double> x);

/// Central-difference Laplace-Beltrami of a 1-D field (families euclid1,
/// sphere2). x0 is the coordinate of field[0]. Endpoint values are computed
/// with second-order one-sided differences.
std::vector<double> laplace_beltrami(const MetricFamily& family, double t,
                                     std::span<const double> field, double spacing,
                                     double x0);

/// 2-D variant for euclid2; field is row-major [ix * ny + iy]. Boundary
/// entries are one-sided in the offending direction.
std::vector<double> laplace_beltrami_2d(const MetricFamily& family, double t,
                                        std::span<const double> field,
                                        int nx, int ny, double spacing);

}  // namespace ricciwave
