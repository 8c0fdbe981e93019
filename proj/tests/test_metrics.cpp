#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "ricciwave/metrics.hpp"

using namespace ricciwave;

namespace {

MetricSample at1(const MetricFamily& f, double t, double x) {
    return metric_at(f, t, std::span<const double>{&x, 1});
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("euclid1 is flat and static") {
    const MetricFamily& f = metric_family("euclid1");
    const MetricSample s = at1(f, 0.3, 0.7);
    CHECK(s.g_inv[0][0] == 1.0);
    CHECK(s.R == 0.0);
    CHECK(s.tr_gdot == 0.0);
    CHECK(s.dginv_dt[0][0] == 0.0);
    CHECK(s.vol_weight == 1.0);
}

TEST_CASE("sphere2 closed forms: R(t) = 2/(1-2t)") {
    const MetricFamily& f = metric_family("sphere2");
    CHECK(at1(f, 0.0, std::numbers::pi / 2).R == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(at1(f, 0.25, 1.0).R == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(at1(f, 0.25, 1.0).g_inv[0][0] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("sphere2 identity tr(gdot) = -2R holds exactly on a 10x10 sample") {
    const MetricFamily& f = metric_family("sphere2");
    for (int i = 0; i < 10; ++i) {
        const double t = -0.2 + 0.06 * i;  // stays below 1/2
        for (int j = 0; j < 10; ++j) {
            const double th = 0.2 + j * (std::numbers::pi - 0.4) / 9.0;
            const MetricSample s = at1(f, t, th);
            CHECK(s.tr_gdot + 2.0 * s.R == 0.0);  // exact, not approximate
            CHECK(s.g_inv[0][0] > 0.0);
            CHECK(s.vol_weight > 0.0);
        }
    }
}

TEST_CASE("euclid2 inverse metric is the identity (positive-definite)") {
    const MetricFamily& f = metric_family("euclid2");
    const double x[2] = {0.3, -1.1};
    const MetricSample s = metric_at(f, 0.2, std::span<const double>{x, 2});
    CHECK(s.g_inv[0][0] == 1.0);
    CHECK(s.g_inv[1][1] == 1.0);
    CHECK(s.g_inv[0][1] == 0.0);
    CHECK(s.R == 0.0);
}

TEST_CASE("analytic dginv_dt matches central finite differences to O(step^2)") {
    const MetricFamily& f = metric_family("sphere2");
    const double t = 0.2, th = 1.0, h = 1e-5;
    const double fd =
        (at1(f, t + h, th).g_inv[0][0] - at1(f, t - h, th).g_inv[0][0]) / (2.0 * h);
    CHECK(at1(f, t, th).dginv_dt[0][0] == doctest::Approx(fd).epsilon(1e-9));
    // axisymmetric reduced coordinate: g^{theta theta} is theta-independent
    const double fdx =
        (at1(f, t, th + h).g_inv[0][0] - at1(f, t, th - h).g_inv[0][0]) / (2.0 * h);
    CHECK(at1(f, t, th).dginv_dx[0][0][0] == doctest::Approx(fdx).epsilon(1e-9));
}

TEST_CASE("laplace_beltrami annihilates constants") {
    const MetricFamily& f = metric_family("euclid1");
    const std::vector<double> field(21, 3.5);
    for (double v : laplace_beltrami(f, 0.1, field, 0.1, -1.0)) {
        CHECK(v == doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("laplace_beltrami is exact on quadratics (euclid1)") {
    const MetricFamily& f = metric_family("euclid1");
    std::vector<double> field(21);
    for (int i = 0; i < 21; ++i) {
        const double x = -1.0 + 0.1 * i;
        field[i] = x * x;
    }
    const std::vector<double> lap = laplace_beltrami(f, 0.1, field, 0.1, -1.0);
    for (int i = 1; i < 20; ++i) CHECK(lap[i] == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("laplace_beltrami reproduces the l=1 eigenvalue on the sphere") {
    const MetricFamily& f = metric_family("sphere2");
    auto max_err = [&](int n) {
        const double h = (std::numbers::pi - 0.4) / (n - 1);
        std::vector<double> field(n);
        for (int i = 0; i < n; ++i) field[i] = std::cos(0.2 + h * i);
        const std::vector<double> lap = laplace_beltrami(f, 0.0, field, h, 0.2);
        double e = 0.0;
        for (int i = 1; i + 1 < n; ++i) {
            e = std::max(e, std::abs(lap[i] + 2.0 * std::cos(0.2 + h * i)));
        }
        return e;
    };
    const double coarse = max_err(101), fine = max_err(201);
    CHECK(coarse < 5e-4);
    // second-order convergence: halving the spacing shrinks the error 4x (+-10%)
    CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.10));
}

TEST_CASE("domain violations are named errors") {
    const MetricFamily& s2 = metric_family("sphere2");
    CHECK_THROWS_AS((void)at1(s2, 0.6, 1.0), DomainError);   // beyond extinction
    CHECK_THROWS_AS((void)at1(s2, 0.1, -0.1), DomainError);  // theta out of (0, pi)
    CHECK_THROWS_AS((void)metric_family("torus"), ConfigError);
    const std::vector<double> two(2, 0.0);
    CHECK_THROWS_AS((void)laplace_beltrami(s2, 0.0, two, 0.1, 1.0), DomainError);
}

}  // TEST_SUITE
