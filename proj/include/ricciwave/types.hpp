#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ricciwave {

/// Raised when a coordinate or parameter leaves its declared domain.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Raised when a time march produces a non-finite value; carries the failure time.
class DivergenceError : public std::runtime_error {
public:
    DivergenceError(const std::string& msg, double t)
        : std::runtime_error(msg + " (at t = " + std::to_string(t) + ")"), t_fail(t) {}
    double t_fail;
};

/// Raised for malformed experiment configuration or CLI usage.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v >= lo && v < hi; }
};

/// Uniform 1-D grid: points lo, lo+step, ..., lo+(n-1)*step.
struct GridSpec {
    double lo = 0.0;
    double step = 0.0;
    int n = 0;

    double at(int i) const { return lo + step * static_cast<double>(i); }
    double hi() const { return at(n - 1); }

    /// Index of the cell [i, i+1] containing v, clamped to valid range.
    int cell(double v) const {
        int i = static_cast<int>((v - lo) / step);
        if (i < 0) i = 0;
        if (i > n - 2) i = n - 2;
        return i;
    }
};

/// Scalar field sampled on stored time levels times a uniform spatial grid.
/// Values are level-major: values[it * x.n + ix]. Time levels are stored in
/// march order (decreasing t for backward solves).
struct SpaceTimeField {
    std::vector<double> times;
    GridSpec x;
    std::vector<double> values;

    int levels() const { return static_cast<int>(times.size()); }
    double at(int it, int ix) const { return values[static_cast<size_t>(it) * x.n + ix]; }
    double& at(int it, int ix) { return values[static_cast<size_t>(it) * x.n + ix]; }
    const double* level(int it) const { return values.data() + static_cast<size_t>(it) * x.n; }
    double* level(int it) { return values.data() + static_cast<size_t>(it) * x.n; }
};

}  // namespace ricciwave
