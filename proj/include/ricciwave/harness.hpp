#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ricciwave/types.hpp"

namespace ricciwave {

/// Key/value settings for one experiment, resolved from an INI-style config
/// file ([section] per experiment, `key = value` lines, `#`/`;` comments)
/// plus command-line `key=value` overrides. Missing keys fall back to the
/// experiment's documented defaults at the point of use.
struct ExperimentConfig {
    std::string experiment;
    std::map<std::string, std::string> values;
    std::uint64_t hash = 0;  // FNV-1a 64 of the canonicalized settings

    bool has(const std::string& key) const;
    std::string get_str(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;
    int get_int(const std::string& key, int def) const;
    std::vector<int> get_ints(const std::string& key, const std::vector<int>& def) const;
};

/// Loads `path` (empty path = defaults only), applies `overrides`, and stamps
/// the config hash.
ExperimentConfig load_config(const std::string& path, const std::string& experiment,
                             const std::vector<std::string>& overrides);

struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> meta;
};

struct ExperimentInfo {
    const char* name;
    const char* description;
};

std::vector<ExperimentInfo> experiment_registry();

/// Dispatches to the owning module; deterministic given (config, seed) except
/// for wall-time columns/metadata.
ResultTable run_experiment(const ExperimentConfig& config);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least squares of log(y) against log(x) over the table's rows.
RateFit fit_rate(const ResultTable& table, const std::string& x_col,
                 const std::string& y_col);

/// CSV: header + rows, '.' decimal, LF endings, 17-significant-digit floats.
/// JSON: {"columns": [...], "rows": [[...]], "meta": {...}}.
void emit(const ResultTable& table, const std::string& format, std::ostream& out);
void emit_to_file(const ResultTable& table, const std::string& format,
                  const std::string& path);

}  // namespace ricciwave
