#include "ricciwave/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "ricciwave/gradientflow.hpp"
#include "ricciwave/heat.hpp"
#include "ricciwave/lift.hpp"
#include "ricciwave/metrics.hpp"
#include "ricciwave/rays.hpp"
#include "ricciwave/wave.hpp"

namespace ricciwave {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt17(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

}  // namespace

bool ExperimentConfig::has(const std::string& key) const { return values.count(key) > 0; }

std::string ExperimentConfig::get_str(const std::string& key, const std::string& def) const {
    const auto it = values.find(key);
    return it == values.end() ? def : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double def) const {
    const auto it = values.find(key);
    if (it == values.end()) return def;
    try {
        std::size_t pos = 0;
        const double v = std::stod(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' is not a number: " + it->second);
    }
}

int ExperimentConfig::get_int(const std::string& key, int def) const {
    const auto it = values.find(key);
    if (it == values.end()) return def;
    try {
        std::size_t pos = 0;
        const int v = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: '" + key + "' is not an integer: " + it->second);
    }
}

std::vector<int> ExperimentConfig::get_ints(const std::string& key,
                                            const std::vector<int>& def) const {
    const auto it = values.find(key);
    if (it == values.end()) return def;
    std::vector<int> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            out.push_back(std::stoi(tok));
        } catch (const std::exception&) {
            throw ConfigError("config: '" + key + "' has a non-integer entry: " + tok);
        }
    }
    if (out.empty()) throw ConfigError("config: '" + key + "' is empty");
    return out;
}

ExperimentConfig load_config(const std::string& path, const std::string& experiment,
                             const std::vector<std::string>& overrides) {
    ExperimentConfig cfg;
    cfg.experiment = experiment;
    if (!path.empty()) {
        std::ifstream in(path);
        if (!in) throw ConfigError("config: cannot open " + path);
        std::string line, section;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            line = trim(line);
            if (line.empty() || line[0] == '#' || line[0] == ';') continue;
            if (line.front() == '[' && line.back() == ']') {
                section = trim(line.substr(1, line.size() - 2));
                continue;
            }
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                throw ConfigError("config: " + path + ":" + std::to_string(lineno) +
                                  ": expected key = value");
            }
            // sectionless keys apply to every experiment
            if (section.empty() || section == experiment) {
                cfg.values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
            }
        }
    }
    for (const std::string& ov : overrides) {
        const auto eq = ov.find('=');
        if (eq == std::string::npos) throw ConfigError("--set expects key=value, got " + ov);
        cfg.values[trim(ov.substr(0, eq))] = trim(ov.substr(eq + 1));
    }
    std::string canon = experiment + "\n";
    for (const auto& [k, v] : cfg.values) canon += k + "=" + v + "\n";
    cfg.hash = fnv1a(canon);
    return cfg;
}

std::vector<ExperimentInfo> experiment_registry() {
    return {
        {"euclid-residual",
         "lifted-Laplacian defect of the analytic kernel solution across N (expected ~1/N)"},
        {"euclid-wave-sweep",
         "wave slice vs the Gaussian kernel oracle on flat space across N"},
        {"sphere-wave-sweep",
         "wave slice vs the closed-form constant solution on the shrinking sphere"},
        {"rays-oracle",
         "numeric bicharacteristics vs the Euclidean closed form on random seeds"},
        {"wf-classify",
         "large-N classification of the three canonical characteristic seeds"},
        {"f-monotonicity",
         "energy functional monotonicity and reference-measure conservation"},
        {"forward-heat",
         "forward heat on negative times via time reflection, vs the widening kernel"},
    };
}

namespace {

GridSpec linear_grid(double lo, double hi, double dx) {
    const int n = static_cast<int>(std::llround((hi - lo) / dx)) + 1;
    return GridSpec{lo, dx, n};
}

GridSpec sphere_grid(int nx) {
    const double h = std::numbers::pi / (nx + 1);
    return GridSpec{h, h, nx};
}

ResultTable exp_euclid_residual(const ExperimentConfig& cfg) {
    const std::vector<int> ns =
        cfg.get_ints("ns", {8, 16, 32, 64, 128, 256, 512, 1024});
    const Profile h = Profile::parse(cfg.get_str("profile", "gaussian(0,1)"));
    const double T = cfg.get_double("T", 1.0);
    const double t_min = cfg.get_double("t_min", 0.3);
    const double t_max = cfg.get_double("t_max", 0.9);
    const int nt = cfg.get_int("nt", 7);
    const GridSpec xg = linear_grid(cfg.get_double("x_min", -3.0),
                                    cfg.get_double("x_max", 3.0), cfg.get_double("dx", 0.1));
    std::vector<double> times;
    for (int i = 0; i < nt; ++i) {
        times.push_back(nt == 1 ? t_min : t_min + (t_max - t_min) * i / (nt - 1));
    }
    const BaseField w = BaseField::kernel(h, T);
    ResultTable tab;
    tab.columns = {"N", "residual_max"};
    for (int N : ns) {
        const SpaceTimeField r = almost_harmonic_residual(w, N, times, xg);
        double mx = 0.0;
        for (double v : r.values) mx = std::max(mx, std::abs(v));
        tab.rows.push_back({static_cast<double>(N), mx});
    }
    return tab;
}

WaveConfig wave_config_from(const ExperimentConfig& cfg, const MetricFamily& fam) {
    WaveConfig wc;
    wc.family = &fam;
    wc.h = Profile::parse(cfg.get_str(
        "profile", fam.id == FamilyId::sphere2 ? "constant(1)" : "gaussian(0,1)"));
    const std::string mode = cfg.get_str("velocity_mode", "heat_compatible");
    if (mode == "heat_compatible") {
        wc.velocity_mode = VelocityMode::heat_compatible;
    } else if (mode == "plain") {
        wc.velocity_mode = VelocityMode::plain;
    } else {
        throw ConfigError("config: velocity_mode must be heat_compatible or plain");
    }
    wc.c_shift = cfg.get_double("c_shift", 0.0);
    if (fam.id == FamilyId::sphere2) {
        wc.t0 = cfg.get_double("t0", 0.1);
        wc.T = cfg.get_double("T", 0.4);
        wc.x_grid = sphere_grid(cfg.get_int("nx", 200));
        wc.dr = cfg.get_double("dr", 0.02);
    } else {
        wc.t0 = cfg.get_double("t0", 0.25);
        wc.T = cfg.get_double("T", 1.0);
        wc.x_grid = linear_grid(cfg.get_double("x_min", -9.6), cfg.get_double("x_max", 9.6),
                                cfg.get_double("dx", 0.03));
        wc.dr = cfg.get_double("dr", 0.03);
    }
    wc.r_min_fraction = cfg.get_double("r_min_fraction", 0.5);
    wc.pad_slack = cfg.get_double("pad_slack", 1.2);
    wc.dt_safety = cfg.get_double("dt_safety", 0.4);
    wc.store_every = cfg.get_int("store_every", 1);
    return wc;
}

ResultTable exp_wave_sweep(const ExperimentConfig& cfg, const MetricFamily& fam,
                           const std::vector<int>& default_ns) {
    const WaveConfig wc = wave_config_from(cfg, fam);
    const std::vector<int> ns = cfg.get_ints("ns", default_ns);
    const double margin = cfg.get_double("probe_margin", 0.1);
    ResultTable tab;
    tab.columns = {"N", "e", "dt_min", "runtime", "diverged"};
    for (const SweepRow& r : n_sweep(wc, ns, margin)) {
        tab.rows.push_back({static_cast<double>(r.N), r.e, r.dt_min, r.runtime,
                            r.diverged ? 1.0 : 0.0});
    }
    return tab;
}

ResultTable exp_rays_oracle(const ExperimentConfig& cfg) {
    const std::uint64_t seed = static_cast<std::uint64_t>(cfg.get_int("seed", 1));
    const int n_rays = cfg.get_int("n_rays", 100);
    const double step = cfg.get_double("step", 1e-3);
    const double s_max = cfg.get_double("s_max", 10.0);
    const MetricFamily& fam = metric_family("euclid1");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> tau_d(0.5, 1.5);
    std::uniform_real_distribution<double> t_d(0.25, 2.0);
    std::uniform_int_distribution<int> n_d(2, 12);

    ResultTable tab;
    tab.columns = {"ray", "N", "max_err", "p_drift", "invariant_drift"};
    for (int k = 0; k < n_rays; ++k) {
        PhasePoint p;
        p.N = n_d(rng);
        p.t = t_d(rng);
        p.tau = tau_d(rng);
        p.x = {unit(rng)};
        p.xi = {unit(rng)};
        p.y.assign(p.N, 0.0);
        p.eta.assign(p.N, 0.0);
        for (double& e : p.eta) e = unit(rng);
        // rescale the covector onto the characteristic p^(N) = 0
        double q = p.xi[0] * p.xi[0];
        for (double e : p.eta) q += e * e;
        const double lam = std::sqrt(2.0 * p.t * p.tau * p.tau / (p.N * q));
        p.xi[0] *= lam;
        for (double& e : p.eta) e *= lam;

        const RayTrajectory traj = integrate_ray(p, fam, s_max, step);
        const double p0 = principal_symbol(p, fam);
        const double inv0 = p.t * p.tau * p.tau;
        double max_err = 0.0, p_drift = 0.0, inv_drift = 0.0;
        for (std::size_t i = 0; i < traj.s.size(); ++i) {
            const PhasePoint& a = traj.points[i];
            const PhasePoint b = euclid_ray_closed_form(p, traj.s[i]);
            max_err = std::max(max_err, std::abs(a.t - b.t));
            max_err = std::max(max_err, std::abs(a.tau - b.tau));
            for (std::size_t j = 0; j < a.x.size(); ++j) {
                max_err = std::max(max_err, std::abs(a.x[j] - b.x[j]));
                max_err = std::max(max_err, std::abs(a.xi[j] - b.xi[j]));
            }
            for (std::size_t j = 0; j < a.y.size(); ++j) {
                max_err = std::max(max_err, std::abs(a.y[j] - b.y[j]));
                max_err = std::max(max_err, std::abs(a.eta[j] - b.eta[j]));
            }
            p_drift = std::max(p_drift, std::abs(principal_symbol(a, fam) - p0));
            inv_drift = std::max(inv_drift, std::abs(a.t * a.tau * a.tau - inv0));
        }
        tab.rows.push_back({static_cast<double>(k), static_cast<double>(p.N), max_err,
                            p_drift, inv_drift});
    }
    return tab;
}

ResultTable exp_wf_classify(const ExperimentConfig& cfg) {
    const double s_probe = cfg.get_double("s_probe", 1.0);
    const std::vector<int> ns = cfg.get_ints("ns", {4, 8, 16, 32});
    const double T = cfg.get_double("T", 1.0);
    const MetricFamily& fam = metric_family("euclid1");

    auto make = [&](double tau, double xi, double eta) {
        PhasePoint p;
        p.N = ns.front();
        p.t = T;
        p.x = {0.0};
        p.xi = {xi};
        p.y.assign(p.N, 0.0);
        p.eta.assign(p.N, 0.0);
        if (!p.eta.empty()) p.eta[0] = eta;
        p.tau = tau;
        return p;
    };
    const PhasePoint seeds[3] = {make(0.0, 0.0, 0.0), make(1.0, 1.0, 1.0),
                                 make(1.0, 0.0, 0.0)};

    ResultTable tab;
    tab.columns = {"case", "class", "scale_spread"};
    for (int c = 0; c < 3; ++c) {
        const WfResult r = classify_wf_infinity(seeds[c], fam, ns, s_probe);
        tab.rows.push_back({static_cast<double>(c),
                            static_cast<double>(static_cast<int>(r.cls)), r.scale_spread});
    }
    tab.meta["class_codes"] =
        "0=terminal_stationary 1=escapes_to_infinity 2=regular 3=indeterminate";
    return tab;
}

ResultTable exp_f_monotonicity(const ExperimentConfig& cfg) {
    const MetricFamily& fam = metric_family(cfg.get_str("family", "sphere2"));
    const double t0 = cfg.get_double("t0", 0.1);
    const double T = cfg.get_double("T", 0.4);
    const double dt = cfg.get_double("dt", 1e-5);
    const GridSpec xg = (fam.id == FamilyId::sphere2)
                            ? sphere_grid(cfg.get_int("nx", 2001))
                            : linear_grid(cfg.get_double("x_min", -3.0),
                                          cfg.get_double("x_max", 3.0),
                                          cfg.get_double("dx", 0.05));
    const int row_every = cfg.get_int("row_every", 1000);

    const CoupledFlowState state = make_coupled_flow(fam, t0, T, xg, dt);
    const MonotonicityResult res = monotonicity_check(state);

    ResultTable tab;
    tab.columns = {"t", "F", "dFdt", "rhs"};
    double max_mismatch = 0.0, min_dfdt = 0.0;
    bool first = true;
    for (std::size_t k = 1; k + 1 < res.times.size(); ++k) {
        const double lhs = res.lhs[k - 1];
        const double rhs = res.rhs[k];
        const double mism = (rhs != 0.0) ? std::abs(lhs - rhs) / std::abs(rhs)
                                         : std::abs(lhs - rhs);
        max_mismatch = std::max(max_mismatch, mism);
        min_dfdt = first ? lhs : std::min(min_dfdt, lhs);
        first = false;
        if (k % static_cast<std::size_t>(row_every) == 0) {
            tab.rows.push_back({res.times[k], res.F[k], lhs, rhs});
        }
    }
    tab.meta["rn_drift"] = fmt17(res.rn_drift);
    tab.meta["max_rel_mismatch"] = fmt17(max_mismatch);
    tab.meta["min_dFdt"] = fmt17(min_dfdt);
    return tab;
}

ResultTable exp_forward_heat(const ExperimentConfig& cfg) {
    HeatProblem hp;
    hp.family = &metric_family("euclid1");
    hp.h = Profile::parse(cfg.get_str("profile", "gaussian(0,1)"));
    hp.T = cfg.get_double("T", -1.0);
    hp.t0 = cfg.get_double("t0", -0.1);
    hp.x_grid = linear_grid(cfg.get_double("x_min", -8.0), cfg.get_double("x_max", 8.0),
                            cfg.get_double("dx", 0.05));
    hp.dt = cfg.get_double("dt", 1e-3);
    hp.store_every = cfg.get_int("store_every", 50);

    const SpaceTimeField f = solve_forward_heat(hp);
    ResultTable tab;
    tab.columns = {"t", "max_err"};
    const bool oracle = hp.h.kind == Profile::Kind::gaussian ||
                        hp.h.kind == Profile::Kind::constant;
    for (std::size_t it = 0; it < f.times.size(); ++it) {
        const double t = f.times[it];
        double err = std::numeric_limits<double>::quiet_NaN();
        if (oracle) {
            err = 0.0;
            for (int ix = 0; ix < f.x.n; ++ix) {
                const double x = f.x.at(ix);
                // reflection: forward solution at t equals the backward kernel
                // solution at -t with terminal time -T
                const double ref = gaussian_kernel_solution(
                    hp.h, -t, std::span<const double>{&x, 1}, -hp.T, 1);
                err = std::max(err, std::abs(f.at(it, ix) - ref));
            }
        }
        tab.rows.push_back({t, err});
    }
    return tab;
}

}  // namespace

ResultTable run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    ResultTable tab;
    const std::string& name = config.experiment;
    try {
        if (name == "euclid-residual") {
            tab = exp_euclid_residual(config);
        } else if (name == "euclid-wave-sweep") {
            tab = exp_wave_sweep(config, metric_family("euclid1"), {8, 16, 32, 64});
        } else if (name == "sphere-wave-sweep") {
            tab = exp_wave_sweep(config, metric_family("sphere2"), {8, 16, 32});
        } else if (name == "rays-oracle") {
            tab = exp_rays_oracle(config);
        } else if (name == "wf-classify") {
            tab = exp_wf_classify(config);
        } else if (name == "f-monotonicity") {
            tab = exp_f_monotonicity(config);
        } else if (name == "forward-heat") {
            tab = exp_forward_heat(config);
        } else {
            throw ConfigError("unknown experiment '" + name + "'");
        }
    } catch (const DomainError& e) {
        throw DomainError("experiment " + name + ": " + e.what());
    }
    char hash[32];
    std::snprintf(hash, sizeof(hash), "%016llx",
                  static_cast<unsigned long long>(config.hash));
    tab.meta["experiment"] = name;
    tab.meta["config_hash"] = hash;
    tab.meta["wall_time_s"] =
        fmt17(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    return tab;
}

RateFit fit_rate(const ResultTable& table, const std::string& x_col,
                 const std::string& y_col) {
    const auto find = [&](const std::string& c) {
        const auto it = std::find(table.columns.begin(), table.columns.end(), c);
        if (it == table.columns.end()) throw DomainError("fit_rate: no column " + c);
        return static_cast<std::size_t>(it - table.columns.begin());
    };
    const std::size_t ix = find(x_col), iy = find(y_col);
    if (table.rows.size() < 3) throw DomainError("fit_rate: need at least 3 rows");
    std::vector<double> lx, ly;
    for (const auto& row : table.rows) {
        if (!(row[ix] > 0.0) || !(row[iy] > 0.0)) {
            throw DomainError("fit_rate: nonpositive value in log-log fit");
        }
        lx.push_back(std::log(row[ix]));
        ly.push_back(std::log(row[iy]));
    }
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < lx.size(); ++i) {
        sx += lx[i];
        sy += ly[i];
        sxx += lx[i] * lx[i];
        sxy += lx[i] * ly[i];
        syy += ly[i] * ly[i];
    }
    RateFit fit;
    const double vxx = sxx - sx * sx / n;
    const double vxy = sxy - sx * sy / n;
    const double vyy = syy - sy * sy / n;
    fit.slope = vxy / vxx;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.r_squared = (vyy == 0.0) ? 1.0 : (vxy * vxy) / (vxx * vyy);
    return fit;
}

void emit(const ResultTable& table, const std::string& format, std::ostream& out) {
    if (format == "csv") {
        for (std::size_t i = 0; i < table.columns.size(); ++i) {
            out << (i ? "," : "") << table.columns[i];
        }
        out << "\n";
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                out << (i ? "," : "") << fmt17(row[i]);
            }
            out << "\n";
        }
        return;
    }
    if (format == "json") {
        nlohmann::json j;
        j["columns"] = table.columns;
        j["rows"] = nlohmann::json::array();
        for (const auto& row : table.rows) j["rows"].push_back(row);
        j["meta"] = table.meta;
        out << j.dump(2) << "\n";
        return;
    }
    throw ConfigError("emit: format must be csv or json");
}

void emit_to_file(const ResultTable& table, const std::string& format,
                  const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("emit: cannot open " + path + " for writing");
    emit(table, format, out);
    if (!out) throw ConfigError("emit: write to " + path + " failed");
}

}  // namespace ricciwave
