#include "ricciwave/wave.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "ricciwave/kernels.hpp"

namespace ricciwave {

namespace {

double lap_g_terminal(const WaveConfig& cfg, double x) {
    const double d2 = profile_d2(cfg.h, x);
    if (cfg.family->id == FamilyId::sphere2) {
        const double ginv = 1.0 / (1.0 - 2.0 * cfg.T);
        return ginv * (d2 + profile_d1(cfg.h, x) / std::tan(x));
    }
    return d2;
}

double scalar_R(const WaveConfig& cfg, double t) {
    return (cfg.family->id == FamilyId::sphere2) ? 2.0 / (1.0 - 2.0 * t) : 0.0;
}

double metric_ginv(const WaveConfig& cfg, double t) {
    return (cfg.family->id == FamilyId::sphere2) ? 1.0 / (1.0 - 2.0 * t) : 1.0;
}

// Acceleration a = [R + Lap_g u + Lap_r u]/C - damp_scale*(tR/(NC)) v with
// C = 2t/N + c_shift. Boundary entries of `out` are zero (pinned nodes).
void accel(const WaveProblem& p, double t, const std::vector<double>& u,
           const std::vector<double>& v, double damp_scale, std::vector<double>& out) {
    const WaveConfig& cfg = p.cfg;
    const int nx = cfg.x_grid.n;
    const int nr = p.r_grid.n;
    const double C = 2.0 * t / cfg.N + cfg.c_shift;
    const double ginv = metric_ginv(cfg, t);
    const double R = scalar_R(cfg, t);
    const double src = R / C;
    const double damp = damp_scale * t * R / (cfg.N * C);
    const double inv_dr2C = 1.0 / (p.r_grid.step * p.r_grid.step * C);
    const double cx_base = ginv / (cfg.x_grid.step * cfg.x_grid.step * C);

    std::vector<double> crp(nr, 0.0), crm(nr, 0.0);
    for (int ir = 0; ir < nr; ++ir) {
        crp[ir] = p.r_wp[ir] * inv_dr2C;
        crm[ir] = p.r_wm[ir] * inv_dr2C;
    }

    std::fill(out.begin(), out.end(), 0.0);
    const auto& k = kernels::active();
    for (int ix = 0; ix < nx; ++ix) {
        const bool edge = (ix == 0 || ix == nx - 1);
        if (edge && p.dirichlet_x) continue;
        // Neumann mirror at x edges: the ghost row equals the inner neighbor
        const int iup = (ix == nx - 1) ? nx - 2 : ix + 1;
        const int idn = (ix == 0) ? 1 : ix - 1;
        const double cxp = cx_base * (p.x_wp.empty() ? 1.0 : p.x_wp[ix]);
        const double cxm = cx_base * (p.x_wm.empty() ? 1.0 : p.x_wm[ix]);
        k.wave_accel_row(&u[ix * nr], &u[iup * nr], &u[idn * nr], crp.data(), crm.data(),
                         &v[ix * nr], cxp, cxm, src, damp, &out[ix * nr], nr);
    }
}

}  // namespace

WaveProblem build_wave_problem(const WaveConfig& cfg) {
    if (cfg.family == nullptr) throw ConfigError("wave: no metric family");
    if (cfg.family->spatial_dim != 1) {
        throw DomainError(std::string(cfg.family->name) + ": wave solver is 1-D in x");
    }
    if (cfg.N < 2) throw DomainError("wave: N >= 2 required");
    if (!(cfg.t0 > 0.0 && cfg.t0 < cfg.T)) throw DomainError("wave: require 0 < t0 < T");
    if (!cfg.family->time_domain.contains(cfg.t0) || !cfg.family->time_domain.contains(cfg.T)) {
        throw DomainError("wave: [t0, T] leaves the flow's time domain");
    }
    if (cfg.c_shift < 0.0) throw DomainError("wave: c_shift must be nonnegative");
    if (cfg.c_shift > 0.0 && cfg.family->id == FamilyId::sphere2) {
        throw DomainError("wave: shifted operator is Euclidean-only");
    }
    if (!(cfg.dt_safety > 0.0 && cfg.dt_safety < 1.0)) {
        throw DomainError("wave: dt_safety must lie in (0, 1)");
    }
    if (!(cfg.dr > 0.0)) throw DomainError("wave: dr must be positive");
    if (cfg.x_grid.n < 5) throw DomainError("wave: x grid shorter than 5 points");
    if (!(cfg.r_min_fraction > 0.0 && cfg.r_min_fraction < 1.0)) {
        throw DomainError("wave: r_min_fraction must lie in (0, 1)");
    }

    const double r_slice_lo = std::sqrt(2.0 * cfg.N * cfg.t0);
    const double r_slice_hi = std::sqrt(2.0 * cfg.N * cfg.T);
    // A signal from the r boundary travels inward at speed sqrt(N/(2t));
    // integrating over [t0, T] bounds its reach, padded by pad_slack.
    const double reach = std::sqrt(2.0 * cfg.N) * (std::sqrt(cfg.T) - std::sqrt(cfg.t0));
    const double r_min = cfg.r_min_fraction * r_slice_lo;
    const double r_max_req = r_slice_hi + cfg.pad_slack * reach;
    const int nr = static_cast<int>(std::ceil((r_max_req - r_min) / cfg.dr)) + 1;
    if (nr < 6) throw DomainError("wave: r grid shorter than 6 points; shrink dr");
    const std::size_t cells = static_cast<std::size_t>(nr) * cfg.x_grid.n;
    if (cells > cfg.max_grid_points) {
        throw DomainError("wave: grid of " + std::to_string(cells) +
                          " points exceeds budget (r_max required = " +
                          std::to_string(r_max_req) + ")");
    }

    WaveProblem p;
    p.cfg = cfg;
    p.r_grid = GridSpec{r_min, cfg.dr, nr};
    p.dirichlet_x = cfg.family->id == FamilyId::euclid1 &&
                    (cfg.h.kind == Profile::Kind::gaussian ||
                     cfg.h.kind == Profile::Kind::constant);
    p.r_wp.resize(nr);
    p.r_wm.resize(nr);
    for (int ir = 0; ir < nr; ++ir) {
        const double r = p.r_grid.at(ir);
        const double half = 0.5 * cfg.dr;
        p.r_wp[ir] = std::exp((cfg.N - 1.0) * std::log1p(half / r));
        p.r_wm[ir] = std::exp((cfg.N - 1.0) * std::log1p(-half / r));
        p.cfl_weight_r = std::max(p.cfl_weight_r, 0.5 * (p.r_wp[ir] + p.r_wm[ir]));
    }
    if (cfg.family->id == FamilyId::sphere2) {
        const int nx = cfg.x_grid.n;
        p.x_wp.resize(nx);
        p.x_wm.resize(nx);
        for (int ix = 0; ix < nx; ++ix) {
            const double th = cfg.x_grid.at(ix);
            const double half = 0.5 * cfg.x_grid.step;
            p.x_wp[ix] = std::sin(th + half) / std::sin(th);
            p.x_wm[ix] = std::sin(th - half) / std::sin(th);
            p.cfl_weight_x = std::max(p.cfl_weight_x, 0.5 * (p.x_wp[ix] + p.x_wm[ix]));
        }
    }
    return p;
}

WaveState terminal_state(const WaveProblem& p) {
    const int nx = p.cfg.x_grid.n;
    const int nr = p.r_grid.n;
    WaveState s;
    s.t = p.cfg.T;
    s.u.resize(static_cast<std::size_t>(nx) * nr);
    s.v.assign(static_cast<std::size_t>(nx) * nr, 0.0);
    for (int ix = 0; ix < nx; ++ix) {
        const double x = p.cfg.x_grid.at(ix);
        const double hval = profile_eval(p.cfg.h, x);
        double vval = -scalar_R(p.cfg, p.cfg.T);
        if (p.cfg.velocity_mode == VelocityMode::heat_compatible) {
            vval -= lap_g_terminal(p.cfg, x);
        }
        const bool pinned_row = p.dirichlet_x && (ix == 0 || ix == nx - 1);
        for (int ir = 0; ir < nr; ++ir) {
            s.u[ix * nr + ir] = hval;
            // pinned nodes (r extremes, Dirichlet x rows) stay at the
            // time-independent terminal extension, so their velocity is zero
            s.v[ix * nr + ir] = (pinned_row || ir == 0 || ir == nr - 1) ? 0.0 : vval;
        }
    }
    return s;
}

double cfl_dt(const WaveProblem& p, double t) {
    const WaveConfig& cfg = p.cfg;
    if (!(t > cfg.t0)) throw DomainError("cfl_dt: t must exceed t0");
    const double ginv_hi = metric_ginv(cfg, t);  // largest over the step
    double dt = 0.0;
    for (int it = 0; it < 32; ++it) {
        const double t_lo = std::max(cfg.t0, t - dt);
        const double C = 2.0 * t_lo / cfg.N + cfg.c_shift;
        dt = cfg.dt_safety *
             std::min(p.r_grid.step * std::sqrt(C / p.cfl_weight_r),
                      cfg.x_grid.step * std::sqrt(C / (ginv_hi * p.cfl_weight_x)));
    }
    if (!(dt > 0.0)) throw DomainError("cfl_dt: nonpositive step");
    return std::min(dt, t - cfg.t0);
}

void step(const WaveProblem& p, WaveState& s, double dt) {
    if (!(dt > 0.0) || s.t - dt < p.cfg.t0 - 1e-12) {
        throw DomainError("step: dt out of range");
    }
    const std::size_t total = s.u.size();
    std::vector<double> acc(total);
    const auto& k = kernels::active();

    // opening half-kick at t, with the damping term explicit
    accel(p, s.t, s.u, s.v, 1.0, acc);
    k.axpy(-0.5 * dt, acc.data(), s.v.data(), static_cast<int>(total));
    // drift
    k.axpy(-dt, s.v.data(), s.u.data(), static_cast<int>(total));
    const double t_new = std::max(p.cfg.t0, s.t - dt);
    // closing half-kick at t_new; a = P(u) - damp*v is linear in v, so the
    // implicit half-step solves exactly
    accel(p, t_new, s.u, s.v, 0.0, acc);  // P only; v argument unused at damp 0
    const double C = 2.0 * t_new / p.cfg.N + p.cfg.c_shift;
    const double damp = t_new * scalar_R(p.cfg, t_new) / (p.cfg.N * C);
    const double scale = 1.0 / (1.0 - 0.5 * dt * damp);
    for (std::size_t i = 0; i < total; ++i) {
        s.v[i] = (s.v[i] - 0.5 * dt * acc[i]) * scale;
    }
    s.t = t_new;
    for (std::size_t i = 0; i < total; ++i) {
        if (!std::isfinite(s.u[i])) throw DivergenceError("wave: non-finite value", s.t);
    }
}

namespace {

// 4-point Lagrange interpolation of one r-row at radius rs.
double cubic_at(const GridSpec& r, const double* row, double rs) {
    int i0 = static_cast<int>(std::floor((rs - r.lo) / r.step)) - 1;
    i0 = std::clamp(i0, 0, r.n - 4);
    const double s = (rs - r.at(i0)) / r.step;  // in [~1, ~2] for interior rs
    const double w0 = -(s - 1.0) * (s - 2.0) * (s - 3.0) / 6.0;
    const double w1 = s * (s - 2.0) * (s - 3.0) / 2.0;
    const double w2 = -s * (s - 1.0) * (s - 3.0) / 2.0;
    const double w3 = s * (s - 1.0) * (s - 2.0) / 6.0;
    return w0 * row[i0] + w1 * row[i0 + 1] + w2 * row[i0 + 2] + w3 * row[i0 + 3];
}

}  // namespace

std::vector<double> slice_row(const WaveProblem& p, const WaveState& s) {
    const double rs = std::sqrt(2.0 * p.cfg.N * s.t);
    if (rs < p.r_grid.lo || rs > p.r_grid.hi()) {
        throw DomainError("slice_row: slice radius outside r grid at t = " +
                          std::to_string(s.t));
    }
    const int nr = p.r_grid.n;
    std::vector<double> out(p.cfg.x_grid.n);
    for (int ix = 0; ix < p.cfg.x_grid.n; ++ix) {
        out[ix] = cubic_at(p.r_grid, &s.u[static_cast<std::size_t>(ix) * nr], rs);
    }
    return out;
}

SpaceTimeField slice_hypersurface(const Field3D& levels, int N) {
    SpaceTimeField out;
    out.x = levels.x;
    const int nx = levels.x.n;
    const int nr = levels.r.n;
    for (std::size_t it = 0; it < levels.times.size(); ++it) {
        const double t = levels.times[it];
        const double rs = std::sqrt(2.0 * N * t);
        if (rs < levels.r.lo || rs > levels.r.hi()) {
            throw DomainError("slice_hypersurface: slice radius outside r grid at t = " +
                              std::to_string(t));
        }
        out.times.push_back(t);
        const double* level = &levels.values[it * nx * nr];
        for (int ix = 0; ix < nx; ++ix) {
            out.values.push_back(cubic_at(levels.r, level + static_cast<std::size_t>(ix) * nr, rs));
        }
    }
    return out;
}

WaveRecord solve_backward_wave(const WaveProblem& p) {
    WaveRecord rec;
    rec.slice.x = p.cfg.x_grid;
    rec.levels.x = p.cfg.x_grid;
    rec.levels.r = p.r_grid;

    WaveState s = terminal_state(p);
    auto record = [&](bool full) {
        rec.slice.times.push_back(s.t);
        const std::vector<double> row = slice_row(p, s);
        rec.slice.values.insert(rec.slice.values.end(), row.begin(), row.end());
        if (full && p.cfg.full_every > 0) {
            rec.levels.times.push_back(s.t);
            rec.levels.values.insert(rec.levels.values.end(), s.u.begin(), s.u.end());
        }
        for (double u : s.u) rec.max_abs_u = std::max(rec.max_abs_u, std::abs(u));
    };
    record(true);

    int k = 0;
    while (s.t > p.cfg.t0 + 1e-14) {
        const double dt = cfl_dt(p, s.t);
        step(p, s, dt);
        rec.dt_history.push_back(dt);
        ++k;
        const bool last = s.t <= p.cfg.t0 + 1e-14;
        if (last || k % p.cfg.store_every == 0) {
            record(last || (p.cfg.full_every > 0 && k % p.cfg.full_every == 0));
        }
    }
    return rec;
}

double heat_oracle(const WaveConfig& cfg, double t, double x) {
    if (cfg.h.kind == Profile::Kind::constant) {
        if (cfg.family->id == FamilyId::sphere2) {
            return cfg.h.c + std::log((1.0 - 2.0 * t) / (1.0 - 2.0 * cfg.T));
        }
        return cfg.h.c;
    }
    if (cfg.family->id == FamilyId::euclid1 && cfg.h.kind == Profile::Kind::gaussian) {
        return gaussian_kernel_solution(cfg.h, t, std::span<const double>{&x, 1}, cfg.T, 1);
    }
    throw DomainError("heat_oracle: no closed form for this family/profile");
}

namespace {

// Fine-grid heat reference on the sweep's own x grid, linear in t between
// stored levels. Used when heat_oracle has no closed form.
class NumericOracle {
  public:
    NumericOracle(const WaveConfig& cfg) {
        HeatProblem hp;
        hp.family = cfg.family;
        hp.h = cfg.h;
        hp.t0 = cfg.t0;
        hp.T = cfg.T;
        hp.x_grid = cfg.x_grid;
        hp.dt = (cfg.T - cfg.t0) / 4096.0;
        hp.store_every = 1;
        field_ = solve_backward_heat(hp);
    }

    double at(double t, int ix) const {
        const auto& ts = field_.times;  // decreasing
        std::size_t i = 0;
        while (i + 2 < ts.size() && ts[i + 1] > t) ++i;
        const double t1 = ts[i], t2 = ts[i + 1];
        const double a = (std::abs(t1 - t2) < 1e-300) ? 0.0 : (t1 - t) / (t1 - t2);
        return (1.0 - a) * field_.at(i, ix) + a * field_.at(i + 1, ix);
    }

  private:
    SpaceTimeField field_;
};

}  // namespace

std::vector<SweepRow> n_sweep(const WaveConfig& tmpl, std::span<const int> Ns,
                              double probe_margin) {
    for (std::size_t i = 0; i + 1 < Ns.size(); ++i) {
        if (Ns[i + 1] <= Ns[i]) throw DomainError("n_sweep: Ns must be strictly increasing");
    }
    bool closed_form = true;
    try {
        (void)heat_oracle(tmpl, tmpl.T, tmpl.x_grid.at(tmpl.x_grid.n / 2));
    } catch (const DomainError&) {
        closed_form = false;
    }
    std::unique_ptr<NumericOracle> numeric;
    if (!closed_form) numeric = std::make_unique<NumericOracle>(tmpl);

    const double lo = tmpl.t0 + probe_margin * (tmpl.T - tmpl.t0);
    const double hi = tmpl.T - probe_margin * (tmpl.T - tmpl.t0);

    std::vector<SweepRow> rows;
    for (int N : Ns) {
        if (N < 2) throw DomainError("n_sweep: N >= 2 required");
        WaveConfig cfg = tmpl;
        cfg.N = N;
        SweepRow row;
        row.N = N;
        const auto start = std::chrono::steady_clock::now();
        try {
            const WaveProblem p = build_wave_problem(cfg);
            const WaveRecord rec = solve_backward_wave(p);
            row.dt_min = rec.dt_history.empty()
                             ? 0.0
                             : *std::min_element(rec.dt_history.begin(), rec.dt_history.end());
            double e = 0.0;
            for (std::size_t it = 0; it < rec.slice.times.size(); ++it) {
                const double t = rec.slice.times[it];
                if (t < lo || t > hi) continue;
                for (int ix = 0; ix < cfg.x_grid.n; ++ix) {
                    const double ref = closed_form ? heat_oracle(cfg, t, cfg.x_grid.at(ix))
                                                  : numeric->at(t, ix);
                    e = std::max(e, std::abs(rec.slice.at(it, ix) - ref));
                }
            }
            row.e = e;
        } catch (const DivergenceError&) {
            row.diverged = true;
            row.e = std::numeric_limits<double>::quiet_NaN();
        }
        row.runtime = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        rows.push_back(row);
    }
    return rows;
}

}  // namespace ricciwave
