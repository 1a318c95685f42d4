#include "fpuwaves/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "fpuwaves/error.hpp"

namespace fpuwaves {

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(count, 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex lock;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> g(lock);
          if (!first) first = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first) std::rethrow_exception(first);
}

namespace {

Profile witness(const Grid& grid, double gamma) { return scaled(make_wcl(grid), std::sqrt(2.0 * gamma)); }

SweepRecord localized_row(const std::string& key, double value, const Potential& p, double gamma,
                          const AvgOperator& op, const SolverConfig& base, ConeKind cone) {
  SolverConfig cfg = base;
  cfg.gamma = gamma;
  cfg.cone = cone;
  const EnergyContext ctx{p, op};
  SweepRecord row;
  row.key = key;
  row.value = value;
  row.potential = p.spec();
  row.result = solve(ctx, cfg);
  const Profile wcl = witness(op.grid, gamma);
  row.distance_wcl = distance(row.result.w, wcl);
  row.witness_energy = potential_energy(ctx, wcl);
  return row;
}

}  // namespace

GammaSweep gamma_sweep(const EnergyContext& ctx, const SolverConfig& base, const std::vector<double>& gammas,
                       bool warm_start, double omega_sign) {
  GammaSweep out;
  std::optional<Profile> previous;
  for (double g : gammas) {
    SolverConfig cfg = base;
    cfg.gamma = g;
    SweepRecord row;
    row.key = "gamma";
    row.value = g;
    row.potential = ctx.potential.spec();
    row.result = solve(ctx, cfg, warm_start ? previous : std::nullopt);
    if (warm_start) previous = row.result.w;
    out.traces.push_back(trace(reconstruct(ctx.op, row.result.w, row.result.sigma2, {}, FieldMode::wave_train,
                                           omega_sign)));
    out.rows.push_back(std::move(row));
  }
  out.nesting = nesting_fractions(out.traces);
  return out;
}

std::vector<SweepRecord> localization_sweep(const LocalizationConfig& cfg) {
  for (double q : cfg.qs) {
    if (!(q > 2.0)) throw Error(ErrorCode::bad_params, "localization needs q > 2");
  }
  const Grid grid = make_grid(cfg.half_length, cfg.m, GridMode::periodic);
  const AvgOperator op = make_avg(cfg.op, grid);
  std::vector<SweepRecord> rows(cfg.qs.size());
  parallel_for(cfg.qs.size(), cfg.jobs, [&](std::size_t i) {
    const Potential p = builtin("homogeneous", {{"q", cfg.qs[i]}});
    rows[i] = localized_row("q", cfg.qs[i], p, cfg.gamma, op, cfg.solver, cfg.cone);
  });
  return rows;
}

std::vector<SweepRecord> rescaled_localization_sweep(const RescaledLocalizationConfig& cfg) {
  const Grid grid = make_grid(cfg.half_length, cfg.m, GridMode::periodic);
  const AvgOperator op = make_avg(cfg.op, grid);
  std::vector<SweepRecord> rows(cfg.gammas.size());
  parallel_for(cfg.gammas.size(), cfg.jobs, [&](std::size_t i) {
    const Potential p = rescaled(cfg.base, cfg.gammas[i]);
    rows[i] = localized_row("gamma", cfg.gammas[i], p, 0.5, op, cfg.solver, cfg.cone);
  });
  return rows;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw Error(ErrorCode::bad_params, "slope fit needs >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error(ErrorCode::bad_params, "log-log fit needs positive data");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

HarmonicBenchmark harmonic_benchmark(double beta, double gamma, const std::vector<int>& ns, int m,
                                     std::optional<double> half_length) {
  if (ns.empty()) throw Error(ErrorCode::bad_params, "benchmark needs at least one n");
  const int n_max = *std::max_element(ns.begin(), ns.end());
  const double L = half_length.value_or(n_max + 2.0);
  if (L < n_max + 1.0) {
    throw Error(ErrorCode::domain_too_small, "L = " + std::to_string(L) + " < max n + 1");
  }
  HarmonicBenchmark out;
  out.beta = beta;
  out.gamma = gamma;
  out.half_length = L;
  out.m = m;
  out.max_excess = -std::numeric_limits<double>::infinity();
  const Grid grid = make_grid(L, m, GridMode::line);
  const AvgOperator op = make_avg(AvgKind::bar, grid);
  std::vector<double> xs, ys;
  for (int n : ns) {
    HarmonicRow row;
    row.n = n;
    row.energy = harmonic_energy(beta, op, make_harmonic_sequence(grid, n, gamma));
    row.defect = beta * gamma - row.energy;
    out.max_excess = std::max(out.max_excess, -row.defect);
    out.rows.push_back(row);
    if (row.defect > 0.0) {
      xs.push_back(n);
      ys.push_back(row.defect);
    }
  }
  out.decay_exponent = xs.size() >= 2 ? -loglog_slope(xs, ys) : std::numeric_limits<double>::quiet_NaN();
  return out;
}

bool decreasing_within(const std::vector<double>& values, double floor) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[i - 1] && values[i] > floor) return false;
  }
  return true;
}

ContinuationResult continuation_to_soliton(const ContinuationConfig& cfg) {
  if (cfg.schedule.empty()) throw Error(ErrorCode::bad_params, "empty L schedule");
  for (std::size_t i = 1; i < cfg.schedule.size(); ++i) {
    if (!(cfg.schedule[i] > cfg.schedule[i - 1])) throw Error(ErrorCode::bad_params, "L schedule must increase");
  }
  ContinuationResult out;
  const double gamma = cfg.gamma;
  const Potential& p = cfg.potential;
  out.margin_wcl = genuine_margin(p, gamma, make_grid(2.0, cfg.m, GridMode::periodic));
  out.margin_harmonic = harmonic_witness_margin(p, gamma, cfg.witness_n_max, cfg.m);
  if (!(out.margin_wcl > 0.0) && !(out.margin_harmonic > 0.0)) {
    throw Error(ErrorCode::not_genuinely_superquadratic,
                "no witness beats beta gamma (W_CL margin " + std::to_string(out.margin_wcl) + ", U_n margin " +
                    std::to_string(out.margin_harmonic) + ")");
  }

  SolverConfig scfg = cfg.solver;
  scfg.gamma = gamma;
  scfg.cone = ConeKind::u_n;

  std::optional<Profile> previous;
  for (double L : cfg.schedule) {
    const Grid periodic = make_grid(L, cfg.m, GridMode::periodic);
    const Grid line = make_grid(L, cfg.m, GridMode::line);
    const EnergyContext ctx{p, make_avg(AvgKind::bar, periodic)};
    std::optional<Profile> start;
    if (previous) start = embed(*previous, periodic);
    ContinuationStage st;
    st.half_length = L;
    st.result = solve(ctx, scfg, start);
    const EnergyContext line_ctx{p, make_avg(AvgKind::bar, line)};
    st.p_embedded = potential_energy(line_ctx, Profile(line, st.result.w.w));
    st.right_gap = st.result.energy - st.p_embedded;
    if (L > 1.0) {
      const double eps = std::sqrt(gamma / (L - 1.0));
      double sup = 0.0;
      for (int i = 0; i <= 200; ++i) sup = std::max(sup, p.dphi(eps * i / 200.0));
      st.proof_bound = 2.0 * eps * sup;
    } else {
      st.proof_bound = std::numeric_limits<double>::infinity();
    }
    previous = st.result.w;
    out.stages.push_back(std::move(st));
  }

  double p_scale = 0.0;
  for (const auto& st : out.stages) p_scale = std::max(p_scale, std::abs(st.result.energy));
  out.energy_floor = 64.0 * std::numeric_limits<double>::epsilon() * p_scale;
  out.distance_floor = 10.0 * scfg.tol_fp * std::sqrt(2.0 * gamma);

  std::vector<double> steps, dists;
  double best_c = 0.0, num = 0.0, den = 0.0;
  for (std::size_t i = 0; i + 1 < out.stages.size(); ++i) {
    ContinuationStage& a = out.stages[i];
    const ContinuationStage& b = out.stages[i + 1];
    a.energy_step = std::abs(b.result.energy - a.result.energy);
    a.distance_step = distance(a.result.w, restrict_to(b.result.w, a.result.w.grid));
    const double s = std::sqrt(gamma / a.half_length);
    best_c = std::max(best_c, *a.energy_step / s);
    num += *a.energy_step * s;
    den += s * s;
    steps.push_back(*a.energy_step);
    dists.push_back(*a.distance_step);
  }
  out.envelope_c = best_c;
  out.envelope_c_lsq = den > 0.0 ? num / den : 0.0;
  out.energy_steps_decreasing = decreasing_within(steps, out.energy_floor);
  out.distance_steps_decreasing = decreasing_within(dists, out.distance_floor);

  const double L = cfg.schedule.back();
  const Grid line = make_grid(L, cfg.m, GridMode::line);
  const EnergyContext line_ctx{p, make_avg(AvgKind::bar, line)};
  out.soliton = solve(line_ctx, scfg, Profile(line, out.stages.back().result.w.w));
  out.soliton_half_length = L;
  return out;
}

}  // namespace fpuwaves
