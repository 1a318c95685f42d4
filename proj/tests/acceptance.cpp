// Acceptance checks, one line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "fpuwaves/error.hpp"
#include "fpuwaves/experiments.hpp"
#include "fpuwaves/lattice.hpp"
#include "fpuwaves/solver.hpp"
#include "support.hpp"

using namespace fpuwaves;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const char* format, ...) __attribute__((format(printf, 3, 4))) {
    char buf[512];
    va_list args;
    va_start(args, format);
    std::vsnprintf(buf, sizeof buf, format, args);
    va_end(args);
    if (!detail.empty()) detail += "; ";
    detail += buf;
    if (!ok) {
      detail += " [x]";
      pass = false;
    }
  }
};

struct Criterion {
  int id;
  const char* title;
  double budget_s;
  std::function<void(Outcome&)> run;
};

bool monotone_history(const WaveResult& r) {
  for (std::size_t i = 1; i < r.energy_history.size(); ++i) {
    if (r.energy_history[i] < r.energy_history[i - 1] - 1e-14 * std::abs(r.energy_history[i - 1])) return false;
  }
  return true;
}

std::vector<WaveResult> cosh_runs() {
  std::vector<WaveResult> runs;
  const Grid g = make_grid(2.0, 64, GridMode::periodic);
  const EnergyContext ctx{builtin("cosh"), make_avg(AvgKind::bar, g)};
  for (double gamma : {0.1, 1.0, 10.0}) {
    SolverConfig cfg;
    cfg.gamma = gamma;
    cfg.cone = ConeKind::u_n;
    runs.push_back(solve(ctx, cfg));
  }
  return runs;
}

void spectral_fidelity(Outcome& o) {
  double worst32 = 0.0;
  double min_ratio = 1e300;
  double max_ratio = 0.0;
  const Grid g32 = make_grid(2.0, 32, GridMode::periodic);
  const Grid g64 = make_grid(2.0, 64, GridMode::periodic);
  for (int mode = 0; mode <= 8; ++mode) {
    const double e32 = spectrum_probe(g32, mode).abs_err();
    const double e64 = spectrum_probe(g64, mode).abs_err();
    worst32 = std::max(worst32, e32);
    if (e32 > 1e-13) {
      min_ratio = std::min(min_ratio, e32 / e64);
      max_ratio = std::max(max_ratio, e32 / e64);
    }
  }
  o.require(worst32 <= 5e-3, "max error at M=32 %.3e", worst32);
  o.require(min_ratio >= 3.8 && max_ratio <= 4.2, "error ratio M=32/M=64 in [%.4f, %.4f]", min_ratio, max_ratio);
}

void wcl_identities(Outcome& o) {
  const Grid g = make_grid(2.0, 64, GridMode::periodic);
  const Profile w = make_wcl(g);
  o.require(norm(w) == 1.0, "||W_CL|| - 1 = %.1e", norm(w) - 1.0);
  const Profile a = apply_avg(make_avg(AvgKind::bar, g), w);
  double tent = 0.0;
  for (std::size_t i = 0; i < g.cells; ++i) {
    tent = std::max(tent, std::abs(a.w[i] - std::max(1.0 - std::abs(g.center(i)), 0.0)));
  }
  o.require(tent <= 1e-14, "max |A W_CL - tent| %.1e", tent);
  double worst = 0.0;
  for (double q : {4.0, 10.0, 100.0}) {
    const EnergyContext ctx{builtin("homogeneous", {{"q", q}}), make_avg(AvgKind::bar, g)};
    worst = std::max(worst, std::abs(potential_energy(ctx, w) - 1.0));
  }
  o.require(worst <= 1e-6, "max |P_q(W_CL) - 1| %.1e", worst);
}

void harmonic_supremum(Outcome& o) {
  const HarmonicBenchmark b = harmonic_benchmark(1.0, 0.5, {4, 8, 16, 32}, 16);
  double min_defect = 1e300;
  for (const auto& row : b.rows) min_defect = std::min(min_defect, row.defect);
  o.require(min_defect > 0.0, "min defect %.3e", min_defect);
  o.require(std::abs(b.decay_exponent - 2.0) <= 0.3, "decay exponent %.3f", b.decay_exponent);
  o.require(b.max_excess <= 1e-9, "max excess over beta gamma %.3e", b.max_excess);
}

void solver_contract(Outcome& o) {
  const double gammas[] = {0.1, 1.0, 10.0};
  const auto runs = cosh_runs();
  for (std::size_t i = 0; i < runs.size(); ++i) {
    const WaveResult& r = runs[i];
    const bool ok = r.converged && r.residual <= 1e-9 && r.diagnostics.cone_violations == 0 &&
                    r.diagnostics.max_level_error <= 1e-12 && monotone_history(r) && r.sigma2 > 1.0;
    o.require(ok, "gamma=%g residual %.1e iters %zu sigma2 %.6f level err %.1e cone viol %zu", gammas[i], r.residual,
              r.iterations, r.sigma2, r.diagnostics.max_level_error, r.diagnostics.cone_violations);
  }
}

void quantified_monotonicity(Outcome& o) {
  for (const WaveResult& r : cosh_runs()) {
    o.require(r.diagnostics.min_monotone_slack >= -1e-9, "gamma=%g m=%.3f min slack %.3e", r.gamma,
              r.diagnostics.monotonicity_constant, r.diagnostics.min_monotone_slack);
  }
}

void gradient_correctness(Outcome& o) {
  std::mt19937_64 rng(20240611);
  const Grid g = make_grid(2.0, 32, GridMode::periodic);
  for (const char* spec : {"harmonic", "cosh", "homogeneous:q=4"}) {
    const EnergyContext ctx{parse_potential(spec), make_avg(AvgKind::bar, g)};
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const Profile w = scaled_to_level(testing::random_cone_profile(g, rng), 0.5);
      const Profile d = scaled(testing::random_profile(g, rng), 1.0 / std::sqrt(double(g.cells)));
      const double eps = 1e-5;
      const double fd =
          (potential_energy(ctx, testing::add(w, d, eps)) - potential_energy(ctx, testing::add(w, d, -eps))) /
          (2.0 * eps);
      const double an = inner(gradient(ctx, w), d);
      worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-12));
    }
    o.require(worst <= 1e-6, "%s max rel err %.2e", spec, worst);
  }
}

void localization(Outcome& o) {
  LocalizationConfig cfg;
  const auto rows = localization_sweep(cfg);
  bool decreasing = true;
  double worst_gap = 1e300;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i > 0) decreasing = decreasing && *rows[i].distance_wcl < *rows[i - 1].distance_wcl;
    const double floor = std::max(1.0, *rows[i].witness_energy);
    worst_gap = std::min(worst_gap, rows[i].result.energy - floor);
    if (!rows[i].result.converged) o.require(false, "q=%g not converged", rows[i].value);
  }
  std::string dist;
  for (const auto& r : rows) dist += (dist.empty() ? "" : ",") + std::to_string(*r.distance_wcl).substr(0, 7);
  o.require(decreasing, "distances to W_CL %s", dist.c_str());
  o.require(worst_gap >= -1e-8, "min P_q(W_q) - max(1, P_q(W_CL)) %.3e", worst_gap);
}

void continuation(Outcome& o) {
  ContinuationConfig cfg;
  cfg.potential = builtin("homogeneous", {{"q", 4.0}});
  const ContinuationResult r = continuation_to_soliton(cfg);
  double worst_right = 1e300;
  double max_step = 0.0;
  for (const auto& s : r.stages) {
    worst_right = std::min(worst_right, s.right_gap);
    if (s.energy_step) max_step = std::max(max_step, *s.energy_step);
  }
  o.require(worst_right >= -1e-9, "min P_L - P_inf(E W_L) %.3e", worst_right);
  o.require(r.energy_steps_decreasing, "energy steps decreasing (max %.2e, roundoff floor %.2e)", max_step,
            r.energy_floor);
  o.require(std::isfinite(r.envelope_c), "envelope C %.3e (lsq %.3e)", r.envelope_c, r.envelope_c_lsq);
  const WaveResult& s = r.soliton;
  o.require(s.residual <= 1e-8, "soliton residual %.2e at L=%g", s.residual, r.soliton_half_length);
  o.require(s.status == SolveStatus::converged, "soliton status %s", std::string(to_string(s.status)).c_str());
  o.require(cone_flags(s.w).in_un(), "soliton in U and N");
  o.require(s.sigma2 > 0.0, "sigma2 %.6f", s.sigma2);
  o.require(r.distance_steps_decreasing, "embedded distances decreasing (floor %.1e)", r.distance_floor);
}

void lattice_rigidity(Outcome& o) {
  const Grid g = make_grid(2.0, 64, GridMode::periodic);
  const EnergyContext ctx{builtin("cosh"), make_avg(AvgKind::hat, g)};
  SolverConfig cfg;
  cfg.gamma = 1.0;
  const WaveResult w = solve(ctx, cfg);
  o.require(w.converged, "wave train residual %.1e", w.residual);
  const WaveField f = reconstruct(ctx.op, w.w, w.sigma2);
  const double T = traversal_time(f);
  const RigidityReport rep = rigidity_error(f, ctx.potential, T, 1e-4);
  o.require(rep.rigidity_error <= 1e-3, "rigidity %.3e over T=%.4f", rep.rigidity_error, T);
  o.require(rep.momentum_drift <= 1e-12, "momentum drift %.1e", rep.momentum_drift);
  const ChainState s = seed_chain(f);
  std::vector<double> dts{1e-2, 5e-3, 2.5e-3};
  std::vector<double> drifts;
  for (double dt : dts) drifts.push_back(integrate(s, ctx.potential, dt, T).energy_drift);
  const double exponent = loglog_slope(dts, drifts);
  o.require(std::abs(exponent - 2.0) <= 0.2, "energy drift exponent %.3f", exponent);
}

void potential_classification(Outcome& o) {
  const SuperQuadReport h = check_superquadratic(builtin("harmonic"), 0.5);
  o.require(h.c1 && std::abs(h.min_margin_c1) <= kSuperQuadTol, "harmonic c1 margin %.1e", h.min_margin_c1);
  o.require(!check_superquadratic(builtin("toda"), 0.5).c1, "toda c1 false");
  o.require(check_superquadratic(builtin("toda-reflected"), 0.5).c1, "reflected toda c1 true");
  bool all_q = true;
  for (double q : {2.5, 3.0, 4.0, 6.0, 10.0, 20.0, 50.0, 100.0}) {
    all_q = all_q && check_superquadratic(builtin("homogeneous", {{"q", q}}), 0.5).c1;
  }
  o.require(all_q, "Phi_q c1 true for q in 2.5..100");
  int reports = 0;
  bool chain = true;
  for (const char* spec : {"harmonic", "cosh", "toda", "toda-reflected", "homogeneous:q=4", "homogeneous:q=10",
                           "log:beta=1,c=0.5", "arctan:beta=1,d=0.5", "rescaled:base=cosh,gamma=10"}) {
    for (double gamma : {0.1, 0.5, 2.0, 10.0}) {
      const SuperQuadReport r = check_superquadratic(parse_potential(spec), gamma);
      chain = chain && (!r.c3 || r.c2) && (!r.c2 || r.c1);
      ++reports;
    }
  }
  o.require(chain, "c3 => c2 => c1 on %d reports", reports);
}

void negative_control(Outcome& o) {
  // Truncated to [-L, L] the harmonic problem is a linear eigenproblem with a maximiser
  // whose iteration count grows like L^2; with L large the cap is hit first.
  std::vector<double> ls;
  std::vector<double> iters;
  for (double L : {16.0, 32.0, 64.0}) {
    const Grid g = make_grid(L, 2, GridMode::line);
    const EnergyContext ctx{builtin("harmonic"), make_avg(AvgKind::bar, g)};
    SolverConfig cfg;
    cfg.gamma = 0.5;
    const WaveResult r = solve(ctx, cfg);
    ls.push_back(L);
    iters.push_back(r.iterations);
    o.require(r.status != SolveStatus::converged && r.sigma2 < 1.0, "L=%g %s after %zu iterations, sigma2 %.5f < beta", L,
              std::string(to_string(r.status)).c_str(), r.iterations, r.sigma2);
  }
  o.require(loglog_slope(ls, iters) >= 1.5, "iterations grow like L^%.2f", loglog_slope(ls, iters));
  const Grid g = make_grid(256.0, 2, GridMode::line);
  const EnergyContext ctx{builtin("harmonic"), make_avg(AvgKind::bar, g)};
  SolverConfig cfg;
  cfg.gamma = 0.5;
  const WaveResult r = solve(ctx, cfg);
  o.require(r.status == SolveStatus::not_converged && r.residual > cfg.tol_fp,
            "L=256: %s at the cap of %zu, residual stalled at %.2e", std::string(to_string(r.status)).c_str(),
            r.iterations, r.residual);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "spectral fidelity of bar A", 1.0, spectral_fidelity},
      {2, "W_CL identities", 1.0, wcl_identities},
      {3, "harmonic supremum benchmark", 5.0, harmonic_supremum},
      {4, "solver contract on cosh", 30.0, solver_contract},
      {5, "quantified monotonicity", 30.0, quantified_monotonicity},
      {6, "gradient correctness", 60.0, gradient_correctness},
      {7, "complete localisation sweep", 120.0, localization},
      {8, "wave train to soliton continuation", 300.0, continuation},
      {9, "lattice rigidity", 10.0, lattice_rigidity},
      {10, "potential classification", 10.0, potential_classification},
      {11, "harmonic negative control", 120.0, negative_control},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, "threw: %s", e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.require(secs <= c.budget_s, "runtime %.2f s (budget %g s)", secs, c.budget_s);
    if (!o.pass) ++failures;
    std::printf("[%s] criterion %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.title, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures;
}
