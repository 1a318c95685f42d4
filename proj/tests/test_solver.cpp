#include <doctest.h>

#include <cmath>

#include "fpuwaves/error.hpp"
#include "fpuwaves/solver.hpp"
#include "support.hpp"

using namespace fpuwaves;

namespace {

EnergyContext cosh_ctx(AvgKind kind, int m, double L = 2.0) {
  const Grid g = make_grid(L, m, GridMode::periodic);
  return EnergyContext{builtin("cosh"), make_avg(kind, g)};
}

void check_invariants(const WaveResult& r, const SolverConfig& cfg) {
  CHECK(r.converged);
  CHECK(r.residual <= 2.0 * cfg.tol_fp);
  CHECK(std::abs(norm_half_sq(r.w) - cfg.gamma) <= 1e-12 * cfg.gamma);
  CHECK(r.diagnostics.cone_violations == 0);
  CHECK(r.diagnostics.max_level_error <= 1e-12);
  for (std::size_t i = 1; i < r.energy_history.size(); ++i) {
    CHECK(r.energy_history[i] >= r.energy_history[i - 1] - 1e-14 * std::abs(r.energy_history[i - 1]));
  }
}

}  // namespace

TEST_SUITE("solver") {
  TEST_CASE("improve fixes an eigenmode of the harmonic problem") {
    const Grid g = make_grid(2.0, 16, GridMode::periodic);
    const EnergyContext ctx{builtin("harmonic"), make_avg(AvgKind::hat, g)};
    // A^2 maps the sampled mode to a multiple of itself up to O(h^2)
    const Profile w = scaled_to_level(Profile::sample(g, [](double x) { return std::cos(M_PI * x / 2.0); }), 0.5);
    const Profile t = improve(ctx, w, 0.5);
    CHECK(distance(t, w) <= 1e-3);
    CHECK(potential_energy(ctx, t) == doctest::Approx(potential_energy(ctx, w)).epsilon(1e-6));
  }

  TEST_CASE("improve increases P from W_CL") {
    const EnergyContext ctx = cosh_ctx(AvgKind::bar, 32);
    const Profile w = scaled_to_level(make_wcl(ctx.op.grid), 0.5);
    const Profile t = improve(ctx, w, 0.5);
    CHECK(potential_energy(ctx, t) > potential_energy(ctx, w) + 1e-6);
    CHECK(norm_half_sq(t) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(cone_flags(t).in_un());
  }

  TEST_CASE("improve rejects the zero profile") {
    const EnergyContext ctx = cosh_ctx(AvgKind::bar, 8);
    try {
      improve(ctx, Profile::zeros(ctx.op.grid), 0.5);
      CHECK(false);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::trivial_minimiser);
    }
  }

  TEST_CASE("cone invariance of single steps on random profiles") {
    std::mt19937_64 rng(99);
    const EnergyContext bar = cosh_ctx(AvgKind::bar, 16);
    const EnergyContext hat = cosh_ctx(AvgKind::hat, 16);
    for (int t = 0; t < 50; ++t) {
      const Profile un = scaled_to_level(testing::random_cone_profile(bar.op.grid, rng), 1.0);
      CHECK(cone_flags(improve(bar, un, 1.0)).in_un());
      const Profile u = scaled_to_level(testing::random_cone_profile(bar.op.grid, rng, 0.4), 1.0);
      CHECK(cone_flags(improve(hat, u, 1.0)).in_u());
      CHECK(cone_flags(improve(bar, u, 1.0)).in_u());
    }
  }

  TEST_CASE("quantified monotonicity on random steps") {
    std::mt19937_64 rng(5);
    const EnergyContext ctx = cosh_ctx(AvgKind::bar, 16);
    const double gamma = 1.0;
    const double m = monotonicity_constant(ctx.potential, gamma);
    for (int t = 0; t < 50; ++t) {
      const Profile w = scaled_to_level(testing::random_cone_profile(ctx.op.grid, rng, 0.2), gamma);
      const Profile tw = improve(ctx, w, gamma);
      const double gain = potential_energy(ctx, tw) - potential_energy(ctx, w);
      CHECK(gain >= 0.5 * m * averaged_norm_sq(ctx.op, testing::add(tw, w, -1.0)) - 1e-9);
    }
  }

  TEST_CASE("cosh wave trains over gamma") {
    double last_max = 0.0;
    for (double gamma : {0.1, 1.0, 10.0}) {
      const EnergyContext ctx = cosh_ctx(AvgKind::bar, 32);
      SolverConfig cfg;
      cfg.gamma = gamma;
      cfg.cone = ConeKind::u_n;
      const WaveResult r = solve(ctx, cfg);
      CAPTURE(gamma);
      check_invariants(r, cfg);
      CHECK(r.sigma2 > 1.0);
      CHECK(r.supersonic);
      CHECK(r.diagnostics.min_monotone_slack >= -1e-9);
      CHECK(max_abs(r.w) >= last_max);
      last_max = max_abs(r.w);
    }
  }

  TEST_CASE("hat operator wave trains keep U") {
    const EnergyContext ctx = cosh_ctx(AvgKind::hat, 32);
    SolverConfig cfg;
    cfg.gamma = 1.0;
    const WaveResult r = solve(ctx, cfg);
    check_invariants(r, cfg);
    CHECK(r.w.w.front() < 0.0);  // zero-mean image forces negative tails
  }

  TEST_CASE("residual detects a wrong multiplier") {
    const EnergyContext ctx = cosh_ctx(AvgKind::bar, 16);
    SolverConfig cfg;
    cfg.gamma = 10.0;
    const WaveResult r = solve(ctx, cfg);
    CHECK(residual(ctx, r.w, r.sigma2) <= 2.0 * cfg.tol_fp);
    CHECK(residual(ctx, r.w, 1.1 * r.sigma2) >= 0.05);
  }

  TEST_CASE("fixed point is seed independent") {
    const Grid g = make_grid(2.0, 32, GridMode::periodic);
    const EnergyContext ctx{builtin("homogeneous", {{"q", 10.0}}), make_avg(AvgKind::bar, g)};
    SolverConfig cfg;
    cfg.gamma = 0.5;
    cfg.cone = ConeKind::u_n;
    std::vector<WaveResult> runs;
    for (const char* s : {"cosine_bump", "wcl", "tent", "gaussian(0.7)"}) {
      cfg.seed = parse_seed(s);
      runs.push_back(solve(ctx, cfg));
    }
    for (const auto& r : runs) {
      CHECK(r.converged);
      CHECK(distance(r.w, runs.front().w) <= 1e-8);
    }
  }

  TEST_CASE("solve is deterministic") {
    const EnergyContext ctx = cosh_ctx(AvgKind::hat, 16);
    SolverConfig cfg;
    cfg.gamma = 2.0;
    const WaveResult a = solve(ctx, cfg);
    const WaveResult b = solve(ctx, cfg);
    CHECK(a.w.w == b.w.w);
    CHECK(a.energy_history == b.energy_history);
  }

  TEST_CASE("iteration cap yields NotConverged") {
    const EnergyContext ctx = cosh_ctx(AvgKind::bar, 16);
    SolverConfig cfg;
    cfg.gamma = 1.0;
    cfg.max_iter = 3;
    const WaveResult r = solve(ctx, cfg);
    CHECK_FALSE(r.converged);
    CHECK(r.status == SolveStatus::not_converged);
    CHECK(r.iterations == 3);
    CHECK(r.energy_history.size() == 4);
  }

  TEST_CASE("line mode flags mass at the boundary") {
    const Grid g = make_grid(3.0, 8, GridMode::line);
    const EnergyContext ctx{builtin("harmonic"), make_avg(AvgKind::bar, g)};
    SolverConfig cfg;
    cfg.gamma = 0.5;
    const WaveResult r = solve(ctx, cfg);
    CHECK(r.status == SolveStatus::truncation_suspect);
    CHECK_FALSE(r.converged);
    CHECK(r.diagnostics.tail_mass > cfg.tail_tol);
  }

  TEST_CASE("seeds") {
    const Grid g = make_grid(2.0, 16, GridMode::periodic);
    const Profile c = seed(parse_seed("cosine_bump"), g, 0.7, ConeKind::u);
    CHECK(norm_half_sq(c) == doctest::Approx(0.7).epsilon(1e-14));
    CHECK(c.w[g.cells / 2] / c.w[0] == doctest::Approx(std::cos(M_PI * g.center(g.cells / 2) / 4.0) /
                                                       std::cos(M_PI * g.center(0) / 4.0)));
    const Profile w = seed(parse_seed("wcl"), g, 2.0, ConeKind::u_n);
    CHECK(distance(w, scaled(make_wcl(g), 2.0)) <= 1e-14);
    const Grid line = make_grid(4.0, 8, GridMode::line);
    const Profile ga = seed(parse_seed("gaussian(1.0)"), line, 0.5, ConeKind::u_n);
    CHECK(cone_flags(ga).in_un());
    CHECK(norm_half_sq(ga) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(parse_seed("gaussian:0.25").width == 0.25);
    CHECK_THROWS_AS(parse_seed("sawtooth"), Error);
    CHECK_THROWS_AS(parse_seed("gaussian(-1)"), Error);
    CHECK_THROWS_AS(seed(parse_seed("tent"), g, 0.0, ConeKind::u), Error);
  }
}
