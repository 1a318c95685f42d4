#pragma once

// Fixed-point iteration of the improvement operator
//
//   T_gamma[W] = sqrt(2 gamma) dP[W] / ||dP[W]||_2
//
// on the sphere 1/2||W||^2 = gamma. Each step increases P; fixed points are
// travelling waves sigma^2 W = A Phi'(A W) with sigma^2 = ||dP[W]|| / sqrt(2 gamma).

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fpuwaves/energy.hpp"
#include "fpuwaves/grid.hpp"

namespace fpuwaves {

enum class ConeKind { u, u_n };

std::string_view to_string(ConeKind cone);
ConeKind parse_cone(std::string_view text);
bool in_cone(const Profile& w, ConeKind cone);

struct SeedSpec {
  std::string kind = "cosine_bump";  // cosine_bump | tent | wcl | gaussian
  double width = 1.0;                // gaussian only

  std::string to_string() const;
};

/// Accepts "cosine_bump", "tent", "wcl", "gaussian", "gaussian(0.5)", "gaussian:0.5".
SeedSpec parse_seed(std::string_view text);

struct SolverConfig {
  double gamma = 1.0;
  ConeKind cone = ConeKind::u;
  std::size_t max_iter = 100000;
  double tol_fp = 1e-10;
  double tol_energy = 1e-13;
  SeedSpec seed;
  double tail_tol = 1e-10;
};

enum class SolveStatus { converged, not_converged, truncation_suspect };

std::string_view to_string(SolveStatus status);

/// Per-run bookkeeping of the invariants the iteration is supposed to keep.
struct SolveDiagnostics {
  double monotonicity_constant = 0.0;    // m = inf Phi'' on the working radius
  double min_monotone_slack = 0.0;       // min_n P(W_{n+1}) - P(W_n) - m/2 ||A W_{n+1} - A W_n||^2
  double max_relative_energy_drop = 0.0; // max_n (P(W_n) - P(W_{n+1})) / |P(W_n)|, clipped at 0
  double max_level_error = 0.0;          // max_n |1/2||W_n||^2 - gamma| / gamma
  std::size_t cone_violations = 0;       // iterates that left the configured cone
  double tail_mass = 0.0;                // line mode: int_{|phi| > L-1} W^2 / gamma
  std::vector<double> step_distances;
};

struct WaveResult {
  Profile w;
  double gamma = 0.0;
  double sigma2 = 0.0;
  double energy = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  std::vector<double> energy_history;
  bool converged = false;
  SolveStatus status = SolveStatus::not_converged;
  bool supersonic = false;  // sigma2 > beta
  SolveDiagnostics diagnostics;
};

/// One application of T_gamma. Throws TrivialMinimiser when P(W) is (numerically) zero
/// and ZeroGradient if dP[W] vanishes although P(W) > 0.
Profile improve(const EnergyContext& ctx, const Profile& w, double gamma);

/// ||sigma2 W - dP[W]|| / max(||dP[W]||, eps).
double residual(const EnergyContext& ctx, const Profile& w, double sigma2);

/// Builds the named even, unimodal start profile on the sphere of level gamma.
Profile seed(const SeedSpec& spec, const Grid& grid, double gamma, ConeKind cone);

/// Runs the iteration from `initial` (rescaled onto the sphere) or from cfg.seed.
WaveResult solve(const EnergyContext& ctx, const SolverConfig& cfg,
                 const std::optional<Profile>& initial = std::nullopt);

}  // namespace fpuwaves
