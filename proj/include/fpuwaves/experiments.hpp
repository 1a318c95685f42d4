#pragma once

// Scripted studies built on the solver: gamma sweeps, localisation sweeps,
// the harmonic benchmark and the wave-train to soliton continuation.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fpuwaves/averaging.hpp"
#include "fpuwaves/potential.hpp"
#include "fpuwaves/reconstruction.hpp"
#include "fpuwaves/solver.hpp"

namespace fpuwaves {

struct SweepRecord {
  std::string key;  // swept parameter
  double value = 0.0;
  std::string potential;
  WaveResult result;
  std::optional<double> distance_wcl;    // ||W - sqrt(2 gamma) W_CL||
  std::optional<double> witness_energy;  // P(sqrt(2 gamma) W_CL)
};

/// Runs fn(0) .. fn(count-1) on up to `jobs` threads (0 = hardware concurrency).
/// The first exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& fn);

struct GammaSweep {
  std::vector<SweepRecord> rows;
  std::vector<Trace> traces;
  std::vector<double> nesting;  // nesting_fractions of consecutive traces, observation only
};

/// One solve per gamma in the given order; each row starts from the previous
/// profile rescaled onto the new sphere when warm_start is set.
GammaSweep gamma_sweep(const EnergyContext& ctx, const SolverConfig& base, const std::vector<double>& gammas,
                       bool warm_start = true, double omega_sign = 1.0);

struct LocalizationConfig {
  std::vector<double> qs{4, 6, 10, 20, 50, 100};
  double gamma = 0.5;
  double half_length = 2.0;
  int m = 64;
  AvgKind op = AvgKind::bar;
  ConeKind cone = ConeKind::u_n;
  SolverConfig solver;
  unsigned jobs = 0;
};

/// Homogeneous potentials Phi_q on a periodic grid; rows in the order of cfg.qs.
std::vector<SweepRecord> localization_sweep(const LocalizationConfig& cfg);

struct RescaledLocalizationConfig {
  Potential base;
  std::vector<double> gammas{1, 10, 100, 1000};
  double half_length = 2.0;
  int m = 64;
  AvgKind op = AvgKind::bar;
  ConeKind cone = ConeKind::u_n;
  SolverConfig solver;
  unsigned jobs = 0;
};

/// Maximises P_gamma (the rescaled potential) on S_{1/2} for every gamma.
std::vector<SweepRecord> rescaled_localization_sweep(const RescaledLocalizationConfig& cfg);

struct HarmonicRow {
  int n = 0;
  double energy = 0.0;  // P_harm(U_n)
  double defect = 0.0;  // beta gamma - P_harm(U_n)
};

struct HarmonicBenchmark {
  double beta = 1.0;
  double gamma = 0.5;
  double half_length = 0.0;
  int m = 0;
  std::vector<HarmonicRow> rows;
  double decay_exponent = 0.0;  // -slope of log(defect) against log(n)
  double max_excess = 0.0;      // max_n P_harm(U_n) - beta gamma
};

/// Line grid of half-length L (default max n + 2); throws DomainTooSmall if L < max n + 1.
HarmonicBenchmark harmonic_benchmark(double beta, double gamma, const std::vector<int>& ns, int m,
                                     std::optional<double> half_length = std::nullopt);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ContinuationConfig {
  Potential potential;
  double gamma = 0.5;
  std::vector<double> schedule{4, 8, 16, 32, 64};
  int m = 16;
  SolverConfig solver;  // cone is forced to U^N
  int witness_n_max = 32;
};

struct ContinuationStage {
  double half_length = 0.0;
  WaveResult result;
  double p_embedded = 0.0;                  // P_inf(E_L W_L)
  double right_gap = 0.0;                   // P_L(W_L) - P_inf(E_L W_L)
  double proof_bound = 0.0;                 // 2 eps sup_{0<=r<=eps} Phi', eps = sqrt(gamma / (L - 1))
  std::optional<double> energy_step;        // |P_{next L} - P_L|
  std::optional<double> distance_step;      // ||E W_L - W_{next L}|_{[-L, L]}||
};

struct ContinuationResult {
  std::vector<ContinuationStage> stages;
  double margin_wcl = 0.0;
  double margin_harmonic = 0.0;
  double envelope_c = 0.0;      // tightest C with |P_{next} - P_L| <= C sqrt(gamma / L)
  double envelope_c_lsq = 0.0;  // least-squares C
  double energy_floor = 0.0;    // roundoff floor used for "decreasing"
  double distance_floor = 0.0;
  bool energy_steps_decreasing = false;
  bool distance_steps_decreasing = false;
  WaveResult soliton;           // line-mode solve on the last L, warm-started
  double soliton_half_length = 0.0;
};

/// Throws NotGenuinelySuperquadratic unless one of the two energy witnesses beats beta gamma.
ContinuationResult continuation_to_soliton(const ContinuationConfig& cfg);

/// Sequence is non-increasing once differences below `floor` are treated as ties.
bool decreasing_within(const std::vector<double>& values, double floor);

}  // namespace fpuwaves
