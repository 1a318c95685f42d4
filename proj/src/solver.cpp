#include "fpuwaves/solver.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fpuwaves/error.hpp"

namespace fpuwaves {

std::string_view to_string(ConeKind cone) { return cone == ConeKind::u ? "U" : "UN"; }

ConeKind parse_cone(std::string_view text) {
  if (text == "U" || text == "u") return ConeKind::u;
  if (text == "UN" || text == "un" || text == "U^N" || text == "UcapN") return ConeKind::u_n;
  throw Error(ErrorCode::config, "unknown cone '" + std::string(text) + "' (expected U|UN)");
}

bool in_cone(const Profile& w, ConeKind cone) {
  const ConeFlags f = cone_flags(w);
  return cone == ConeKind::u ? f.in_u() : f.in_un();
}

std::string SeedSpec::to_string() const {
  if (kind != "gaussian") return kind;
  std::ostringstream out;
  out.precision(17);
  out << "gaussian(" << width << ')';
  return out.str();
}

SeedSpec parse_seed(std::string_view text) {
  SeedSpec s;
  const auto open = text.find_first_of("(:");
  s.kind = std::string(text.substr(0, open));
  if (open != std::string_view::npos) {
    std::string arg(text.substr(open + 1));
    if (!arg.empty() && arg.back() == ')') arg.pop_back();
    try {
      s.width = std::stod(arg);
    } catch (const std::exception&) {
      throw Error(ErrorCode::bad_descriptor, "bad seed argument '" + arg + "'");
    }
    if (!(s.width > 0.0)) throw Error(ErrorCode::bad_descriptor, "seed width must be positive");
  }
  if (s.kind != "cosine_bump" && s.kind != "tent" && s.kind != "wcl" && s.kind != "gaussian") {
    throw Error(ErrorCode::bad_descriptor, "unknown seed '" + s.kind + "'");
  }
  return s;
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::converged: return "Converged";
    case SolveStatus::not_converged: return "NotConverged";
    case SolveStatus::truncation_suspect: return "TruncationSuspect";
  }
  return "Unknown";
}

namespace {

double trivial_threshold(const EnergyContext& ctx, double gamma) {
  return 1e-14 * gamma * ctx.potential.beta;
}

void check_nontrivial(const EnergyContext& ctx, double energy, double gamma) {
  if (!(energy > trivial_threshold(ctx, gamma))) {
    throw Error(ErrorCode::trivial_minimiser, "P(W) = " + std::to_string(energy) + " lies in the zero set of P");
  }
}

Profile step_from_gradient(const Profile& grad, double gamma) {
  if (norm(grad) == 0.0) {
    throw Error(ErrorCode::zero_gradient, "dP[W] vanishes although P(W) > 0");
  }
  return scaled_to_level(grad, gamma);
}

// Symmetric decreasing rearrangement of an even profile.
Profile rearrange_unimodal(Profile w) {
  const std::size_t n = w.size();
  const std::size_t mid = n / 2;
  std::vector<double> right(w.w.begin() + static_cast<std::ptrdiff_t>(mid), w.w.end());
  std::sort(right.begin(), right.end(), std::greater<>());
  for (std::size_t i = 0; i < right.size(); ++i) {
    w.w[mid + i] = right[i];
    w.w[mid - 1 - i] = right[i];
  }
  return w;
}

double tail_mass(const Profile& w) {
  const double edge = w.grid.half_length - 1.0;
  long double s = 0.0L;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (std::abs(w.grid.center(i)) > edge) s += static_cast<long double>(w.w[i]) * w.w[i];
  }
  return static_cast<double>(s) * w.grid.spacing();
}

}  // namespace

Profile improve(const EnergyContext& ctx, const Profile& w, double gamma) {
  const EnergyEval ev = evaluate(ctx, w);
  check_nontrivial(ctx, ev.energy, gamma);
  return step_from_gradient(ev.gradient, gamma);
}

double residual(const EnergyContext& ctx, const Profile& w, double sigma2) {
  const Profile g = gradient(ctx, w);
  Profile diff = scaled(w, sigma2);
  for (std::size_t i = 0; i < diff.size(); ++i) diff.w[i] -= g.w[i];
  return norm(diff) / std::max(norm(g), 1e-300);
}

Profile seed(const SeedSpec& spec, const Grid& grid, double gamma, ConeKind cone) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  Profile w;
  const double L = grid.half_length;
  if (spec.kind == "cosine_bump") {
    w = Profile::sample(grid, [L](double phi) { return std::cos(M_PI * phi / (2.0 * L)); });
  } else if (spec.kind == "tent") {
    w = Profile::sample(grid, [](double phi) { return std::max(1.0 - std::abs(phi), 0.0); });
  } else if (spec.kind == "wcl") {
    w = make_wcl(grid);
  } else if (spec.kind == "gaussian") {
    const double s = spec.width;
    w = Profile::sample(grid, [s](double phi) { return std::exp(-phi * phi / (2.0 * s * s)); });
  } else {
    throw Error(ErrorCode::bad_descriptor, "unknown seed '" + spec.kind + "'");
  }
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    const double avg = 0.5 * (w.w[i] + w.w[n - 1 - i]);
    w.w[i] = w.w[n - 1 - i] = avg;
  }
  if (!is_unimodal(w)) w = rearrange_unimodal(std::move(w));
  if (cone == ConeKind::u_n) {
    for (double& x : w.w) x = std::max(x, 0.0);
  }
  return scaled_to_level(std::move(w), gamma);
}

WaveResult solve(const EnergyContext& ctx, const SolverConfig& cfg, const std::optional<Profile>& initial) {
  if (!(cfg.gamma > 0.0) || !(cfg.tol_fp > 0.0) || !(cfg.tol_energy > 0.0)) {
    throw Error(ErrorCode::bad_params, "gamma and tolerances must be positive");
  }
  const double gamma = cfg.gamma;
  const double radius = std::sqrt(2.0 * gamma);
  Profile w = initial ? scaled_to_level(*initial, gamma) : seed(cfg.seed, ctx.op.grid, gamma, cfg.cone);

  WaveResult res;
  res.gamma = gamma;
  SolveDiagnostics& diag = res.diagnostics;
  diag.monotonicity_constant = monotonicity_constant(ctx.potential, gamma);
  diag.min_monotone_slack = std::numeric_limits<double>::infinity();
  diag.max_level_error = std::abs(norm_half_sq(w) - gamma) / gamma;
  if (!in_cone(w, cfg.cone)) ++diag.cone_violations;

  EnergyEval ev = evaluate(ctx, w);
  check_nontrivial(ctx, ev.energy, gamma);
  res.energy_history.push_back(ev.energy);

  for (std::size_t it = 1; it <= cfg.max_iter; ++it) {
    Profile next = step_from_gradient(ev.gradient, gamma);
    EnergyEval next_ev = evaluate(ctx, next);

    Profile delta = next;
    for (std::size_t i = 0; i < delta.size(); ++i) delta.w[i] -= w.w[i];
    const double step = norm(delta);
    const double gain = next_ev.energy - ev.energy;
    const double slack = gain - 0.5 * diag.monotonicity_constant * averaged_norm_sq(ctx.op, delta);
    diag.min_monotone_slack = std::min(diag.min_monotone_slack, slack);
    diag.max_relative_energy_drop =
        std::max(diag.max_relative_energy_drop, -gain / std::max(std::abs(ev.energy), 1e-300));
    diag.max_level_error = std::max(diag.max_level_error, std::abs(norm_half_sq(next) - gamma) / gamma);
    if (!in_cone(next, cfg.cone)) ++diag.cone_violations;
    diag.step_distances.push_back(step);

    w = std::move(next);
    ev = std::move(next_ev);
    res.energy_history.push_back(ev.energy);
    res.iterations = it;

    if (step <= cfg.tol_fp * radius && gain <= cfg.tol_energy * std::abs(ev.energy)) {
      res.converged = true;
      break;
    }
  }
  if (diag.step_distances.empty()) diag.min_monotone_slack = 0.0;

  res.energy = ev.energy;
  res.sigma2 = norm(ev.gradient) / radius;
  {
    Profile diff = scaled(w, res.sigma2);
    for (std::size_t i = 0; i < diff.size(); ++i) diff.w[i] -= ev.gradient.w[i];
    res.residual = norm(diff) / std::max(norm(ev.gradient), 1e-300);
  }
  res.status = res.converged ? SolveStatus::converged : SolveStatus::not_converged;
  if (ctx.op.grid.mode == GridMode::line) {
    diag.tail_mass = tail_mass(w) / gamma;
    // only a converged profile can be blamed on the truncation
    if (res.converged && diag.tail_mass > cfg.tail_tol) {
      res.converged = false;
      res.status = SolveStatus::truncation_suspect;
    }
  }
  res.supersonic = res.sigma2 > ctx.potential.beta;
  res.w = std::move(w);
  return res;
}

}  // namespace fpuwaves
