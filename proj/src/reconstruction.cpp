#include "fpuwaves/reconstruction.hpp"

#include <algorithm>
#include <cmath>

#include "fpuwaves/error.hpp"

namespace fpuwaves {

std::string_view to_string(FieldMode mode) { return mode == FieldMode::wave_train ? "wave_train" : "soliton"; }

namespace {

bool is_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9 * std::max(1.0, std::abs(x)); }

// A W at the centers of cells -n .. N-1+n, zero extension on a line grid.
std::vector<double> averaged_with_margin(const AvgOperator& op, const Profile& w, std::size_t n) {
  const Grid& g = w.grid;
  if (g.mode == GridMode::periodic) {
    const Profile a = apply_avg(op, w);
    std::vector<double> out(g.cells + 2 * n);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = a.w[(i + g.cells - n % g.cells) % g.cells];
    }
    return out;
  }
  const double pad = static_cast<double>(n) * g.spacing();
  const Grid wide = make_grid(g.half_length + pad, g.m, GridMode::line);
  AvgOperator wide_op = op;
  wide_op.grid = wide;
  return apply_avg(wide_op, embed(w, wide)).w;
}

}  // namespace

WaveField reconstruct(const AvgOperator& op, const Profile& w, double sigma2, Offsets offsets, FieldMode mode,
                      double omega_sign) {
  if (!(op.grid == w.grid)) throw Error(ErrorCode::grid_mismatch, "operator and profile live on different grids");
  const std::size_t n = w.size();
  const auto shift = static_cast<std::size_t>(op.half_cells);
  const std::vector<double> aw = averaged_with_margin(op, w, shift);

  WaveField f;
  f.k = op.window;
  f.sigma2 = sigma2;
  f.omega = (omega_sign < 0.0 ? -1.0 : 1.0) * std::sqrt(std::max(sigma2, 0.0));
  f.offsets = offsets;
  f.mode = mode;
  f.R = Profile::zeros(w.grid);
  f.V = Profile::zeros(w.grid);
  for (std::size_t i = 0; i < n; ++i) {
    f.R.w[i] = offsets.r + aw[i + 2 * shift];
    f.V.w[i] = offsets.v + f.omega * w.w[i];
  }
  return f;
}

Trace trace(const WaveField& field) {
  Trace t;
  const std::size_t n = field.V.size();
  for (std::size_t i = 0; i < n; ++i) {
    t.phi.push_back(field.V.grid.center(i));
    t.r.push_back(field.R.w[i]);
    t.v.push_back(field.V.w[i]);
  }
  if (field.V.grid.mode == GridMode::periodic && n > 0) {
    t.phi.push_back(t.phi.front() + field.V.grid.length());
    t.r.push_back(t.r.front());
    t.v.push_back(t.v.front());
    t.closed = true;
  }
  return t;
}

Profile recover_profile(const WaveField& field) {
  Profile w = Profile::zeros(field.V.grid);
  if (field.omega == 0.0) return w;
  for (std::size_t i = 0; i < w.size(); ++i) w.w[i] = (field.V.w[i] - field.offsets.v) / field.omega;
  return w;
}

double wave_defect(const WaveField& field, const Potential& potential) {
  const Grid& g = field.V.grid;
  if (g.mode != GridMode::periodic) throw Error(ErrorCode::grid_mismatch, "wave_defect needs a periodic field");
  const std::size_t n = g.cells;
  const double h = g.spacing();
  const double shift_cells = field.k / h;
  if (!is_integer(shift_cells)) throw Error(ErrorCode::non_commensurate, "k is not a multiple of h");
  const auto s = static_cast<std::size_t>(std::llround(shift_cells)) % n;
  auto at = [n](const std::vector<double>& x, std::size_t i, std::ptrdiff_t d) {
    const auto nn = static_cast<std::ptrdiff_t>(n);
    return x[static_cast<std::size_t>(((static_cast<std::ptrdiff_t>(i) + d) % nn + nn) % nn)];
  };
  const auto& R = field.R.w;
  const auto& V = field.V.w;
  const auto sd = static_cast<std::ptrdiff_t>(s);
  double e1 = 0.0;
  double e2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dR = (at(R, i, 1) - at(R, i, -1)) / (2.0 * h);
    const double dV = (at(V, i, 1) - at(V, i, -1)) / (2.0 * h);
    e1 = std::max(e1, std::abs(field.omega * dR - (at(V, i, sd) - V[i])));
    const double f0 = potential.dphi(R[i] - field.offsets.r);
    const double f1 = potential.dphi(at(R, i, -sd) - field.offsets.r);
    e2 = std::max(e2, std::abs(field.omega * dV - (f0 - f1)));
  }
  return e1 + e2;
}

ScaledSolution rescale(const Profile& w, double sigma2, double gamma, double window, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::bad_params, "lambda must be positive");
  const double m = lambda * w.grid.m;
  if (!is_integer(m)) throw Error(ErrorCode::non_commensurate, "lambda M is not an integer");
  const Grid g = make_grid(w.grid.half_length / lambda, static_cast<int>(std::llround(m)), w.grid.mode);
  if (g.cells != w.grid.cells) throw Error(ErrorCode::non_commensurate, "rescaled grid changes the cell count");
  ScaledSolution out{Profile(g, w.w), sigma2 / (lambda * lambda), lambda * gamma, window / lambda};
  for (double& x : out.w.w) x *= lambda;
  return out;
}

WaveField rescale(const WaveField& field, double lambda) {
  if (!(lambda > 0.0)) throw Error(ErrorCode::bad_params, "lambda must be positive");
  const Grid& old = field.V.grid;
  const double m = lambda * old.m;
  if (!is_integer(m)) throw Error(ErrorCode::non_commensurate, "lambda M is not an integer");
  const Grid g = make_grid(old.half_length / lambda, static_cast<int>(std::llround(m)), old.mode);
  if (g.cells != old.cells) throw Error(ErrorCode::non_commensurate, "rescaled grid changes the cell count");
  WaveField f = field;
  f.R = Profile(g, field.R.w);
  f.V = Profile(g, field.V.w);
  f.k = field.k / lambda;
  f.omega = field.omega / lambda;
  f.sigma2 = field.sigma2 / (lambda * lambda);
  return f;
}

bool point_in_polygon(double x, double y, const Trace& polygon) {
  bool inside = false;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const double xi = polygon.r[i], yi = polygon.v[i];
    const double xj = polygon.r[j], yj = polygon.v[j];
    if ((yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi) inside = !inside;
  }
  return inside;
}

std::vector<double> nesting_fractions(const std::vector<Trace>& traces) {
  std::vector<double> out;
  for (std::size_t t = 0; t + 1 < traces.size(); ++t) {
    const Trace& inner_trace = traces[t];
    const Trace& outer = traces[t + 1];
    if (inner_trace.size() == 0 || outer.size() < 3) {
      out.push_back(0.0);
      continue;
    }
    std::size_t hits = 0;
    for (std::size_t i = 0; i < inner_trace.size(); ++i) {
      if (point_in_polygon(inner_trace.r[i], inner_trace.v[i], outer)) ++hits;
    }
    out.push_back(static_cast<double>(hits) / static_cast<double>(inner_trace.size()));
  }
  return out;
}

}  // namespace fpuwaves
