#include "fpuwaves/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fpuwaves/error.hpp"

namespace fpuwaves {

std::string_view to_string(GridMode mode) {
  return mode == GridMode::periodic ? "periodic" : "line";
}

GridMode parse_grid_mode(std::string_view text) {
  if (text == "periodic") return GridMode::periodic;
  if (text == "line") return GridMode::line;
  throw Error(ErrorCode::config, "unknown grid mode '" + std::string(text) + "'");
}

Grid make_grid(double half_length, int m, GridMode mode) {
  if (!(half_length > 0.0) || !std::isfinite(half_length)) {
    throw Error(ErrorCode::bad_params, "half length must be positive");
  }
  if (m <= 0) throw Error(ErrorCode::bad_params, "M must be a positive integer");
  const double half_cells = half_length * 2.0 * m;  // L / h
  const double rounded = std::round(half_cells);
  if (std::abs(half_cells - rounded) > 1e-9 * std::max(1.0, half_cells) || rounded < 1.0) {
    throw Error(ErrorCode::non_commensurate,
                "L = " + std::to_string(half_length) + " is not a multiple of h = 1/" +
                    std::to_string(2 * m));
  }
  Grid g;
  g.m = m;
  g.mode = mode;
  g.cells = 2 * static_cast<std::size_t>(rounded);
  g.half_length = rounded / (2.0 * m);
  return g;
}

Profile::Profile(Grid g, std::vector<double> samples) : grid(g), w(std::move(samples)) {
  if (w.size() != grid.cells) {
    throw Error(ErrorCode::grid_mismatch, "sample count does not match grid");
  }
}

Profile Profile::zeros(const Grid& grid) { return Profile(grid, std::vector<double>(grid.cells, 0.0)); }

Profile Profile::sample(const Grid& grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.cells);
  for (std::size_t i = 0; i < grid.cells; ++i) v[i] = f(grid.center(i));
  return Profile(grid, std::move(v));
}

namespace {

void require_same_grid(const Profile& a, const Profile& b) {
  if (!(a.grid == b.grid)) throw Error(ErrorCode::grid_mismatch, "profiles live on different grids");
}

}  // namespace

double inner(const Profile& a, const Profile& b) {
  require_same_grid(a, b);
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) s += static_cast<long double>(a.w[i]) * b.w[i];
  return static_cast<double>(s) * a.grid.spacing();
}

double norm(const Profile& w) { return std::sqrt(inner(w, w)); }

double norm_half_sq(const Profile& w) { return 0.5 * inner(w, w); }

double max_abs(const Profile& w) {
  double m = 0.0;
  for (double x : w.w) m = std::max(m, std::abs(x));
  return m;
}

double distance(const Profile& a, const Profile& b) {
  require_same_grid(a, b);
  long double s = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long double d = static_cast<long double>(a.w[i]) - b.w[i];
    s += d * d;
  }
  return std::sqrt(static_cast<double>(s) * a.grid.spacing());
}

Profile scaled(Profile w, double factor) {
  for (double& x : w.w) x *= factor;
  return w;
}

Profile scaled_to_level(Profile w, double gamma) {
  const double n = norm(w);
  if (n == 0.0) throw Error(ErrorCode::trivial_minimiser, "cannot scale the zero profile onto a sphere");
  w = scaled(std::move(w), std::sqrt(2.0 * gamma) / n);
  // one correction pass removes the rounding left by the first division
  const double n2 = norm(w);
  return scaled(std::move(w), std::sqrt(2.0 * gamma) / n2);
}

double cone_tolerance(const Profile& w) { return 1e-12 * max_abs(w); }

bool is_even(const Profile& w) {
  const double tol = cone_tolerance(w);
  const std::size_t n = w.size();
  for (std::size_t i = 0; i < n / 2; ++i) {
    if (std::abs(w.w[i] - w.w[n - 1 - i]) > tol) return false;
  }
  return true;
}

bool is_unimodal(const Profile& w) {
  const double tol = cone_tolerance(w);
  const std::size_t n = w.size();
  const std::size_t mid = n / 2;
  for (std::size_t i = 0; i + 1 < mid; ++i) {
    if (w.w[i + 1] < w.w[i] - tol) return false;
  }
  for (std::size_t i = mid; i + 1 < n; ++i) {
    if (w.w[i + 1] > w.w[i] + tol) return false;
  }
  return true;
}

bool is_nonnegative(const Profile& w) {
  const double tol = cone_tolerance(w);
  return std::all_of(w.w.begin(), w.w.end(), [tol](double x) { return x >= -tol; });
}

ConeFlags cone_flags(const Profile& w) { return {is_even(w), is_unimodal(w), is_nonnegative(w)}; }

Profile make_wcl(const Grid& grid) {
  return Profile::sample(grid, [](double phi) { return std::abs(phi) < 0.5 ? 1.0 : 0.0; });
}

Profile make_harmonic_sequence(const Grid& grid, int n, double gamma) {
  if (n < 1) throw Error(ErrorCode::bad_params, "harmonic sequence index must be >= 1");
  if (!(gamma > 0.0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  if (grid.half_length < n + 1.0 - 1e-12) {
    throw Error(ErrorCode::domain_too_small,
                "U_" + std::to_string(n) + " needs L >= " + std::to_string(n + 1));
  }
  const double amp = std::sqrt(2.0 * gamma) / std::sqrt(static_cast<double>(n));
  const double k = M_PI / (2.0 * n);
  return Profile::sample(grid, [=](double phi) {
    return std::abs(phi) <= n ? amp * std::cos(k * phi) : 0.0;
  });
}

Profile embed(const Profile& w, const Grid& target) {
  if (target.m != w.grid.m) throw Error(ErrorCode::grid_mismatch, "embedding requires equal spacing");
  if (target.cells < w.size()) {
    throw Error(ErrorCode::domain_too_small, "embedding target is smaller than the source");
  }
  const std::size_t offset = (target.cells - w.size()) / 2;
  std::vector<double> v(target.cells, 0.0);
  std::copy(w.w.begin(), w.w.end(), v.begin() + static_cast<std::ptrdiff_t>(offset));
  return Profile(target, std::move(v));
}

Profile restrict_to(const Profile& w, const Grid& target) {
  if (target.m != w.grid.m) throw Error(ErrorCode::grid_mismatch, "restriction requires equal spacing");
  if (target.cells > w.size()) throw Error(ErrorCode::domain_too_small, "restriction target is larger");
  const std::size_t offset = (w.size() - target.cells) / 2;
  std::vector<double> v(w.w.begin() + static_cast<std::ptrdiff_t>(offset),
                        w.w.begin() + static_cast<std::ptrdiff_t>(offset + target.cells));
  return Profile(target, std::move(v));
}

}  // namespace fpuwaves
