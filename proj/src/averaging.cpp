#include "fpuwaves/averaging.hpp"

#include <cmath>
#include <string>

#include "fpuwaves/error.hpp"

namespace fpuwaves {

std::string_view to_string(AvgKind kind) { return kind == AvgKind::bar ? "bar" : "hat"; }

AvgKind parse_avg_kind(std::string_view text) {
  if (text == "bar") return AvgKind::bar;
  if (text == "hat") return AvgKind::hat;
  throw Error(ErrorCode::config, "unknown operator '" + std::string(text) + "' (expected bar|hat)");
}

AvgOperator make_avg(AvgKind kind, const Grid& grid, double window) {
  if (kind == AvgKind::hat && grid.mode == GridMode::line) {
    throw Error(ErrorCode::hat_on_line, "the mean-free operator needs a periodic grid");
  }
  if (!(window > 0.0)) throw Error(ErrorCode::bad_params, "window must be positive");
  const double half = 0.5 * window / grid.spacing();
  const double rounded = std::round(half);
  if (std::abs(half - rounded) > 1e-9 * std::max(1.0, half) || rounded < 1.0) {
    throw Error(ErrorCode::non_commensurate, "half window is not a multiple of the spacing");
  }
  AvgOperator op;
  op.kind = kind;
  op.grid = grid;
  op.window = window;
  op.half_cells = static_cast<int>(rounded);
  return op;
}

namespace {

// Prefix sums with periodic or zero extension, accumulated in extended precision
// so that sliding windows stay mirror-symmetric to rounding level.
class RangeSum {
 public:
  RangeSum(const std::vector<double>& v, bool periodic) : periodic_(periodic), prefix_(v.size() + 1, 0.0L) {
    for (std::size_t i = 0; i < v.size(); ++i) prefix_[i + 1] = prefix_[i] + v[i];
  }

  long double total() const { return prefix_.back(); }

  // sum of v_j for j in [a, b)
  long double operator()(std::ptrdiff_t a, std::ptrdiff_t b) const { return at(b) - at(a); }

 private:
  long double at(std::ptrdiff_t x) const {
    const auto n = static_cast<std::ptrdiff_t>(prefix_.size() - 1);
    if (!periodic_) {
      if (x <= 0) return 0.0L;
      if (x >= n) return prefix_.back();
      return prefix_[static_cast<std::size_t>(x)];
    }
    std::ptrdiff_t q = x / n;
    std::ptrdiff_t r = x % n;
    if (r < 0) {
      r += n;
      --q;
    }
    return static_cast<long double>(q) * prefix_.back() + prefix_[static_cast<std::size_t>(r)];
  }

  bool periodic_;
  std::vector<long double> prefix_;
};

void require_grid(const AvgOperator& op, const Profile& w) {
  if (!(op.grid == w.grid)) throw Error(ErrorCode::grid_mismatch, "operator and profile grids differ");
}

}  // namespace

EdgeSamples edge_values(const AvgOperator& op, const Profile& w) {
  require_grid(op, w);
  const bool periodic = op.grid.mode == GridMode::periodic;
  const RangeSum sum(w.w, periodic);
  const auto n = static_cast<std::ptrdiff_t>(w.size());
  const std::ptrdiff_t hc = op.half_cells;
  const long double h = op.grid.spacing();
  const long double mean =
      op.kind == AvgKind::hat ? static_cast<long double>(op.mean_factor()) * h * sum.total() : 0.0L;

  EdgeSamples out;
  out.periodic = periodic;
  const std::ptrdiff_t first = periodic ? 0 : -hc;
  const std::ptrdiff_t last = periodic ? n - 1 : n + hc;
  out.values.reserve(static_cast<std::size_t>(last - first + 1));
  for (std::ptrdiff_t k = first; k <= last; ++k) {
    out.values.push_back(static_cast<double>(h * sum(k - hc, k + hc) - mean));
  }
  return out;
}

Profile apply_avg(const AvgOperator& op, const Profile& w) {
  const EdgeSamples e = edge_values(op, w);
  const std::size_t offset = e.periodic ? 0 : static_cast<std::size_t>(op.half_cells);
  std::vector<double> c(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    c[i] = 0.5 * (e.left(i + offset) + e.right(i + offset));
  }
  return Profile(w.grid, std::move(c));
}

Profile edge_adjoint(const AvgOperator& op, const std::vector<double>& edge_weights) {
  const bool periodic = op.grid.mode == GridMode::periodic;
  const auto n = static_cast<std::ptrdiff_t>(op.grid.cells);
  const std::ptrdiff_t hc = op.half_cells;
  const std::size_t expected = periodic ? op.grid.cells : op.grid.cells + 2 * op.half_cells + 1;
  if (edge_weights.size() != expected) {
    throw Error(ErrorCode::grid_mismatch, "edge weight layout does not match the operator");
  }
  // In line mode edge index k maps to slot k + hc; every window of an interior cell
  // stays inside the stored range, so zero extension never triggers there.
  const RangeSum sum(edge_weights, periodic);
  const std::ptrdiff_t shift = periodic ? 0 : hc;
  const long double h = op.grid.spacing();
  const long double mean =
      op.kind == AvgKind::hat ? static_cast<long double>(op.mean_factor()) * h * sum.total() : 0.0L;

  std::vector<double> g(op.grid.cells);
  for (std::ptrdiff_t j = 0; j < n; ++j) {
    g[static_cast<std::size_t>(j)] =
        static_cast<double>(h * sum(j - hc + 1 + shift, j + hc + 1 + shift) - mean);
  }
  return Profile(op.grid, std::move(g));
}

double averaged_norm_sq(const AvgOperator& op, const Profile& w) {
  const EdgeSamples e = edge_values(op, w);
  long double s = 0.0L;
  for (std::size_t p = 0; p < e.pieces(); ++p) {
    const long double a = e.left(p);
    const long double b = e.right(p);
    s += (a * a + a * b + b * b) / 3.0L;
  }
  return static_cast<double>(s) * op.grid.spacing();
}

double theta(double rho) {
  if (std::abs(rho) < 1e-8) return 1.0 - rho * rho / 6.0;
  return std::sin(rho) / rho;
}

std::pair<double, double> adjoint_check(const AvgOperator& op, const Profile& w1, const Profile& w2) {
  return {inner(apply_avg(op, w1), w2), inner(w1, apply_avg(op, w2))};
}

double SpectrumSample::abs_err() const { return std::abs(measured - analytic); }

SpectrumSample spectrum_probe(const Grid& grid, int mode) {
  if (grid.mode != GridMode::periodic) {
    throw Error(ErrorCode::bad_params, "spectrum probe needs a periodic grid");
  }
  if (mode < 0 || static_cast<std::size_t>(2 * mode) >= grid.cells) {
    throw Error(ErrorCode::bad_params, "mode index out of range");
  }
  const double kappa = mode * M_PI / grid.half_length;
  const Profile w = Profile::sample(grid, [kappa](double phi) { return std::cos(kappa * phi); });
  const AvgOperator op = make_avg(AvgKind::bar, grid);
  const Profile aw = apply_avg(op, w);
  SpectrumSample s;
  s.mode = mode;
  s.analytic = theta(mode * M_PI / (2.0 * grid.half_length));
  s.measured = inner(aw, w) / inner(w, w);
  return s;
}

}  // namespace fpuwaves
