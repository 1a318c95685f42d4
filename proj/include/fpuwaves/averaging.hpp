#pragma once

// Sliding-window averaging operators
//
//   (bar A W)(phi) = integral of W over [phi - k/2, phi + k/2]
//   (hat A W)      = bar A W - (k / 2L) * integral of W over [-L, L]
//
// For piecewise-constant W the window image is continuous and piecewise
// linear with kinks at cell edges, so it is represented exactly by its
// values on cell edges. Cell-center values are the midpoints of the
// linear pieces, which amounts to the moving-sum weights h/2, h, ..., h, h/2.

#include <cstddef>
#include <string_view>
#include <utility>
#include <vector>

#include "fpuwaves/grid.hpp"

namespace fpuwaves {

enum class AvgKind { bar, hat };

std::string_view to_string(AvgKind kind);
AvgKind parse_avg_kind(std::string_view text);

struct AvgOperator {
  AvgKind kind = AvgKind::bar;
  Grid grid;
  double window = 1.0;  // k; 1 everywhere except for rescaled problems
  int half_cells = 0;   // (k/2) / h

  double mean_factor() const { return window / grid.length(); }
};

/// Throws HatOnLine for kind = hat on a line grid, NonCommensurate if k/2 is not a multiple of h.
AvgOperator make_avg(AvgKind kind, const Grid& grid, double window = 1.0);

/// Values of A W at the cell centers.
Profile apply_avg(const AvgOperator& op, const Profile& w);

/// Exact values of A W on the cell edges that bound its support.
///
/// periodic: N values for edges 0..N-1 (edge N is edge 0 again).
/// line:     N + 2H + 1 values for edges -H..N+H, where H = half_cells;
///           A W vanishes identically outside that range.
struct EdgeSamples {
  std::vector<double> values;
  bool periodic = true;

  /// Number of linear pieces between consecutive edges.
  std::size_t pieces() const { return periodic ? values.size() : values.size() - 1; }
  double left(std::size_t piece) const { return values[piece]; }
  double right(std::size_t piece) const {
    return periodic ? values[(piece + 1) % values.size()] : values[piece + 1];
  }
};

EdgeSamples edge_values(const AvgOperator& op, const Profile& w);

/// Transpose of edge_values with respect to the h-weighted pairing: maps edge
/// weights F (same layout as EdgeSamples) to the cell profile
/// G_j = h * sum_{edges k in window of cell j} F_k  (minus the mean term for hat).
Profile edge_adjoint(const AvgOperator& op, const std::vector<double>& edge_weights);

/// Exact ||A W||_2^2 of the piecewise-linear window image.
double averaged_norm_sq(const AvgOperator& op, const Profile& w);

/// Theta(rho) = sin(rho) / rho with Theta(0) = 1.
double theta(double rho);

/// (<A W1, W2>, <W1, A W2>) with the h-weighted inner product.
std::pair<double, double> adjoint_check(const AvgOperator& op, const Profile& w1, const Profile& w2);

struct SpectrumSample {
  int mode = 0;
  double analytic = 0.0;
  double measured = 0.0;
  double abs_err() const;
};

/// Applies bar A to the sampled cos(m pi phi / L) on a periodic grid and
/// compares the Rayleigh quotient with Theta(m pi / (2L)).
SpectrumSample spectrum_probe(const Grid& grid, int mode);

}  // namespace fpuwaves
