#pragma once

// Uniform cell grids over [-L, L] and piecewise-constant profiles living on them.
//
// Cell i covers [-L + i*h, -L + (i+1)*h] with center -L + (i + 1/2)*h and
// h = 1/(2M). Because L is required to be a multiple of h, the grid is
// mirror-symmetric about 0 and the points +-1/2 are cell edges.

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace fpuwaves {

enum class GridMode { periodic, line };

std::string_view to_string(GridMode mode);
GridMode parse_grid_mode(std::string_view text);

struct Grid {
  double half_length = 0.0;  // L
  int m = 0;                 // h = 1/(2m)
  GridMode mode = GridMode::periodic;
  std::size_t cells = 0;     // N = 4*L*m

  double spacing() const { return 0.5 / m; }
  double length() const { return 2.0 * half_length; }
  double center(std::size_t i) const {
    return -half_length + (static_cast<double>(i) + 0.5) * spacing();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.m == b.m && a.mode == b.mode && a.cells == b.cells;
  }
};

/// Builds a grid; throws NonCommensurate unless L is an integer multiple of h.
Grid make_grid(double half_length, int m, GridMode mode);

struct Profile {
  Grid grid;
  std::vector<double> w;

  Profile() = default;
  Profile(Grid g, std::vector<double> samples);

  static Profile zeros(const Grid& grid);
  static Profile sample(const Grid& grid, const std::function<double(double)>& f);

  std::size_t size() const { return w.size(); }
  double operator[](std::size_t i) const { return w[i]; }
  std::span<const double> values() const { return w; }
};

struct ConeFlags {
  bool even = false;
  bool unimodal = false;
  bool nonnegative = false;

  bool in_u() const { return even && unimodal; }
  bool in_un() const { return even && unimodal && nonnegative; }
};

double inner(const Profile& a, const Profile& b);
double norm(const Profile& w);
/// 1/2 * ||W||_2^2, exact for piecewise-constant W.
double norm_half_sq(const Profile& w);
double max_abs(const Profile& w);
double distance(const Profile& a, const Profile& b);

Profile scaled(Profile w, double factor);
/// Rescales w so that 1/2 ||w||^2 = gamma. Throws TrivialMinimiser for w = 0.
Profile scaled_to_level(Profile w, double gamma);

double cone_tolerance(const Profile& w);
bool is_even(const Profile& w);
bool is_unimodal(const Profile& w);
bool is_nonnegative(const Profile& w);
ConeFlags cone_flags(const Profile& w);

/// Indicator of [-1/2, 1/2].
Profile make_wcl(const Grid& grid);

/// sqrt(2 gamma / n) cos(pi phi / (2n)) on |phi| <= n, zero elsewhere.
Profile make_harmonic_sequence(const Grid& grid, int n, double gamma);

/// Zero-extends w onto a larger grid with the same spacing, centered at 0.
Profile embed(const Profile& w, const Grid& target);

/// Restriction of w to the centered sub-grid `target` (inverse of embed on its range).
Profile restrict_to(const Profile& w, const Grid& target);

}  // namespace fpuwaves
