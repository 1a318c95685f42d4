#pragma once

// Convex interaction potentials normalised by Phi(0) = Phi'(0) = 0.

#include <functional>
#include <map>
#include <string>
#include <string_view>

#include "fpuwaves/grid.hpp"

namespace fpuwaves {

using ScalarFn = std::function<double(double)>;

struct Potential {
  std::string name;
  std::string base;  // underlying family of a rescaled potential, empty otherwise
  std::map<std::string, double> params;
  ScalarFn phi;
  ScalarFn dphi;
  ScalarFn ddphi;
  ScalarFn dddphi;  // optional; finite differences of ddphi when empty
  double beta = 0.0;  // Phi''(0)

  double operator()(double r) const { return phi(r); }
  double third_derivative(double r) const;
  /// "name" or "name:key=value,..." as accepted by parse_potential.
  std::string spec() const;
};

/// Phi_{r0}(r) = Phi(r0 + r) - Phi(r0) - Phi'(r0) r
Potential normalize(const std::string& name, const ScalarFn& phi_raw, const ScalarFn& dphi_raw,
                    const ScalarFn& ddphi_raw, double r0, const ScalarFn& dddphi_raw = {});

/// Built-in families:
///   harmonic(beta)            beta/2 r^2
///   cosh                      cosh(r) - 1
///   homogeneous(q)            (q+1)/2 |r|^q, q > 2
///   toda                      exp(-r) + r - 1
///   toda-reflected            exp(r) - r - 1
///   log(beta, c)              beta/2 r^2 (1 + c ln(1 + |r|))
///   arctan(beta, d)           beta/2 r^2 (1 + d arctan |r|)
///   rescaled(base, gamma)     Phi(sqrt(2 gamma) r) / (2 int_0^1 Phi(sqrt(2 gamma) s) ds)
/// Throws UnknownName or BadParams.
Potential builtin(const std::string& name, const std::map<std::string, double>& params = {});

/// Phi_gamma(r) = Phi(sqrt(2 gamma) r) / (2 int_0^1 Phi(sqrt(2 gamma) s) ds). Maximising P on S_gamma
/// is equivalent to maximising P_gamma on S_{1/2}.
Potential rescaled(const Potential& base, double gamma);

/// Parses "cosh", "harmonic:beta=1", "homogeneous:q=4", "rescaled:base=cosh,gamma=10",
/// "rescaled:base=homogeneous,q=4,gamma=2".
Potential parse_potential(std::string_view spec);

/// Composite Simpson rule with `panels` (even) panels.
double simpson(const ScalarFn& f, double a, double b, int panels = 2048);

struct SuperQuadReport {
  std::string name;
  double gamma = 0.0;
  bool c1 = false;
  bool c2 = false;
  bool c3 = false;
  bool beta_phi_monotone = false;
  double min_margin_c1 = 0.0;
  double min_margin_c2 = 0.0;
  double min_margin_c3 = 0.0;
};

inline constexpr double kSuperQuadTol = 1e-10;

/// Samples the growth criteria on `samples` equidistant points of (0, sqrt(2 gamma)].
SuperQuadReport check_superquadratic(const Potential& p, double gamma, int samples = 400);

/// P(sqrt(2 gamma) W_CL) - beta gamma on `grid` (bar operator). Positive values
/// certify that the energy beats the harmonic supremum at this gamma.
double genuine_margin(const Potential& p, double gamma, const Grid& grid);

/// Witness based on the harmonic maximizing sequence: max over n in [1, n_max] of
/// P(U_n) - beta gamma on a line grid with spacing 1/(2m).
double harmonic_witness_margin(const Potential& p, double gamma, int n_max, int m);

/// Sampled infimum of Phi'' over |r| <= sqrt(2 gamma).
double monotonicity_constant(const Potential& p, double gamma, int samples = 2001);

}  // namespace fpuwaves
