#pragma once

// Potential energy P(W) = integral of Phi((A W)(phi)) and its L2 gradient.
//
// A W is piecewise linear between cell edges for piecewise-constant W, so P is
// integrated piece by piece with 4-point Gauss-Legendre. The gradient is the
// exact gradient of that discrete functional, i.e. the cell averages of
// A Phi'(A W); for quadratic Phi everything is exact.

#include <limits>
#include <utility>

#include "fpuwaves/averaging.hpp"
#include "fpuwaves/grid.hpp"
#include "fpuwaves/potential.hpp"

namespace fpuwaves {

struct EnergyContext {
  Potential potential;
  AvgOperator op;
  double gamma_max = std::numeric_limits<double>::infinity();
};

struct EnergyEval {
  double energy = 0.0;
  Profile gradient;
};

double potential_energy(const EnergyContext& ctx, const Profile& w);
Profile gradient(const EnergyContext& ctx, const Profile& w);
EnergyEval evaluate(const EnergyContext& ctx, const Profile& w);

/// P_harm(W) = beta/2 ||A W||_2^2.
double harmonic_energy(double beta, const AvgOperator& op, const Profile& w);

/// (<dP[W], W>, 2 P(W)); the first dominates for super-quadratic potentials.
std::pair<double, double> gradient_pairing_check(const EnergyContext& ctx, const Profile& w);

}  // namespace fpuwaves
