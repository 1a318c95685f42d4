#pragma once

// Periodic FPU chain
//
//   dr_j/dt = v_{j+1} - v_j,   dv_j/dt = Phi'(r_j) - Phi'(r_{j-1})
//
// integrated with the Stoermer-Verlet splitting (half kick, drift, half kick),
// which is leapfrog for the atom positions x_j with r_j = x_{j+1} - x_j.

#include <cstddef>
#include <vector>

#include "fpuwaves/potential.hpp"
#include "fpuwaves/reconstruction.hpp"

namespace fpuwaves {

struct ChainState {
  std::vector<double> r;
  std::vector<double> v;
  double t = 0.0;
  double r_ref = 0.0;  // forces use Phi'(r - r_ref) so that normalised potentials apply to offset states

  std::size_t atoms() const { return r.size(); }
};

/// Periodic linear interpolation of a cell-centered field at phi.
double interpolate_periodic(const Profile& f, double phi);

/// Atom j sits at phi = -L + j, j = 0 .. 2L-1. Throws NonIntegerPeriod unless 2L/k is an integer.
ChainState seed_chain(const WaveField& field);

double chain_energy(const ChainState& s, const Potential& p);
double chain_momentum(const ChainState& s);

struct IntegrationReport {
  ChainState state;
  std::size_t steps = 0;
  double dt = 0.0;             // effective step, T / steps
  double energy_drift = 0.0;   // max_t |H(t) - H(0)|
  double momentum_drift = 0.0; // |sum v(T) - sum v(0)|
};

/// Largest step accepted by integrate: 0.1 / sqrt(sup Phi'' over the visited range).
double stable_step(const ChainState& s, const Potential& p);

/// Throws BadParams if dt exceeds stable_step and Unstable on non-finite states.
IntegrationReport integrate(const ChainState& start, const Potential& p, double dt, double T);

struct RigidityReport {
  double T = 0.0;
  double dt = 0.0;
  double rigidity_error = 0.0;
  double energy_drift = 0.0;
  double momentum_drift = 0.0;
};

/// Seeds the chain from `field`, integrates to T and compares with the translated
/// profile R(phi_j + omega T), V(phi_j + omega T).
RigidityReport rigidity_error(const WaveField& field, const Potential& p, double T, double dt);

/// One traversal of the period: 2L / |omega|.
double traversal_time(const WaveField& field);

}  // namespace fpuwaves
