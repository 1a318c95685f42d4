#pragma once

// Physical profiles from a normalised solution W:
//
//   R(phi - k/2) = r_off + (A W)(phi),   V(phi) = v_off + omega W(phi),   omega = +-sigma.
//
// sigma^2 is the multiplier of the W-equation; the phase speed is omega / k.
//
// R is stored on the cell centers of W's grid; the shift by k/2 is an exact
// index shift by half_cells because k/2 is a multiple of h.

#include <utility>
#include <vector>

#include "fpuwaves/averaging.hpp"
#include "fpuwaves/grid.hpp"
#include "fpuwaves/potential.hpp"

namespace fpuwaves {

enum class FieldMode { wave_train, soliton };

std::string_view to_string(FieldMode mode);

struct Offsets {
  double r = 0.0;  // r_av (wave train) or r_bg (soliton)
  double v = 0.0;
};

struct WaveField {
  Profile R;       // R(phi_i)
  Profile V;       // V(phi_i)
  double k = 1.0;
  double omega = 0.0;
  double sigma2 = 0.0;
  Offsets offsets;
  FieldMode mode = FieldMode::wave_train;
};

/// omega = omega_sign * sqrt(sigma2), k = op.window.
WaveField reconstruct(const AvgOperator& op, const Profile& w, double sigma2, Offsets offsets = {},
                      FieldMode mode = FieldMode::wave_train, double omega_sign = 1.0);

struct Trace {
  std::vector<double> phi;
  std::vector<double> r;
  std::vector<double> v;
  bool closed = false;  // periodic traces repeat their first point at the end

  std::size_t size() const { return r.size(); }
};

/// phi -> (R(phi), V(phi)) in phi order. The half-window shift in R turns the
/// even pair (A W, W) into a closed loop.
Trace trace(const WaveField& field);

/// (V - v_off) / omega; recovers W up to rounding.
Profile recover_profile(const WaveField& field);

/// Discrete travelling-wave defect of a periodic field:
///   max |omega R' - (V(.+k) - V)| + max |omega V' - (Phi'(R - r_off) - Phi'(R(.-k) - r_off))|
/// with central difference quotients; O(h^2) for smooth fields.
double wave_defect(const WaveField& field, const Potential& potential);

/// A solution W of the problem (gamma, L, M, window k) mapped by W -> lambda W(lambda .)
/// onto the grid (L/lambda, lambda M) with window k/lambda.
struct ScaledSolution {
  Profile w;
  double sigma2 = 0.0;
  double gamma = 0.0;
  double window = 1.0;
};

/// Throws NonCommensurate if lambda M is not an integer or L/lambda is not a multiple of the new h.
ScaledSolution rescale(const Profile& w, double sigma2, double gamma, double window, double lambda);

/// R(phi) -> R(lambda phi), V likewise; k, omega -> k/lambda, omega/lambda; offsets unchanged.
WaveField rescale(const WaveField& field, double lambda);

/// Pairwise containment of consecutive traces: points of trace i strictly inside the
/// polygon of trace i+1. Each entry is the fraction of points found inside.
std::vector<double> nesting_fractions(const std::vector<Trace>& traces);

bool point_in_polygon(double x, double y, const Trace& polygon);

}  // namespace fpuwaves
