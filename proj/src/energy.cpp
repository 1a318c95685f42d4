#include "fpuwaves/energy.hpp"

#include <array>
#include <cmath>
#include <string>

#include "fpuwaves/error.hpp"

namespace fpuwaves {

namespace {

// Gauss-Legendre on [0, 1]
constexpr std::array<double, 4> kNodes = {
    0.5 * (1.0 - 0.8611363115940526), 0.5 * (1.0 - 0.3399810435848563),
    0.5 * (1.0 + 0.3399810435848563), 0.5 * (1.0 + 0.8611363115940526)};
constexpr std::array<double, 4> kWeights = {0.5 * 0.3478548451374538, 0.5 * 0.6521451548625461,
                                            0.5 * 0.6521451548625461, 0.5 * 0.3478548451374538};

void check_radius(const EnergyContext& ctx, const Profile& w) {
  const double level = norm_half_sq(w);
  if (level > ctx.gamma_max * (1.0 + 1e-10)) {
    throw Error(ErrorCode::radius_exceeded, "1/2||W||^2 = " + std::to_string(level) +
                                                " exceeds the certified level " + std::to_string(ctx.gamma_max));
  }
}

double integrate(const Potential& p, const EdgeSamples& e, double h) {
  long double s = 0.0L;
  for (std::size_t k = 0; k < e.pieces(); ++k) {
    const double a = e.left(k);
    const double b = e.right(k);
    if (a == 0.0 && b == 0.0) continue;  // Phi(0) = 0
    for (std::size_t g = 0; g < kNodes.size(); ++g) {
      s += kWeights[g] * p.phi(a + (b - a) * kNodes[g]);
    }
  }
  return static_cast<double>(s) * h;
}

}  // namespace

double potential_energy(const EnergyContext& ctx, const Profile& w) {
  check_radius(ctx, w);
  return integrate(ctx.potential, edge_values(ctx.op, w), ctx.op.grid.spacing());
}

EnergyEval evaluate(const EnergyContext& ctx, const Profile& w) {
  check_radius(ctx, w);
  const EdgeSamples e = edge_values(ctx.op, w);
  const double h = ctx.op.grid.spacing();

  // F_k = (1/h) dP/d(edge value k): hat-function weighted Phi'(A W) around edge k.
  std::vector<double> force(e.values.size(), 0.0);
  const std::size_t count = e.values.size();
  for (std::size_t k = 0; k < e.pieces(); ++k) {
    const double a = e.left(k);
    const double b = e.right(k);
    if (a == 0.0 && b == 0.0) continue;  // Phi'(0) = 0
    double to_left = 0.0;
    double to_right = 0.0;
    for (std::size_t g = 0; g < kNodes.size(); ++g) {
      const double t = kNodes[g];
      const double d = kWeights[g] * ctx.potential.dphi(a + (b - a) * t);
      to_left += d * (1.0 - t);
      to_right += d * t;
    }
    force[k] += to_left;
    force[e.periodic ? (k + 1) % count : k + 1] += to_right;
  }
  EnergyEval out;
  out.energy = integrate(ctx.potential, e, h);
  out.gradient = edge_adjoint(ctx.op, force);
  return out;
}

Profile gradient(const EnergyContext& ctx, const Profile& w) { return evaluate(ctx, w).gradient; }

double harmonic_energy(double beta, const AvgOperator& op, const Profile& w) {
  return 0.5 * beta * averaged_norm_sq(op, w);
}

std::pair<double, double> gradient_pairing_check(const EnergyContext& ctx, const Profile& w) {
  const EnergyEval ev = evaluate(ctx, w);
  return {inner(ev.gradient, w), 2.0 * ev.energy};
}

}  // namespace fpuwaves
