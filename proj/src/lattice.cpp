#include "fpuwaves/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "fpuwaves/error.hpp"

namespace fpuwaves {

double interpolate_periodic(const Profile& f, double phi) {
  const Grid& g = f.grid;
  const double h = g.spacing();
  const auto n = static_cast<long long>(g.cells);
  // fractional index relative to cell 0's center
  double x = (phi - g.center(0)) / h;
  x = std::fmod(x, static_cast<double>(n));
  if (x < 0.0) x += static_cast<double>(n);
  const auto i0 = static_cast<long long>(std::floor(x));
  const double t = x - static_cast<double>(i0);
  const auto a = static_cast<std::size_t>(i0 % n);
  const auto b = static_cast<std::size_t>((i0 + 1) % n);
  return (1.0 - t) * f.w[a] + t * f.w[b];
}

ChainState seed_chain(const WaveField& field) {
  const Grid& g = field.V.grid;
  if (g.mode != GridMode::periodic) throw Error(ErrorCode::grid_mismatch, "the chain needs a periodic field");
  const double atoms = g.length() / field.k;
  if (std::abs(atoms - std::round(atoms)) > 1e-9 || std::round(atoms) < 1.0) {
    throw Error(ErrorCode::non_integer_period, "2L/k = " + std::to_string(atoms) + " is not an integer");
  }
  ChainState s;
  s.r_ref = field.offsets.r;
  const auto n = static_cast<std::size_t>(std::llround(atoms));
  for (std::size_t j = 0; j < n; ++j) {
    const double phi = -g.half_length + field.k * static_cast<double>(j);
    s.r.push_back(interpolate_periodic(field.R, phi));
    s.v.push_back(interpolate_periodic(field.V, phi));
  }
  return s;
}

double chain_energy(const ChainState& s, const Potential& p) {
  long double e = 0.0L;
  for (std::size_t j = 0; j < s.atoms(); ++j) e += 0.5L * s.v[j] * s.v[j] + p.phi(s.r[j] - s.r_ref);
  return static_cast<double>(e);
}

double chain_momentum(const ChainState& s) {
  long double m = 0.0L;
  for (double v : s.v) m += v;
  return static_cast<double>(m);
}

double stable_step(const ChainState& s, const Potential& p) {
  double reach = 0.0;
  for (double r : s.r) reach = std::max(reach, std::abs(r - s.r_ref));
  reach = 1.5 * reach + 1e-3;
  double sup = 0.0;
  constexpr int samples = 201;
  for (int i = 0; i < samples; ++i) {
    const double r = -reach + 2.0 * reach * i / (samples - 1);
    sup = std::max(sup, p.ddphi(r));
  }
  return sup > 0.0 ? 0.1 / std::sqrt(sup) : std::numeric_limits<double>::infinity();
}

IntegrationReport integrate(const ChainState& start, const Potential& p, double dt, double T) {
  if (!(dt > 0.0) || !(T >= 0.0)) throw Error(ErrorCode::bad_params, "dt must be positive and T non-negative");
  if (dt > stable_step(start, p)) {
    throw Error(ErrorCode::bad_params, "dt = " + std::to_string(dt) + " exceeds the stability bound " +
                                           std::to_string(stable_step(start, p)));
  }
  IntegrationReport rep;
  rep.steps = static_cast<std::size_t>(std::ceil(T / dt - 1e-12));
  rep.dt = rep.steps > 0 ? T / static_cast<double>(rep.steps) : 0.0;
  ChainState s = start;
  const std::size_t n = s.atoms();
  const double h0 = chain_energy(s, p);
  const double m0 = chain_momentum(s);
  const double tau = rep.dt;

  std::vector<double> force(n);
  auto kick = [&](double c) {
    for (std::size_t j = 0; j < n; ++j) force[j] = p.dphi(s.r[j] - s.r_ref);
    for (std::size_t j = 0; j < n; ++j) s.v[j] += c * (force[j] - force[(j + n - 1) % n]);
  };
  auto drift = [&](double c) {
    const double v0 = s.v[0];
    for (std::size_t j = 0; j + 1 < n; ++j) s.r[j] += c * (s.v[j + 1] - s.v[j]);
    s.r[n - 1] += c * (v0 - s.v[n - 1]);
  };

  for (std::size_t step = 0; step < rep.steps; ++step) {
    kick(0.5 * tau);
    drift(tau);
    kick(0.5 * tau);
    s.t = start.t + static_cast<double>(step + 1) * tau;
    const double e = chain_energy(s, p);
    if (!std::isfinite(e)) throw Error(ErrorCode::unstable, "non-finite chain state at t = " + std::to_string(s.t));
    rep.energy_drift = std::max(rep.energy_drift, std::abs(e - h0));
  }
  rep.momentum_drift = std::abs(chain_momentum(s) - m0);
  rep.state = std::move(s);
  return rep;
}

double traversal_time(const WaveField& field) {
  if (field.omega == 0.0) throw Error(ErrorCode::bad_params, "omega = 0: the field does not travel");
  return field.V.grid.length() / std::abs(field.omega);
}

RigidityReport rigidity_error(const WaveField& field, const Potential& p, double T, double dt) {
  const ChainState s0 = seed_chain(field);
  const IntegrationReport run = integrate(s0, p, dt, T);
  RigidityReport rep;
  rep.T = T;
  rep.dt = run.dt;
  rep.energy_drift = run.energy_drift;
  rep.momentum_drift = run.momentum_drift;
  double er = 0.0;
  double ev = 0.0;
  const Grid& g = field.V.grid;
  for (std::size_t j = 0; j < s0.atoms(); ++j) {
    const double phi = -g.half_length + field.k * static_cast<double>(j) + field.omega * T;
    er = std::max(er, std::abs(run.state.r[j] - interpolate_periodic(field.R, phi)));
    ev = std::max(ev, std::abs(run.state.v[j] - interpolate_periodic(field.V, phi)));
  }
  rep.rigidity_error = er + ev;
  return rep;
}

}  // namespace fpuwaves
