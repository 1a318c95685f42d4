#include "fpuwaves/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fpuwaves/averaging.hpp"
#include "fpuwaves/energy.hpp"
#include "fpuwaves/error.hpp"

namespace fpuwaves {

double Potential::third_derivative(double r) const {
  if (dddphi) return dddphi(r);
  const double step = 1e-4 * std::max(1.0, std::abs(r));
  return (ddphi(r + step) - ddphi(r - step)) / (2.0 * step);
}

std::string Potential::spec() const {
  std::ostringstream out;
  out.precision(17);
  out << name;
  bool first = true;
  auto sep = [&] {
    out << (first ? ':' : ',');
    first = false;
  };
  if (!base.empty()) {
    sep();
    out << "base=" << base;
  }
  for (const auto& [k, v] : params) {
    sep();
    out << k << '=' << v;
  }
  return out.str();
}

Potential normalize(const std::string& name, const ScalarFn& phi_raw, const ScalarFn& dphi_raw,
                    const ScalarFn& ddphi_raw, double r0, const ScalarFn& dddphi_raw) {
  const double p0 = phi_raw(r0);
  const double d0 = dphi_raw(r0);
  Potential p;
  p.name = name;
  p.params["r0"] = r0;
  p.phi = [=](double r) { return phi_raw(r0 + r) - p0 - d0 * r; };
  p.dphi = [=](double r) { return dphi_raw(r0 + r) - d0; };
  p.ddphi = [=](double r) { return ddphi_raw(r0 + r); };
  if (dddphi_raw) p.dddphi = [=](double r) { return dddphi_raw(r0 + r); };
  p.beta = ddphi_raw(r0);
  return p;
}

double simpson(const ScalarFn& f, double a, double b, int panels) {
  if (panels < 2 || panels % 2 != 0) throw Error(ErrorCode::bad_params, "Simpson needs an even panel count");
  const double h = (b - a) / panels;
  long double s = f(a) + f(b);
  for (int i = 1; i < panels; ++i) s += (i % 2 == 1 ? 4.0L : 2.0L) * f(a + i * h);
  return static_cast<double>(s * h / 3.0L);
}

namespace {

double param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

double required(const std::map<std::string, double>& params, const std::string& key,
                const std::string& family) {
  const auto it = params.find(key);
  if (it == params.end()) throw Error(ErrorCode::bad_params, family + " needs parameter '" + key + "'");
  return it->second;
}

double sgn(double r) { return r < 0.0 ? -1.0 : 1.0; }

// Even extension f(|r|) of a profile given on r >= 0.
Potential even_extension(std::string name, ScalarFn f, ScalarFn df, ScalarFn ddf, ScalarFn dddf) {
  Potential p;
  p.name = std::move(name);
  p.phi = [f](double r) { return f(std::abs(r)); };
  p.dphi = [df](double r) { return sgn(r) * df(std::abs(r)); };
  p.ddphi = [ddf](double r) { return ddf(std::abs(r)); };
  if (dddf) p.dddphi = [dddf](double r) { return sgn(r) * dddf(std::abs(r)); };
  return p;
}

Potential make_harmonic(double beta) {
  if (!(beta > 0.0)) throw Error(ErrorCode::bad_params, "harmonic needs beta > 0");
  Potential p;
  p.name = "harmonic";
  p.params["beta"] = beta;
  p.phi = [beta](double r) { return 0.5 * beta * r * r; };
  p.dphi = [beta](double r) { return beta * r; };
  p.ddphi = [beta](double) { return beta; };
  p.dddphi = [](double) { return 0.0; };
  p.beta = beta;
  return p;
}

Potential make_cosh() {
  Potential p;
  p.name = "cosh";
  p.phi = [](double r) {
    const double s = std::sinh(0.5 * r);
    return 2.0 * s * s;
  };
  p.dphi = [](double r) { return std::sinh(r); };
  p.ddphi = [](double r) { return std::cosh(r); };
  p.dddphi = [](double r) { return std::sinh(r); };
  p.beta = 1.0;
  return p;
}

Potential make_homogeneous(double q) {
  if (!(q > 2.0)) throw Error(ErrorCode::bad_params, "homogeneous potentials need q > 2");
  const double c = 0.5 * (q + 1.0);
  Potential p = even_extension(
      "homogeneous", [=](double s) { return c * std::pow(s, q); },
      [=](double s) { return c * q * std::pow(s, q - 1.0); },
      [=](double s) { return c * q * (q - 1.0) * std::pow(s, q - 2.0); },
      [=](double s) { return c * q * (q - 1.0) * (q - 2.0) * std::pow(s, q - 3.0); });
  p.params["q"] = q;
  p.beta = 0.0;
  return p;
}

Potential make_toda(bool reflected) {
  Potential p;
  if (reflected) {
    p.name = "toda-reflected";
    p.phi = [](double r) { return std::expm1(r) - r; };
    p.dphi = [](double r) { return std::expm1(r); };
    p.ddphi = [](double r) { return std::exp(r); };
    p.dddphi = [](double r) { return std::exp(r); };
  } else {
    p.name = "toda";
    p.phi = [](double r) { return std::expm1(-r) + r; };
    p.dphi = [](double r) { return -std::expm1(-r); };
    p.ddphi = [](double r) { return std::exp(-r); };
    p.dddphi = [](double r) { return -std::exp(-r); };
  }
  p.beta = 1.0;
  return p;
}

Potential make_log(double beta, double c) {
  if (!(beta >= 0.0) || !(c > 0.0)) throw Error(ErrorCode::bad_params, "log family needs beta >= 0, c > 0");
  Potential p = even_extension(
      "log", [=](double s) { return 0.5 * beta * s * s * (1.0 + c * std::log1p(s)); },
      [=](double s) { return beta * s * (1.0 + c * std::log1p(s)) + 0.5 * beta * c * s * s / (1.0 + s); },
      [=](double s) {
        const double u = 1.0 + s;
        return beta * (1.0 + c * std::log1p(s)) + 2.0 * beta * c * s / u - 0.5 * beta * c * s * s / (u * u);
      },
      [=](double s) {
        const double u = 1.0 + s;
        return beta * c * (1.0 / u + 2.0 / (u * u) - s / (u * u * u));
      });
  p.params["beta"] = beta;
  p.params["c"] = c;
  p.beta = beta;
  return p;
}

Potential make_arctan(double beta, double d) {
  if (!(beta >= 0.0) || !(d > 0.0)) throw Error(ErrorCode::bad_params, "arctan family needs beta >= 0, d > 0");
  Potential p = even_extension(
      "arctan", [=](double s) { return 0.5 * beta * s * s * (1.0 + d * std::atan(s)); },
      [=](double s) { return beta * s * (1.0 + d * std::atan(s)) + 0.5 * beta * d * s * s / (1.0 + s * s); },
      [=](double s) {
        const double u = 1.0 + s * s;
        return beta * (1.0 + d * std::atan(s)) + beta * d * s / u + beta * d * s / (u * u);
      },
      {});
  p.params["beta"] = beta;
  p.params["d"] = d;
  p.beta = beta;
  return p;
}

Potential make_rescaled(const Potential& base, double gamma) {
  if (!(gamma > 0.0)) throw Error(ErrorCode::bad_params, "rescaled potential needs gamma > 0");
  const double a = std::sqrt(2.0 * gamma);
  const double denom = 2.0 * simpson([&](double s) { return base.phi(a * s); }, 0.0, 1.0);
  if (!(denom > 0.0) || !std::isfinite(denom)) {
    throw Error(ErrorCode::bad_params, "base potential vanishes or overflows on the rescaling interval");
  }
  Potential p;
  p.name = "rescaled";
  p.base = base.name;
  p.params = base.params;
  p.params["gamma"] = gamma;
  p.phi = [base, a, denom](double r) { return base.phi(a * r) / denom; };
  p.dphi = [base, a, denom](double r) { return a * base.dphi(a * r) / denom; };
  p.ddphi = [base, a, denom](double r) { return a * a * base.ddphi(a * r) / denom; };
  p.dddphi = [base, a, denom](double r) { return a * a * a * base.third_derivative(a * r) / denom; };
  p.beta = a * a * base.beta / denom;
  return p;
}

}  // namespace

Potential rescaled(const Potential& base, double gamma) { return make_rescaled(base, gamma); }

Potential builtin(const std::string& name, const std::map<std::string, double>& params) {
  if (name == "harmonic") return make_harmonic(param(params, "beta", 1.0));
  if (name == "cosh") return make_cosh();
  if (name == "homogeneous") return make_homogeneous(required(params, "q", name));
  if (name == "toda") return make_toda(false);
  if (name == "toda-reflected") return make_toda(true);
  if (name == "log") return make_log(param(params, "beta", 1.0), required(params, "c", name));
  if (name == "arctan") return make_arctan(param(params, "beta", 1.0), required(params, "d", name));
  throw Error(ErrorCode::unknown_name, "unknown potential '" + name + "'");
}

Potential parse_potential(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string name(spec.substr(0, colon));
  std::map<std::string, double> params;
  std::string base;
  if (colon != std::string_view::npos) {
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) {
        throw Error(ErrorCode::bad_params, "expected key=value in '" + std::string(item) + "'");
      }
      const std::string key(item.substr(0, eq));
      const std::string value(item.substr(eq + 1));
      if (key == "base") {
        base = value;
      } else {
        try {
          std::size_t used = 0;
          params[key] = std::stod(value, &used);
          if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
          throw Error(ErrorCode::bad_params, "parameter '" + key + "' is not a number: '" + value + "'");
        }
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  if (name == "rescaled") {
    if (base.empty()) throw Error(ErrorCode::bad_params, "rescaled needs base=<family>");
    const auto g = params.find("gamma");
    if (g == params.end()) throw Error(ErrorCode::bad_params, "rescaled needs gamma=<value>");
    const double gamma = g->second;
    params.erase(g);
    return make_rescaled(builtin(base, params), gamma);
  }
  if (!base.empty()) throw Error(ErrorCode::bad_params, "'base' only applies to rescaled potentials");
  return builtin(name, params);
}

SuperQuadReport check_superquadratic(const Potential& p, double gamma, int samples) {
  if (samples < 100) throw Error(ErrorCode::bad_params, "need at least 100 samples");
  if (!(gamma > 0.0)) throw Error(ErrorCode::bad_params, "gamma must be positive");
  const double radius = std::sqrt(2.0 * gamma);
  SuperQuadReport rep;
  rep.name = p.spec();
  rep.gamma = gamma;
  rep.min_margin_c1 = rep.min_margin_c2 = rep.min_margin_c3 = std::numeric_limits<double>::infinity();
  rep.beta_phi_monotone = true;
  double prev_beta_phi = p.beta;
  for (int i = 1; i <= samples; ++i) {
    const double r = radius * i / samples;
    const double f = p.phi(r);
    const double df = p.dphi(r);
    const double ddf = p.ddphi(r);
    rep.min_margin_c1 = std::min(rep.min_margin_c1, df * r - 2.0 * f);
    rep.min_margin_c2 = std::min(rep.min_margin_c2, ddf * r - df);
    rep.min_margin_c3 = std::min(rep.min_margin_c3, p.third_derivative(r));
    const double beta_phi = 2.0 * f / (r * r);
    if (beta_phi < prev_beta_phi - 1e-9 * std::max(1.0, std::abs(prev_beta_phi))) {
      rep.beta_phi_monotone = false;
    }
    prev_beta_phi = beta_phi;
  }
  rep.c1 = rep.min_margin_c1 >= -kSuperQuadTol;
  rep.c2 = rep.min_margin_c2 >= -kSuperQuadTol;
  rep.c3 = rep.min_margin_c3 >= -kSuperQuadTol;
  return rep;
}

double genuine_margin(const Potential& p, double gamma, const Grid& grid) {
  const Profile w = scaled(make_wcl(grid), std::sqrt(2.0 * gamma));
  const EnergyContext ctx{p, make_avg(AvgKind::bar, grid)};
  return potential_energy(ctx, w) - p.beta * gamma;
}

double harmonic_witness_margin(const Potential& p, double gamma, int n_max, int m) {
  double best = -std::numeric_limits<double>::infinity();
  for (int n = 1; n <= n_max; ++n) {
    const Grid grid = make_grid(n + 1.0, m, GridMode::line);
    const EnergyContext ctx{p, make_avg(AvgKind::bar, grid)};
    best = std::max(best, potential_energy(ctx, make_harmonic_sequence(grid, n, gamma)) - p.beta * gamma);
  }
  return best;
}

double monotonicity_constant(const Potential& p, double gamma, int samples) {
  const double radius = std::sqrt(2.0 * gamma);
  double m = p.ddphi(0.0);
  for (int i = 0; i < samples; ++i) {
    const double r = -radius + 2.0 * radius * i / (samples - 1);
    m = std::min(m, p.ddphi(r));
  }
  return m;
}

}  // namespace fpuwaves
