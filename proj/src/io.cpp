#include "fpuwaves/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fpuwaves/error.hpp"

namespace fpuwaves::io {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::ofstream open_out(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::io, "cannot write " + path.string());
  return out;
}

fs::path sidecar(const fs::path& path) { return fs::path(path.string() + ".json"); }

// JSON has no NaN/inf; map them to null.
json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

}  // namespace

void write_text(const fs::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

void write_json(const fs::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::config, path.string() + ": " + e.what());
  }
}

json grid_json(const Grid& g) {
  return {{"L", g.half_length}, {"M", g.m}, {"mode", std::string(to_string(g.mode))}, {"cells", g.cells}};
}

Grid grid_from_json(const json& j) {
  return make_grid(j.at("L").get<double>(), j.at("M").get<int>(), parse_grid_mode(j.at("mode").get<std::string>()));
}

void write_profile_csv(const fs::path& path, const Profile& w) {
  auto out = open_out(path);
  out << "phi,w\n";
  for (std::size_t i = 0; i < w.size(); ++i) out << fmt(w.grid.center(i)) << ',' << fmt(w.w[i]) << '\n';
  write_json(sidecar(path), grid_json(w.grid));
}

Profile read_profile_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<double> phi, w;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::io, "malformed profile row '" + line + "'");
    phi.push_back(std::stod(line.substr(0, comma)));
    w.push_back(std::stod(line.substr(comma + 1)));
  }
  if (w.size() < 2) throw Error(ErrorCode::io, path.string() + " holds fewer than two samples");
  Grid g;
  if (fs::exists(sidecar(path))) {
    g = grid_from_json(read_json(sidecar(path)));
  } else {
    const double h = phi[1] - phi[0];
    const double L = -phi[0] + 0.5 * h;
    g = make_grid(L, static_cast<int>(std::lround(0.5 / h)), GridMode::periodic);
  }
  return Profile(g, std::move(w));
}

void write_trace_csv(const fs::path& path, const Trace& t) {
  auto out = open_out(path);
  out << "phi,r,v\n";
  for (std::size_t i = 0; i < t.size(); ++i) out << fmt(t.phi[i]) << ',' << fmt(t.r[i]) << ',' << fmt(t.v[i]) << '\n';
}

void write_field_csv(const fs::path& path, const WaveField& f) {
  auto out = open_out(path);
  out << "phi,R,V\n";
  for (std::size_t i = 0; i < f.V.size(); ++i) {
    out << fmt(f.V.grid.center(i)) << ',' << fmt(f.R.w[i]) << ',' << fmt(f.V.w[i]) << '\n';
  }
  write_json(sidecar(path), {{"k", f.k},
                             {"omega", f.omega},
                             {"sigma2", f.sigma2},
                             {"offsets", {{"r", f.offsets.r}, {"v", f.offsets.v}}},
                             {"mode", std::string(to_string(f.mode))},
                             {"grid", grid_json(f.V.grid)}});
}

json result_json(const WaveResult& r) {
  const auto& d = r.diagnostics;
  return {{"status", std::string(to_string(r.status))},
          {"converged", r.converged},
          {"gamma", r.gamma},
          {"sigma2", r.sigma2},
          {"energy", r.energy},
          {"residual", number(r.residual)},
          {"iterations", r.iterations},
          {"supersonic", r.supersonic},
          {"max_abs_w", max_abs(r.w)},
          {"grid", grid_json(r.w.grid)},
          {"diagnostics",
           {{"monotonicity_constant", number(d.monotonicity_constant)},
            {"min_monotone_slack", number(d.min_monotone_slack)},
            {"max_relative_energy_drop", d.max_relative_energy_drop},
            {"max_level_error", d.max_level_error},
            {"cone_violations", d.cone_violations},
            {"tail_mass", d.tail_mass}}}};
}

json superquad_json(const SuperQuadReport& r) {
  return {{"name", r.name},
          {"gamma", r.gamma},
          {"c1", r.c1},
          {"c2", r.c2},
          {"c3", r.c3},
          {"beta_phi_monotone", r.beta_phi_monotone},
          {"min_margin_c1", number(r.min_margin_c1)},
          {"min_margin_c2", number(r.min_margin_c2)},
          {"min_margin_c3", number(r.min_margin_c3)}};
}

json rigidity_json(const RigidityReport& r) {
  return {{"T", r.T},
          {"dt", r.dt},
          {"rigidity_error", r.rigidity_error},
          {"energy_drift", r.energy_drift},
          {"momentum_drift", r.momentum_drift}};
}

void write_rows_csv(const fs::path& path, const std::vector<SweepRecord>& rows) {
  auto out = open_out(path);
  const std::string key = rows.empty() ? "value" : rows.front().key;
  out << key << ",potential,status,sigma2,energy,residual,iterations,max_abs_w,distance_wcl,witness_energy\n";
  for (const auto& r : rows) {
    out << fmt(r.value) << ",\"" << r.potential << "\"," << to_string(r.result.status) << ','
        << fmt(r.result.sigma2) << ',' << fmt(r.result.energy) << ',' << fmt(r.result.residual) << ','
        << r.result.iterations << ',' << fmt(max_abs(r.result.w)) << ','
        << (r.distance_wcl ? fmt(*r.distance_wcl) : "") << ','
        << (r.witness_energy ? fmt(*r.witness_energy) : "") << '\n';
  }
}

}  // namespace fpuwaves::io
