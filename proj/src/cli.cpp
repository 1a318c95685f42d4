#include "fpuwaves/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "fpuwaves/error.hpp"
#include "fpuwaves/experiments.hpp"
#include "fpuwaves/io.hpp"
#include "fpuwaves/lattice.hpp"

namespace fpuwaves {

namespace {

using io::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

// Options are registered together with a serializer, so every run can store
// its fully resolved arguments and be replayed with --config.
class Registry {
 public:
  explicit Registry(CLI::App* app) : app_(app) {}

  template <class T>
  CLI::Option* add(const std::string& name, T& var, const std::string& desc) {
    entries_.emplace_back(name, [&var] { return json(var); });
    return app_->add_option("--" + name, var, desc)->capture_default_str();
  }

  template <class T>
  CLI::Option* add_list(const std::string& name, std::vector<T>& var, const std::string& desc) {
    entries_.emplace_back(name, [&var] { return json(var); });
    return app_->add_option("--" + name, var, desc)->delimiter(',')->capture_default_str();
  }

  CLI::Option* flag(const std::string& name, bool& var, const std::string& desc) {
    entries_.emplace_back(name, [&var] { return json(var); });
    return app_->add_flag("--" + name, var, desc);
  }

  json dump() const {
    json j = json::object();
    for (const auto& [name, get] : entries_) j[name] = get();
    return j;
  }

  CLI::App* app() const { return app_; }

 private:
  CLI::App* app_;
  std::vector<std::pair<std::string, std::function<json()>>> entries_;
};

struct SolveOpts {
  std::string potential = "cosh";
  double L = 2.0;
  int M = 64;
  double gamma = 1.0;
  std::string cone = "U";
  std::string op = "bar";
  std::string mode = "periodic";
  std::string seed = "cosine_bump";
  std::size_t max_iter = 100000;
  double tol_fp = 1e-10;
  double tol_energy = 1e-13;
  double tail_tol = 1e-10;
  double omega_sign = 1.0;
  double r_off = 0.0;
  double v_off = 0.0;
  std::string init;

  SolverConfig solver() const {
    SolverConfig c;
    c.gamma = gamma;
    c.cone = parse_cone(cone);
    c.max_iter = max_iter;
    c.tol_fp = tol_fp;
    c.tol_energy = tol_energy;
    c.seed = parse_seed(seed);
    c.tail_tol = tail_tol;
    return c;
  }
  Grid grid() const { return make_grid(L, M, parse_grid_mode(mode)); }
  EnergyContext context() const {
    const Grid g = grid();
    return EnergyContext{parse_potential(potential), make_avg(parse_avg_kind(op), g)};
  }
};

void add_potential_opts(Registry& r, SolveOpts& o) {
  r.add("potential", o.potential,
        "interaction potential: harmonic[:beta=], cosh, homogeneous:q=, toda, toda-reflected, log[:beta=,c=], "
        "arctan[:beta=,d=], rescaled:base=<name>,gamma=[,...]");
}

void add_grid_opts(Registry& r, SolveOpts& o, bool with_mode) {
  r.add("L", o.L, "half-length of the domain [-L, L] (lattice spacings)");
  r.add("M", o.M, "resolution: cell width h = 1/(2M) (lattice spacings)");
  if (with_mode) r.add("mode", o.mode, "grid mode: periodic (wave trains) | line (solitons, zero extension)");
}

void add_solver_opts(Registry& r, SolveOpts& o) {
  r.add("cone", o.cone, "invariant cone: U (even, unimodal) | UN (additionally non-negative)");
  r.add("op", o.op, "averaging operator: bar (sliding integral) | hat (bar minus domain mean, periodic only)");
  r.add("seed", o.seed, "start profile: cosine_bump | tent | wcl | gaussian(width in lattice spacings)");
  r.add("max-iter", o.max_iter, "iteration cap (count)");
  r.add("tol-fp", o.tol_fp, "fixed-point tolerance, relative to sqrt(2 gamma) (dimensionless)");
  r.add("tol-energy", o.tol_energy, "relative energy-increment tolerance (dimensionless)");
  r.add("tail-tol", o.tail_tol, "line mode: admissible boundary mass int_{|phi|>L-1} W^2, relative to gamma");
}

void add_field_opts(Registry& r, SolveOpts& o) {
  r.add("omega-sign", o.omega_sign, "sign of the frequency omega = +-sigma (+1 or -1)");
  r.add("r-off", o.r_off, "distance offset r_av / r_bg added to R (lattice units)");
  r.add("v-off", o.v_off, "velocity offset v_av / v_bg added to V (lattice units per time)");
}

struct Outcome {
  int code = 0;
  json summary;
};

struct Command {
  CLI::App* app = nullptr;
  std::unique_ptr<Registry> reg;
  std::function<Outcome(const fs::path&)> run;
};

fs::path default_root() {
  if (const char* env = std::getenv("FPUWAVES_OUT"); env != nullptr && *env != '\0') return env;
  return "fpuwaves_out";
}

int exit_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::trivial_minimiser:
    case ErrorCode::zero_gradient:
    case ErrorCode::not_genuinely_superquadratic:
    case ErrorCode::unstable:
    case ErrorCode::radius_exceeded:
      return 2;
    default:
      return 1;
  }
}

std::string index_name(const std::string& stem, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%03zu.csv", stem.c_str(), i);
  return buf;
}

json solve_summary(const SolveOpts& o, const WaveResult& r, const EnergyContext& ctx) {
  json s = io::result_json(r);
  s["potential"] = ctx.potential.spec();
  s["beta"] = ctx.potential.beta;
  s["op"] = std::string(to_string(ctx.op.kind));
  s["cone"] = o.cone;
  return s;
}

Outcome write_solution(const fs::path& dir, const SolveOpts& o, const EnergyContext& ctx, const WaveResult& r) {
  io::write_profile_csv(dir / "profile.csv", r.w);
  const FieldMode fm = r.w.grid.mode == GridMode::periodic ? FieldMode::wave_train : FieldMode::soliton;
  const WaveField f = reconstruct(ctx.op, r.w, r.sigma2, {o.r_off, o.v_off}, fm, o.omega_sign);
  io::write_field_csv(dir / "field.csv", f);
  io::write_trace_csv(dir / "trace.csv", trace(f));
  Outcome out;
  out.summary = solve_summary(o, r, ctx);
  if (fm == FieldMode::wave_train) out.summary["wave_defect"] = wave_defect(f, ctx.potential);
  out.summary["omega"] = f.omega;
  out.code = r.converged ? 0 : 2;
  return out;
}

json row_json(const SweepRecord& row) {
  json j = io::result_json(row.result);
  j[row.key] = row.value;
  j["potential"] = row.potential;
  if (row.distance_wcl) j["distance_wcl"] = *row.distance_wcl;
  if (row.witness_energy) j["witness_energy"] = *row.witness_energy;
  return j;
}

Outcome write_rows(const fs::path& dir, const std::vector<SweepRecord>& rows, const AvgOperator& op) {
  io::write_rows_csv(dir / "rows.csv", rows);
  Outcome out;
  out.summary["rows"] = json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i].result;
    io::write_profile_csv(dir / index_name("profile", i), r.w);
    io::write_trace_csv(dir / index_name("trace", i), trace(reconstruct(op, r.w, r.sigma2)));
    out.summary["rows"].push_back(row_json(rows[i]));
    if (!r.converged) out.code = 2;
  }
  return out;
}

bool strictly_decreasing(const std::vector<SweepRecord>& rows) {
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (!(*rows[i].distance_wcl < *rows[i - 1].distance_wcl)) return false;
  }
  return true;
}

// --config support: expands the stored arguments in front of the user's own,
// dropping any option the user gave explicitly.
std::vector<std::string> expand_config(const std::vector<std::string>& args, const std::set<std::string>& commands) {
  std::vector<std::string> rest;
  std::string config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (config.empty()) return args;
  const json cfg = io::read_json(config);
  std::string command;
  auto pos = rest.end();
  for (auto it = rest.begin(); it != rest.end(); ++it) {
    if (commands.count(*it)) {
      command = *it;
      pos = it;
      break;
    }
  }
  if (pos != rest.end()) rest.erase(pos);
  if (command.empty()) command = cfg.at("command").get<std::string>();
  if (cfg.contains("command") && cfg.at("command").get<std::string>() != command) {
    throw Error(ErrorCode::config, "config was written by '" + cfg.at("command").get<std::string>() +
                                       "', not '" + command + "'");
  }
  std::set<std::string> given;
  for (const auto& a : rest) {
    if (a.rfind("--", 0) == 0) given.insert(a.substr(2, a.find('=') == std::string::npos ? std::string::npos
                                                                                           : a.find('=') - 2));
  }
  std::vector<std::string> out{command};
  for (const auto& [key, value] : cfg.at("args").items()) {
    if (given.count(key)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) out.push_back("--" + key);
      continue;
    }
    std::string text;
    if (value.is_array()) {
      if (value.empty()) continue;
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) text += ',';
        text += value[i].is_string() ? value[i].get<std::string>() : value[i].dump();
      }
    } else if (value.is_string()) {
      text = value.get<std::string>();
      if (text.empty()) continue;
    } else {
      text = value.dump();
    }
    out.push_back("--" + key);
    out.push_back(text);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

}  // namespace

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

int run_cli(const std::vector<std::string>& raw_args) {
  CLI::App app{"Travelling waves in FPU chains via the improvement operator T_gamma", "fpuwaves"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  std::string out_dir;
  unsigned jobs = 0;
  std::string config_path;
  app.add_option("--out", out_dir, "output directory (default: $FPUWAVES_OUT/<command> or fpuwaves_out/<command>)");
  app.add_option("--jobs", jobs, "worker threads for sweep rows (count, 0 = available parallelism)");
  app.add_option("--config", config_path, "replay a stored config.json; explicit flags override it");

  std::map<std::string, Command> cmds;
  auto make = [&](const std::string& name, const std::string& desc) -> Command& {
    Command& c = cmds[name];
    c.app = app.add_subcommand(name, desc);
    c.app->fallthrough();
    c.reg = std::make_unique<Registry>(c.app);
    return c;
  };

  // solve
  SolveOpts solve_o;
  {
    Command& c = make("solve", "solve for one travelling wave and write profile, field and trace");
    add_potential_opts(*c.reg, solve_o);
    add_grid_opts(*c.reg, solve_o, true);
    c.reg->add("gamma", solve_o.gamma, "constraint level 1/2||W||^2 = gamma (energy units)")->required();
    add_solver_opts(*c.reg, solve_o);
    add_field_opts(*c.reg, solve_o);
    c.reg->add("init", solve_o.init, "start from a profile CSV (phi,w) instead of --seed");
    c.run = [&](const fs::path& dir) {
      const EnergyContext ctx = solve_o.context();
      std::optional<Profile> init;
      if (!solve_o.init.empty()) init = io::read_profile_csv(solve_o.init);
      if (init && !(init->grid == ctx.op.grid)) {
        throw Error(ErrorCode::grid_mismatch, "initial profile grid differs from --L/--M/--mode");
      }
      const WaveResult r = solve(ctx, solve_o.solver(), init);
      return write_solution(dir, solve_o, ctx, r);
    };
  }

  // sweep
  SolveOpts sweep_o;
  std::vector<double> sweep_gammas{0.05, 0.1, 0.25, 0.5, 1.0, 2.5, 5.0, 10.0};
  bool sweep_cold = false;
  {
    Command& c = make("sweep", "gamma sweep with warm starts; writes rows, profiles and traces");
    add_potential_opts(*c.reg, sweep_o);
    add_grid_opts(*c.reg, sweep_o, false);
    c.reg->add_list("gammas", sweep_gammas, "constraint levels, comma separated (energy units)");
    add_solver_opts(*c.reg, sweep_o);
    c.reg->add("omega-sign", sweep_o.omega_sign, "sign of the frequency omega = +-sigma (+1 or -1)");
    c.reg->flag("cold", sweep_cold, "start every row from --seed instead of the previous profile");
    c.run = [&](const fs::path& dir) {
      const EnergyContext ctx = sweep_o.context();
      const GammaSweep s = gamma_sweep(ctx, sweep_o.solver(), sweep_gammas, !sweep_cold, sweep_o.omega_sign);
      Outcome out = write_rows(dir, s.rows, ctx.op);
      for (std::size_t i = 0; i < s.traces.size(); ++i) io::write_trace_csv(dir / index_name("trace", i), s.traces[i]);
      out.summary["trace_nesting_fractions"] = s.nesting;
      bool tightening = true;
      for (std::size_t i = 1; i < s.rows.size(); ++i) {
        tightening = tightening && max_abs(s.rows[i].result.w) >= max_abs(s.rows[i - 1].result.w);
      }
      out.summary["max_abs_w_nondecreasing"] = tightening;
      return out;
    };
  }

  // localize
  SolveOpts loc_o;
  loc_o.cone = "UN";
  std::vector<double> loc_q{4, 6, 10, 20, 50, 100};
  double loc_gamma = 0.5;
  {
    Command& c = make("localize", "complete-localisation sweep over homogeneous potentials Phi_q");
    c.reg->add_list("q", loc_q, "exponents q > 2, comma separated");
    c.reg->add("gamma", loc_gamma, "constraint level (energy units)");
    add_grid_opts(*c.reg, loc_o, false);
    add_solver_opts(*c.reg, loc_o);
    c.run = [&](const fs::path& dir) {
      LocalizationConfig cfg;
      cfg.qs = loc_q;
      cfg.gamma = loc_gamma;
      cfg.half_length = loc_o.L;
      cfg.m = loc_o.M;
      cfg.op = parse_avg_kind(loc_o.op);
      cfg.cone = parse_cone(loc_o.cone);
      cfg.solver = loc_o.solver();
      cfg.jobs = jobs;
      const auto rows = localization_sweep(cfg);
      Outcome out = write_rows(dir, rows, make_avg(cfg.op, make_grid(cfg.half_length, cfg.m, GridMode::periodic)));
      out.summary["distances_strictly_decreasing"] = strictly_decreasing(rows);
      return out;
    };
  }

  // rescaled-localize
  SolveOpts rloc_o;
  rloc_o.cone = "UN";
  std::vector<double> rloc_gammas{1, 10, 100, 1000};
  {
    Command& c = make("rescaled-localize", "localisation sweep in gamma for the rescaled potentials Phi_gamma on S_1/2");
    add_potential_opts(*c.reg, rloc_o);
    c.reg->add_list("gammas", rloc_gammas, "constraint levels of the original problem (energy units)");
    add_grid_opts(*c.reg, rloc_o, false);
    add_solver_opts(*c.reg, rloc_o);
    c.run = [&](const fs::path& dir) {
      RescaledLocalizationConfig cfg;
      cfg.base = parse_potential(rloc_o.potential);
      cfg.gammas = rloc_gammas;
      cfg.half_length = rloc_o.L;
      cfg.m = rloc_o.M;
      cfg.op = parse_avg_kind(rloc_o.op);
      cfg.cone = parse_cone(rloc_o.cone);
      cfg.solver = rloc_o.solver();
      cfg.jobs = jobs;
      const auto rows = rescaled_localization_sweep(cfg);
      Outcome out = write_rows(dir, rows, make_avg(cfg.op, make_grid(cfg.half_length, cfg.m, GridMode::periodic)));
      out.summary["distances_strictly_decreasing"] = strictly_decreasing(rows);
      return out;
    };
  }

  // continue
  SolveOpts cont_o;
  cont_o.potential = "homogeneous:q=4";
  cont_o.M = 16;
  std::vector<double> cont_L{4, 8, 16, 32, 64};
  double cont_gamma = 0.5;
  int cont_witness = 32;
  {
    Command& c = make("continue", "wave train to soliton continuation over an increasing L schedule");
    add_potential_opts(*c.reg, cont_o);
    c.reg->add("gamma", cont_gamma, "constraint level (energy units)");
    c.reg->add_list("L", cont_L, "increasing half-lengths (lattice spacings)");
    c.reg->add("M", cont_o.M, "resolution: cell width h = 1/(2M) (lattice spacings)");
    c.reg->add("witness-n", cont_witness, "largest n of the U_n energy witness (count)");
    c.reg->add("max-iter", cont_o.max_iter, "iteration cap per stage (count)");
    c.reg->add("tol-fp", cont_o.tol_fp, "fixed-point tolerance, relative to sqrt(2 gamma)");
    c.reg->add("tol-energy", cont_o.tol_energy, "relative energy-increment tolerance");
    c.reg->add("tail-tol", cont_o.tail_tol, "admissible boundary mass of the soliton, relative to gamma");
    add_field_opts(*c.reg, cont_o);
    c.run = [&](const fs::path& dir) {
      ContinuationConfig cfg;
      cfg.potential = parse_potential(cont_o.potential);
      cfg.gamma = cont_gamma;
      cfg.schedule = cont_L;
      cfg.m = cont_o.M;
      cfg.witness_n_max = cont_witness;
      cont_o.gamma = cont_gamma;
      cfg.solver = cont_o.solver();
      const ContinuationResult res = continuation_to_soliton(cfg);

      std::ostringstream rows;
      rows << "L,status,iterations,P_L,P_embedded,right_gap,energy_step,distance_step,envelope,proof_bound\n";
      Outcome out;
      out.summary["stages"] = json::array();
      for (std::size_t i = 0; i < res.stages.size(); ++i) {
        const auto& st = res.stages[i];
        const double env = res.envelope_c * std::sqrt(cfg.gamma / st.half_length);
        rows << io::fmt(st.half_length) << ',' << to_string(st.result.status) << ',' << st.result.iterations << ','
             << io::fmt(st.result.energy) << ',' << io::fmt(st.p_embedded) << ',' << io::fmt(st.right_gap) << ','
             << (st.energy_step ? io::fmt(*st.energy_step) : "") << ','
             << (st.distance_step ? io::fmt(*st.distance_step) : "") << ',' << io::fmt(env) << ','
             << io::fmt(st.proof_bound) << '\n';
        io::write_profile_csv(dir / index_name("profile", i), st.result.w);
        json sj = io::result_json(st.result);
        sj["L"] = st.half_length;
        sj["p_embedded"] = st.p_embedded;
        sj["right_gap"] = st.right_gap;
        if (st.energy_step) sj["energy_step"] = *st.energy_step;
        if (st.distance_step) sj["distance_step"] = *st.distance_step;
        out.summary["stages"].push_back(sj);
      }
      io::write_text(dir / "rows.csv", rows.str());
      const AvgOperator line_op = make_avg(AvgKind::bar, res.soliton.w.grid);
      const WaveField f = reconstruct(line_op, res.soliton.w, res.soliton.sigma2, {cont_o.r_off, cont_o.v_off},
                                      FieldMode::soliton, cont_o.omega_sign);
      io::write_profile_csv(dir / "soliton_profile.csv", res.soliton.w);
      io::write_field_csv(dir / "soliton_field.csv", f);
      io::write_trace_csv(dir / "soliton_trace.csv", trace(f));
      json sol = io::result_json(res.soliton);
      sol["in_UN"] = in_cone(res.soliton.w, ConeKind::u_n);
      sol["beta"] = cfg.potential.beta;
      out.summary["soliton"] = sol;
      out.summary["margin_wcl"] = res.margin_wcl;
      out.summary["margin_harmonic_witness"] = res.margin_harmonic;
      out.summary["envelope_c"] = res.envelope_c;
      out.summary["envelope_c_lsq"] = res.envelope_c_lsq;
      out.summary["energy_steps_decreasing"] = res.energy_steps_decreasing;
      out.summary["distance_steps_decreasing"] = res.distance_steps_decreasing;
      out.summary["energy_floor"] = res.energy_floor;
      out.summary["distance_floor"] = res.distance_floor;
      out.code = res.soliton.converged ? 0 : 2;
      for (const auto& st : res.stages) {
        if (!st.result.converged) out.code = 2;
      }
      return out;
    };
  }

  // benchmark-harmonic
  double bh_beta = 1.0, bh_gamma = 0.5, bh_L = 0.0;
  int bh_M = 16;
  std::vector<int> bh_n{4, 8, 16, 32};
  {
    Command& c = make("benchmark-harmonic", "harmonic energy of the maximising sequence U_n against beta gamma");
    c.reg->add("beta", bh_beta, "harmonic stiffness Phi''(0) (energy units)");
    c.reg->add("gamma", bh_gamma, "constraint level (energy units)");
    c.reg->add_list("n", bh_n, "support half-widths n of U_n (lattice spacings)");
    c.reg->add("M", bh_M, "resolution: cell width h = 1/(2M) (lattice spacings)");
    c.reg->add("L", bh_L, "line half-length, 0 = max n + 2 (lattice spacings)");
    c.run = [&](const fs::path& dir) {
      const HarmonicBenchmark b =
          harmonic_benchmark(bh_beta, bh_gamma, bh_n, bh_M, bh_L > 0.0 ? std::optional<double>(bh_L) : std::nullopt);
      std::ostringstream rows;
      rows << "n,energy,defect\n";
      Outcome out;
      out.summary["rows"] = json::array();
      for (const auto& r : b.rows) {
        rows << r.n << ',' << io::fmt(r.energy) << ',' << io::fmt(r.defect) << '\n';
        out.summary["rows"].push_back({{"n", r.n}, {"energy", r.energy}, {"defect", r.defect}});
      }
      io::write_text(dir / "rows.csv", rows.str());
      out.summary["beta_gamma"] = b.beta * b.gamma;
      out.summary["decay_exponent"] = std::isfinite(b.decay_exponent) ? json(b.decay_exponent) : json(nullptr);
      out.summary["max_excess"] = b.max_excess;
      out.summary["L"] = b.half_length;
      return out;
    };
  }

  // validate
  SolveOpts val_o;
  val_o.op = "hat";
  double val_dt = 1e-4, val_T = 0.0;
  {
    Command& c = make("validate", "seed a periodic FPU chain with a computed wave train and check rigid translation");
    add_potential_opts(*c.reg, val_o);
    add_grid_opts(*c.reg, val_o, false);
    c.reg->add("gamma", val_o.gamma, "constraint level (energy units)");
    add_solver_opts(*c.reg, val_o);
    add_field_opts(*c.reg, val_o);
    c.reg->add("dt", val_dt, "time step (time units)");
    c.reg->add("T", val_T, "integration time, 0 = one traversal 2L/|omega| (time units)");
    c.reg->add("init", val_o.init, "use a profile CSV (phi,w) as start of the solve");
    c.run = [&](const fs::path& dir) {
      const EnergyContext ctx = val_o.context();
      std::optional<Profile> init;
      if (!val_o.init.empty()) init = io::read_profile_csv(val_o.init);
      const WaveResult r = solve(ctx, val_o.solver(), init);
      Outcome out = write_solution(dir, val_o, ctx, r);
      const WaveField f = reconstruct(ctx.op, r.w, r.sigma2, {val_o.r_off, val_o.v_off}, FieldMode::wave_train,
                                      val_o.omega_sign);
      const double T = val_T > 0.0 ? val_T : traversal_time(f);
      const RigidityReport rep = rigidity_error(f, ctx.potential, T, val_dt);
      json solve_part = out.summary;
      out.summary = io::rigidity_json(rep);
      out.summary["atoms"] = seed_chain(f).atoms();
      out.summary["solve"] = solve_part;
      return out;
    };
  }

  // check-potential
  std::string cp_name = "cosh";
  double cp_gamma = 0.5;
  int cp_samples = 400, cp_M = 64, cp_n = 32;
  {
    Command& c = make("check-potential", "sample the super-quadratic growth criteria of a potential");
    c.reg->add("name", cp_name, "potential spec, same syntax as --potential of solve");
    c.reg->add("gamma", cp_gamma, "constraint level; criteria are sampled on (0, sqrt(2 gamma)] (energy units)");
    c.reg->add("samples", cp_samples, "sample count (>= 100)");
    c.reg->add("M", cp_M, "resolution of the energy witnesses: h = 1/(2M) (lattice spacings)");
    c.reg->add("witness-n", cp_n, "largest n of the U_n energy witness (count)");
    c.run = [&](const fs::path&) {
      const Potential p = parse_potential(cp_name);
      Outcome out;
      out.summary = io::superquad_json(check_superquadratic(p, cp_gamma, cp_samples));
      out.summary["potential"] = p.spec();
      out.summary["beta"] = p.beta;
      out.summary["monotonicity_constant"] = monotonicity_constant(p, cp_gamma);
      out.summary["margin_wcl"] = genuine_margin(p, cp_gamma, make_grid(2.0, cp_M, GridMode::periodic));
      out.summary["margin_harmonic_witness"] = harmonic_witness_margin(p, cp_gamma, cp_n, cp_M);
      return out;
    };
  }

  // spectrum-probe
  double sp_L = 2.0;
  int sp_M = 32, sp_modes = 8;
  {
    Command& c = make("spectrum-probe", "compare bar A on cos(m pi phi / L) with Theta(m pi / 2L)");
    c.reg->add("L", sp_L, "half-length of the periodic domain (lattice spacings)");
    c.reg->add("M", sp_M, "resolution: h = 1/(2M) (lattice spacings)");
    c.reg->add("modes", sp_modes, "largest mode number m (count)");
    c.run = [&](const fs::path& dir) {
      const Grid g = make_grid(sp_L, sp_M, GridMode::periodic);
      std::ostringstream rows;
      rows << "mode,analytic,measured,abs_err\n";
      Outcome out;
      out.summary["rows"] = json::array();
      for (int m = 0; m <= sp_modes; ++m) {
        const SpectrumSample s = spectrum_probe(g, m);
        rows << s.mode << ',' << io::fmt(s.analytic) << ',' << io::fmt(s.measured) << ',' << io::fmt(s.abs_err())
             << '\n';
        out.summary["rows"].push_back(
            {{"mode", s.mode}, {"analytic", s.analytic}, {"measured", s.measured}, {"abs_err", s.abs_err()}});
      }
      io::write_text(dir / "rows.csv", rows.str());
      return out;
    };
  }

  std::set<std::string> names;
  for (const auto& [name, c] : cmds) names.insert(name);

  try {
    std::vector<std::string> args = expand_config(raw_args, names);
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  for (auto& [name, c] : cmds) {
    if (!c.app->parsed()) continue;
    try {
      const fs::path dir = out_dir.empty() ? default_root() / name : fs::path(out_dir);
      fs::create_directories(dir);
      json cfg{{"command", name}, {"version", kVersion}, {"args", c.reg->dump()}};
      if (name != "solve" && name != "validate") cfg["jobs"] = jobs;
      io::write_json(dir / "config.json", cfg);
      Outcome out = c.run(dir);
      out.summary["command"] = name;
      out.summary["exit_code"] = out.code;
      io::write_json(dir / "summary.json", out.summary);
      std::cout << out.summary.dump(2) << '\n';
      std::cerr << name << ": wrote " << dir.string() << '\n';
      return out.code;
    } catch (const Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return exit_for(e.code());
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 1;
}

}  // namespace fpuwaves
