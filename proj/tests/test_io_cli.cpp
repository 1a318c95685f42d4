#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "fpuwaves/cli.hpp"
#include "fpuwaves/io.hpp"
#include "support.hpp"

using namespace fpuwaves;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / "fpuwaves_tests" / name;
  fs::remove_all(p);
  return p;
}

int run(std::vector<std::string> args) {
  // keep stdout of the CLI out of the doctest report
  std::ostringstream sink;
  auto* old = std::cout.rdbuf(sink.rdbuf());
  const int code = run_cli(args);
  std::cout.rdbuf(old);
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("profile CSV round-trips bitwise") {
    std::mt19937_64 rng(3);
    const fs::path dir = scratch("csv");
    for (GridMode mode : {GridMode::periodic, GridMode::line}) {
      const Grid g = make_grid(3.0, 8, mode);
      const Profile w = testing::random_profile(g, rng);
      io::write_profile_csv(dir / "w.csv", w);
      const Profile back = io::read_profile_csv(dir / "w.csv");
      CHECK(back.grid == g);
      CHECK(back.w == w.w);
    }
    // without a sidecar the grid is inferred as periodic
    const Grid g = make_grid(2.0, 4, GridMode::periodic);
    io::write_profile_csv(dir / "p.csv", make_wcl(g));
    fs::remove(dir / "p.csv.json");
    CHECK(io::read_profile_csv(dir / "p.csv").grid == g);
  }

  TEST_CASE("17 significant digits") {
    CHECK(std::stod(io::fmt(0.1)) == 0.1);
    CHECK(std::stod(io::fmt(1.0 / 3.0)) == 1.0 / 3.0);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("solve writes its artifacts and replays bitwise") {
    const fs::path a = scratch("solve_a");
    const fs::path b = scratch("solve_b");
    CHECK(run({"--out", a.string(), "solve", "--potential", "cosh", "--gamma", "1", "--M", "8", "--op", "hat"}) == 0);
    for (const char* f : {"config.json", "summary.json", "profile.csv", "field.csv", "trace.csv"}) {
      CHECK(fs::exists(a / f));
    }
    const auto summary = io::read_json(a / "summary.json");
    CHECK(summary.at("status") == "Converged");
    CHECK(run({"--config", (a / "config.json").string(), "--out", b.string()}) == 0);
    CHECK(slurp(a / "profile.csv") == slurp(b / "profile.csv"));
  }

  TEST_CASE("explicit flags override a replayed config") {
    const fs::path a = scratch("override_a");
    const fs::path b = scratch("override_b");
    CHECK(run({"--out", a.string(), "solve", "--potential", "cosh", "--gamma", "1", "--M", "8"}) == 0);
    CHECK(run({"--config", (a / "config.json").string(), "--out", b.string(), "solve", "--gamma", "2"}) == 0);
    CHECK(io::read_json(b / "config.json").at("args").at("gamma") == 2.0);
  }

  TEST_CASE("exit codes") {
    const fs::path d = scratch("codes");
    CHECK(run({"--out", d.string(), "solve", "--potential", "cosh"}) == 1);
    CHECK(run({"--out", d.string(), "solve", "--potential", "quartic", "--gamma", "1"}) == 1);
    CHECK(run({"--out", d.string(), "solve", "--gamma", "1", "--max-iter", "5"}) == 2);
    CHECK(run({"--out", d.string(), "nonsense"}) == 1);
    CHECK(run({"--out", d.string(), "--help"}) == 0);
  }

  TEST_CASE("check-potential reports the failed condition") {
    const fs::path d = scratch("check");
    CHECK(run({"--out", d.string(), "check-potential", "--name", "toda", "--gamma", "0.5"}) == 0);
    const auto s = io::read_json(d / "summary.json");
    CHECK(s.at("c1") == false);
  }

  TEST_CASE("spectrum probe") {
    const fs::path d = scratch("spectrum");
    CHECK(run({"--out", d.string(), "spectrum-probe", "--M", "8"}) == 0);
    CHECK(fs::exists(d / "summary.json"));
  }
}
