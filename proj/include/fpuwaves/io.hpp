#pragma once

// CSV / JSON artifacts. Numbers are written with 17 significant digits so
// that reloading reproduces them bitwise.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fpuwaves/experiments.hpp"
#include "fpuwaves/lattice.hpp"
#include "fpuwaves/potential.hpp"
#include "fpuwaves/reconstruction.hpp"
#include "fpuwaves/solver.hpp"

namespace fpuwaves::io {

using nlohmann::json;
namespace fs = std::filesystem;

std::string fmt(double x);

void write_text(const fs::path& path, const std::string& text);
void write_json(const fs::path& path, const json& j);
json read_json(const fs::path& path);

json grid_json(const Grid& g);
Grid grid_from_json(const json& j);

/// `phi,w` plus a sidecar `<path>.json` holding {L, M, mode}.
void write_profile_csv(const fs::path& path, const Profile& w);
/// Reads the sidecar when present, otherwise infers a periodic grid from the phi column.
Profile read_profile_csv(const fs::path& path);

/// `phi,r,v`
void write_trace_csv(const fs::path& path, const Trace& t);
/// `phi,R,V` plus a sidecar `<path>.json` holding {k, omega, sigma2, offsets, mode}.
void write_field_csv(const fs::path& path, const WaveField& f);

json result_json(const WaveResult& r);
json superquad_json(const SuperQuadReport& r);
json rigidity_json(const RigidityReport& r);

/// rows.csv for sweep records.
void write_rows_csv(const fs::path& path, const std::vector<SweepRecord>& rows);

}  // namespace fpuwaves::io
