#pragma once

#include <string>
#include <vector>

namespace fpuwaves {

/// Exit codes: 0 success / converged, 2 mathematical failure (not converged,
/// trivial maximiser, no soliton certificate, unstable chain), 1 usage or I/O error.
int run_cli(int argc, char** argv);
int run_cli(const std::vector<std::string>& args);

}  // namespace fpuwaves
