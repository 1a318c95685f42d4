#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "fpuwaves/grid.hpp"

namespace fpuwaves::testing {

/// Random even profile with a non-increasing right half. `lift` shifts it down so
/// that some values are negative (still in U, not in N).
inline Profile random_cone_profile(const Grid& g, std::mt19937_64& rng, double lift = 0.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const std::size_t half = g.cells / 2;
  std::vector<double> right(half);
  for (double& x : right) x = u(rng) * u(rng);
  std::sort(right.begin(), right.end(), std::greater<>());
  std::vector<double> w(g.cells);
  for (std::size_t i = 0; i < half; ++i) {
    w[half + i] = right[i] - lift;
    w[half - 1 - i] = right[i] - lift;
  }
  return Profile(g, std::move(w));
}

inline Profile random_profile(const Grid& g, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<double> w(g.cells);
  for (double& x : w) x = n(rng);
  return Profile(g, std::move(w));
}

inline Profile add(const Profile& a, const Profile& b, double s = 1.0) {
  Profile out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out.w[i] += s * b.w[i];
  return out;
}

}  // namespace fpuwaves::testing
