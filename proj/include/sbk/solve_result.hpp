#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "sbk/piecewise_linear.hpp"

namespace sbk {

struct SolveStats {
  double wall_seconds = 0.0;
  /// Named table sizes / counters reported by the solver ("scenarios",
  /// "htable_builds", ...). Deterministic for a given input.
  std::map<std::string, std::size_t> counters;
};

/// Optimal capacity, its objective value, and the full objective profile.
template <class T>
struct SolveResult {
  T b_star;
  T value;
  PiecewiseLinear<T> profile;
  std::string method;
  SolveStats stats;
};

}  // namespace sbk
