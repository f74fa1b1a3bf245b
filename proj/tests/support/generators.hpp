#pragma once

// Random instance families shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "sbk/model.hpp"

namespace sbk::testing {

struct FiniteShape {
  std::size_t max_items = 5;
  std::size_t max_support = 3;
  std::int64_t max_size = 5;
};

struct UniformShape {
  std::size_t max_items = 4;
  std::int64_t max_total = 20;
};

inline std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Leader data for sizes already in `inst.a`: d in {-3, ..., 4} / 2, delta in
// {0, 1/4, 1/2, 1}, and a capacity range that is fractional about a third of
// the time.
inline void random_leader(std::mt19937_64& rng, Instance& inst) {
  for (std::size_t i = 0; i < inst.a.size(); ++i) {
    inst.d.emplace_back(uniform_int(rng, -3, 4), 2);
    inst.d.back().canonicalize();
  }
  static const Rational deltas[] = {Rational(0), ratio(1, 4), ratio(1, 2), Rational(1)};
  inst.delta = deltas[uniform_int(rng, 0, 3)];
  const std::int64_t total = inst.total_size();
  std::int64_t lo = uniform_int(rng, 0, total);
  std::int64_t hi = uniform_int(rng, 0, total);
  if (lo > hi) std::swap(lo, hi);
  inst.b_lo = lo;
  inst.b_hi = hi;
  if (uniform_int(rng, 0, 2) == 0 && lo < hi) {
    inst.b_lo += ratio(1, 3);
    inst.b_hi -= ratio(1, 5);
    if (inst.b_lo > inst.b_hi) inst.b_hi = inst.b_lo;
  }
}

// Values on a quarter grid in [-1, 4], so ties and zero profits both occur.
inline Instance random_finite_instance(std::mt19937_64& rng, const FiniteShape& shape = {}) {
  Instance inst;
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(shape.max_items)));
  for (std::size_t i = 0; i < n; ++i) {
    inst.a.push_back(uniform_int(rng, 1, shape.max_size));
    const auto m = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(shape.max_support)));
    std::vector<std::int64_t> grid;
    while (grid.size() < m) {
      const auto v = uniform_int(rng, -4, 16);
      if (std::find(grid.begin(), grid.end(), v) == grid.end()) grid.push_back(v);
    }
    FinitePmf pmf;
    std::vector<std::int64_t> weights;
    std::int64_t wsum = 0;
    for (std::size_t k = 0; k < m; ++k) {
      weights.push_back(uniform_int(rng, 1, 6));
      wsum += weights.back();
    }
    for (std::size_t k = 0; k < m; ++k) {
      pmf.values.emplace_back(grid[k], 4);
      pmf.values.back().canonicalize();
      pmf.probs.emplace_back(weights[k], wsum);
      pmf.probs.back().canonicalize();
    }
    inst.dists.emplace_back(std::move(pmf));
  }
  random_leader(rng, inst);
  return inst;
}

// Intervals with endpoints on a quarter grid in [-1, 4] and width >= 1/4.
inline Instance random_uniform_instance(std::mt19937_64& rng, const UniformShape& shape = {}) {
  Instance inst;
  const auto n = static_cast<std::size_t>(uniform_int(rng, 1, static_cast<std::int64_t>(shape.max_items)));
  const std::int64_t per_item = std::max<std::int64_t>(1, shape.max_total / static_cast<std::int64_t>(n));
  for (std::size_t i = 0; i < n; ++i) {
    inst.a.push_back(uniform_int(rng, 1, std::min<std::int64_t>(per_item, 8)));
    const auto lo = uniform_int(rng, -4, 12);
    const auto hi = uniform_int(rng, lo + 1, 16);
    Rational l(lo, 4);
    Rational h(hi, 4);
    l.canonicalize();
    h.canonicalize();
    inst.dists.emplace_back(UniformInterval{l, h});
  }
  random_leader(rng, inst);
  return inst;
}

}  // namespace sbk::testing
