#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "sbk/model.hpp"
#include "sbk/piecewise_linear.hpp"
#include "sbk/solve_result.hpp"

namespace sbk {

struct Scenario {
  std::vector<Rational> c;
  Rational p;
};

/// Explicit joint distribution of the follower values: scenarios with
/// positive probabilities summing to one.
struct FiniteSupport {
  std::vector<Scenario> scenarios;

  /// Throws InvalidInput unless every p > 0, sum p = 1 and every c has n entries.
  void validate(std::size_t n) const;

  /// Copy with identical value vectors merged (probabilities summed), in
  /// lexicographic order of c.
  FiniteSupport merged() const;
};

/// Draws scenario `index` under `seed`; must be a pure function of both.
using ScenarioSampler = std::function<std::vector<Rational>(std::uint64_t seed, std::uint64_t index)>;

/// Independent per-item draws from the instance's distributions by inverse
/// transform of counter-based uniforms. Finite components return their exact
/// values; continuous ones the exact rational of the drawn double.
ScenarioSampler componentwise_sampler(const Instance& inst);

/// f_hat = sum_c p_c f^c on [0, A], before maximization.
PiecewiseLinear<Rational> expected_objective(const Instance& inst, const FiniteSupport& support);

/// Exact solver for an explicitly given finite support, O(|U| n log(|U| n)).
SolveResult<Rational> solve_finite_support(const Instance& inst, const FiniteSupport& support);

/// Sample average approximation: N draws, uniform weights, then the finite
/// support solver. Deterministic given the seed.
SolveResult<Rational> solve_saa(const Instance& inst, const ScenarioSampler& sampler,
                                std::size_t samples, std::uint64_t seed);

}  // namespace sbk
