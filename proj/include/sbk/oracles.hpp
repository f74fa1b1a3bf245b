#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "sbk/finite_support.hpp"
#include "sbk/model.hpp"
#include "sbk/piecewise_linear.hpp"

// Brute-force ground truth for the solvers. Nothing here shares code with the
// solver paths beyond the instance types and PiecewiseLinear storage.
namespace sbk::oracles {

/// One follower packing order: perm[0..n_pos) are the positive-profit items in
/// packing order, the rest are the non-positive items in index order.
struct PermutationTerm {
  std::vector<std::size_t> perm;
  std::size_t n_pos = 0;
  Rational probability;
  PiecewiseLinear<Rational> objective;  // leader objective, sampled at integers 0..A
};

/// Every order with positive probability. Finite components are enumerated
/// realization by realization; continuous uniform components by exact iterated
/// integration over the ordering region. Needs n <= 8 and all components of one
/// of these two kinds; throws DistributionMismatch otherwise.
std::vector<PermutationTerm> permutation_terms(const Instance& inst);

/// sum over terms of probability * objective, exact.
PiecewiseLinear<Rational> permutation_expectation(const Instance& inst);

/// Explicit joint support of independent finite components.
FiniteSupport product_expand(const Instance& inst, std::size_t max_scenarios = 1'000'000);

struct MonteCarloEstimate {
  std::vector<double> mean;       // at b = 0..A
  std::vector<double> std_error;  // at b = 0..A
  std::size_t samples = 0;
};

/// Sample mean and standard error of the leader objective at every integer
/// capacity. Samples are processed in fixed blocks combined in block order, so
/// the result depends on (inst, samples, seed) only, not on `threads`.
MonteCarloEstimate monte_carlo_fhat(const Instance& inst, std::size_t samples, std::uint64_t seed,
                                    unsigned threads = 1);

/// #{x in {0,1}^m : a_star^T x <= b_star} by subset-sum counting. m <= 63.
std::uint64_t count_knapsack(std::span<const std::int64_t> a_star, std::int64_t b_star);

}  // namespace sbk::oracles
