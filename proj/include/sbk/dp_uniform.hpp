#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sbk/dp_core.hpp"
#include "sbk/model.hpp"
#include "sbk/polynomial.hpp"
#include "sbk/solve_result.hpp"

namespace sbk::dp {

/// Ascending distinct profit breakpoints max(0, c_i^-/a_i), max(0, c_i^+/a_i).
struct BreakpointGrid {
  std::vector<Rational> v;
};

BreakpointGrid breakpoint_grid(const Instance& inst);

/// gamma -> P(c_j/a_j > gamma/a_i) for uniform c_j: 1 up to (a_i/a_j) c_j^-,
/// then a linear ramp down to 0 at (a_i/a_j) c_j^+.
PiecewisePolynomial<Rational> exceed_prob_pwl(const Instance& inst, std::size_t j, std::size_t i);

/// h_i(b, [n]\{i}, gamma) on one grid interval (lo, hi] of supp+(c_i), as
/// polynomials in the local coordinate t = (gamma - lo) / (hi - lo) in [0, 1].
struct IntervalTable {
  Rational lo;
  Rational hi;
  std::vector<Polynomial<double>> h;  // index b = 0..b_max

  /// h(b, gamma) for gamma in [lo, hi].
  double evaluate(std::int64_t b, double gamma) const;
};

/// All interval tables for item i; each costs O(n^2 A).
std::vector<IntervalTable> h_tables_pwp(const Instance& inst, std::size_t i);

/// g_i(b) = integral over supp+(c_i) of h_i(b, ., gamma) / (c_i^+ - c_i^-),
/// integrated exactly piece by piece.
GTable<double> g_table_uniform(const Instance& inst);

/// Pseudo-polynomial solver for componentwise continuous uniform values, O(n^4 A).
SolveResult<double> solve_dp_uniform(const Instance& inst);

struct UniformDpTrace {
  GTable<double> g;
  ExpectedIncrements<double> increments;
};
UniformDpTrace trace_dp_uniform(const Instance& inst);

}  // namespace sbk::dp
