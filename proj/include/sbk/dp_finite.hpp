#pragma once

#include <cstddef>
#include <vector>

#include "sbk/dp_core.hpp"
#include "sbk/model.hpp"
#include "sbk/solve_result.hpp"

namespace sbk::dp {

/// Probabilities that item j is preferred over item i when c_i takes its k-th
/// realization: P(c_j/a_j > c_i^k/a_i), plus P(c_j/a_j = c_i^k/a_i) when j < i
/// (lower index wins ties). Exact; O(m^2 n^2) to build.
class ExceedTable {
 public:
  ExceedTable() = default;
  explicit ExceedTable(const Instance& inst);

  /// P[j][i][k]; zero when i == j.
  const Rational& at(std::size_t j, std::size_t i, std::size_t k) const {
    return table_[i][k][j];
  }
  /// All j for fixed (i, k).
  const std::vector<Rational>& column(std::size_t i, std::size_t k) const { return table_[i][k]; }

 private:
  std::vector<std::vector<std::vector<Rational>>> table_;  // [i][k][j]
};

inline ExceedTable exceed_probs(const Instance& inst) { return ExceedTable(inst); }

/// g table for componentwise finite distributions: one HTable per positive
/// realization c_i^k, weighted by p_i^k. Realizations of the same item whose
/// exceed columns coincide share one HTable build.
GTable<Rational> g_table_finite(const Instance& inst, const ExceedTable& exceed,
                                std::size_t* htable_builds = nullptr);

/// Exact pseudo-polynomial solver, O(m^2 n^2 + m n^2 A).
SolveResult<Rational> solve_dp_finite(const Instance& inst);

/// Full intermediate state, for diagnostics and invariant checks.
struct FiniteDpTrace {
  ExceedTable exceed;
  GTable<Rational> g;
  ExpectedIncrements<Rational> increments;
};
FiniteDpTrace trace_dp_finite(const Instance& inst);

}  // namespace sbk::dp
