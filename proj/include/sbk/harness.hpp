#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sbk/model.hpp"

namespace sbk::harness {

enum class ReductionVariant { finite, continuous };

std::string to_string(ReductionVariant v);
/// "finite" or "continuous"; throws ParseError otherwise.
ReductionVariant parse_variant(const std::string& text);

/// Counting-reduction instance for base knapsack (a_star, b_star): n = m + 1
/// items, a = (a_star, sum a_star), d = ((1+tau) a_1, ..., (1+tau) a_m,
/// (tau-1) a_{m+1}), delta = 0, capacity range [0, a_{m+1}].
struct ReductionInstance {
  std::vector<std::int64_t> a_star;
  std::int64_t b_star = 0;
  Rational tau;
  ReductionVariant variant = ReductionVariant::finite;
  /// Finite variant: the low value 1/(2 a_{m+1}). Continuous variant: the half
  /// width of the last item's interval around 1.
  Rational eps;
  Instance built;
};

/// Finite variant: every value is eps or 1 with probability 1/2 each.
/// Continuous variant: c_i ~ U[a_i/(2a_{m+1}), 3a_i/(2a_{m+1})] for i <= m and
/// c_{m+1} ~ U[1 - 1e-9, 1 + 1e-9].
/// Throws InvalidInput unless a_star is nonempty and positive,
/// 0 <= b_star < sum a_star and tau in [-1, 1].
ReductionInstance build_reduction(const std::vector<std::int64_t>& a_star, std::int64_t b_star,
                                  const Rational& tau, ReductionVariant variant);

struct SlopeReport {
  ReductionVariant variant = ReductionVariant::finite;
  std::uint64_t true_count = 0;  // #{x : a_star^T x <= b_star}
  double slope = 0.0;            // f_hat(b_star + 1) - f_hat(b_star) from the solver
  double expected_slope = 0.0;
  /// Finite variant only: the same slopes in exact arithmetic.
  std::optional<Rational> exact_slope;
  std::optional<Rational> exact_expected_slope;
  /// Count reconstructed from the solver slope.
  double recovered_count = 0.0;
  bool pass = false;
};

/// Finite: f_hat'(b_star+1) = 1 + tau - count / 2^m, checked exactly with the
/// finite DP. Continuous: f_hat'(b_star+1) = 1 + tau - 2 count / 2^m, checked
/// to 1e-4 with the uniform DP. Both also require the recovered count to round
/// to the true count.
SlopeReport check_slope_identity(const ReductionInstance& red);

/// P(every base item is packed before the last item), finite variant only,
/// by explicit product expansion (m <= 19).
Rational prob_all_preferred(const ReductionInstance& red);

}  // namespace sbk::harness
