#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sbk/dp_core.hpp"
#include "sbk/model.hpp"
#include "sbk/solve_result.hpp"

namespace sbk::approx {

/// Mid-quantile discretization of every component at granularity m.
struct QuantileDiscretization {
  double eps = 0.0;
  std::size_t m = 1;
  std::vector<std::vector<double>> tilde_c;  // [i][k-1] = Q_i((k - 1/2) / m), nondecreasing in k
  std::vector<std::vector<double>> J;        // [i] sorted distinct positive (a_i/a_j) tilde_c[j][k], j != i
};

/// m = max(1, ceil((n - 1) A D / eps)). Throws InvalidInput for eps <= 0 and
/// ResourceLimit when m does not fit a table index.
std::size_t granularity(const Instance& inst, double eps);

QuantileDiscretization discretize(const Instance& inst, double eps);

/// Nearest multiple of 1/m, ties rounded up.
double round_cdf(double F, std::size_t m);

/// CDF of the discretized component: round_cdf(F_c(t), m).
double tilde_cdf(const ItemDistribution& dist, std::size_t m, double t);

struct ApproxOptions {
  double eps = 0.1;
  std::uint64_t memory_cap_bytes = std::uint64_t{1} << 30;
};

/// Bytes held by the discretization and the g / xprime tables:
/// 8 (n m + n (n-1) m + 2 n (A + 1)).
std::uint64_t predicted_bytes(const Instance& inst, std::size_t m);

/// g~_i(b) = sum over the intervals (j_k, j_{k+1}] of 0 < J_i < infinity of
/// h~_i(b, gamma_k) (F_i(j_{k+1}) - F_i(j_k)), where gamma_k is an interior
/// point and h~ uses the discretized exceed probabilities.
dp::GTable<double> g_table_approx(const Instance& inst, const QuantileDiscretization& disc);

/// Additive eps-approximation of max f_hat over [b_lo, b_hi].
/// Any distribution type is accepted.
SolveResult<double> solve_approx(const Instance& inst, const ApproxOptions& options);

}  // namespace sbk::approx
