#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "sbk/rational.hpp"

namespace sbk {

/// Finite distribution of one follower item value.
struct FinitePmf {
  std::vector<Rational> values;
  std::vector<Rational> probs;
};

/// Continuous uniform distribution on [lo, hi], lo < hi.
struct UniformInterval {
  Rational lo;
  Rational hi;
};

/// Distribution known only through its CDF and quantile function.
///
/// `name` and `params` identify a built-in family so the distribution can be
/// written back to an instance file; the callables carry the behaviour.
struct OracleDistribution {
  std::string name;
  std::map<std::string, double> params;
  std::function<double(double)> cdf;
  std::function<double(double)> quantile;
};

using ItemDistribution = std::variant<FinitePmf, UniformInterval, OracleDistribution>;

/// Name of the representation held by `dist` ("pmf", "uniform", "builtin_oracle").
std::string distribution_kind(const ItemDistribution& dist);

/// One instance of the stochastic bilevel continuous knapsack problem.
///
/// The leader picks a capacity b in [b_lo, b_hi] and pays delta per unit; the
/// follower packs items fractionally by decreasing c_i / a_i where c is random
/// with per-item distributions `dists`. The leader earns d^T x - delta b.
struct Instance {
  std::vector<std::int64_t> a;
  std::vector<Rational> d;
  Rational delta;
  Rational b_lo;
  Rational b_hi;
  std::vector<ItemDistribution> dists;

  std::size_t size() const { return a.size(); }
  /// A = sum of item sizes.
  std::int64_t total_size() const;
  /// D = sum of |d_j|.
  Rational leader_weight() const;

  bool all_finite() const;
  bool all_uniform() const;
};

enum class Severity { error, warning };

enum class ViolationKind {
  item_count,
  item_size,
  vector_length,
  capacity_cost,
  capacity_bounds,
  pmf_shape,
  pmf_probability,
  pmf_normalization,
  pmf_duplicate_value,
  uniform_width,
  oracle_shape,
  profit_tie,
  zero_profit,
};

struct Violation {
  ViolationKind kind;
  Severity severity;
  std::string message;
};

/// Structural checks (errors) plus positive-probability ties and zero profits
/// among finite components (warnings). An instance with no error-severity
/// entries is accepted by every solver.
std::vector<Violation> validate(const Instance& instance);

bool has_errors(const std::vector<Violation>& violations);

/// Throws InvalidInput describing the first error-severity violation.
void require_valid(const Instance& instance);

/// Throws DistributionMismatch naming the first component that is not a
/// finite PMF (resp. uniform interval).
void require_all_finite(const Instance& instance, const std::string& method);
void require_all_uniform(const Instance& instance, const std::string& method);

}  // namespace sbk
