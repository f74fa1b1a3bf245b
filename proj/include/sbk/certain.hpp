#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <span>
#include <vector>

#include "sbk/errors.hpp"
#include "sbk/model.hpp"
#include "sbk/piecewise_linear.hpp"
#include "sbk/solve_result.hpp"

namespace sbk::certain {

/// Follower's greedy order for a fixed value vector c.
struct FollowerOrdering {
  /// Items by decreasing c_i / a_i; equal ratios keep the lower index first.
  std::vector<std::size_t> perm;
  /// Number of leading items in `perm` with c_i > 0.
  std::size_t n_pos = 0;
  /// prefix_sums[k] = sum of the sizes of perm[0..k), k = 0..n.
  std::vector<std::int64_t> prefix_sums;
};

/// True iff the follower packs item i before item j: c_i/a_i > c_j/a_j, or the
/// ratios agree and i < j. Compares c_i a_j with c_j a_i to avoid division.
template <class T>
bool prefers(std::span<const std::int64_t> a, std::span<const T> c, std::size_t i,
             std::size_t j) {
  const T lhs = c[i] * T(static_cast<long>(a[j]));
  const T rhs = c[j] * T(static_cast<long>(a[i]));
  if (lhs != rhs) return rhs < lhs;
  return i < j;
}

template <class T>
FollowerOrdering follower_ordering(std::span<const std::int64_t> a, std::span<const T> c) {
  if (a.size() != c.size()) throw InvalidInput("follower ordering: c has wrong length");
  FollowerOrdering out;
  out.perm.resize(a.size());
  std::iota(out.perm.begin(), out.perm.end(), std::size_t{0});
  std::sort(out.perm.begin(), out.perm.end(),
            [&](std::size_t i, std::size_t j) { return prefers<T>(a, c, i, j); });
  out.n_pos = static_cast<std::size_t>(
      std::count_if(c.begin(), c.end(), [](const T& v) { return T(0) < v; }));
  out.prefix_sums.assign(a.size() + 1, 0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    out.prefix_sums[k + 1] = out.prefix_sums[k] + a[out.perm[k]];
  }
  return out;
}

/// Leader-side data converted once to the scalar of a solver path.
template <class T>
struct LeaderData {
  std::vector<std::int64_t> a;
  std::vector<T> d;
  T delta;
  std::int64_t total_size = 0;
};

template <class T>
LeaderData<T> leader_data(const Instance& inst) {
  LeaderData<T> out;
  out.a = inst.a;
  for (const auto& dj : inst.d) out.d.push_back(from_rational<T>(dj));
  out.delta = from_rational<T>(inst.delta);
  out.total_size = inst.total_size();
  return out;
}

/// Leader objective f(b) = d^T x(b) - delta b on [0, A] for the greedy order.
/// Vertices sit at 0, at each prefix sum of the positive-profit items, and at A.
template <class T>
PiecewiseLinear<T> leader_objective(const LeaderData<T>& data, const FollowerOrdering& order) {
  std::vector<T> xs;
  std::vector<T> ys;
  xs.reserve(order.n_pos + 2);
  ys.reserve(order.n_pos + 2);
  xs.push_back(T(0));
  ys.push_back(T(0));
  T packed_value = 0;
  for (std::size_t k = 0; k < order.n_pos; ++k) {
    packed_value += data.d[order.perm[k]];
    const T b(static_cast<long>(order.prefix_sums[k + 1]));
    xs.push_back(b);
    ys.push_back(packed_value - data.delta * b);
  }
  const T total(static_cast<long>(data.total_size));
  if (xs.back() < total) {
    xs.push_back(total);
    ys.push_back(packed_value - data.delta * total);
  }
  return PiecewiseLinear<T>(std::move(xs), std::move(ys));
}

template <class T>
PiecewiseLinear<T> leader_objective(const LeaderData<T>& data, std::span<const T> c) {
  return leader_objective(data, follower_ordering<T>(data.a, c));
}

/// Greedy (Dantzig) follower solution at capacity b in [0, A].
std::vector<Rational> follower_solve(const Instance& inst, std::span<const Rational> c,
                                     const Rational& b);

PiecewiseLinear<Rational> leader_objective(const Instance& inst, std::span<const Rational> c);

/// Deterministic bilevel problem: maximizes the leader objective over
/// [b_lo, b_hi]. O(n log n).
SolveResult<Rational> solve_certain(const Instance& inst, std::span<const Rational> c);

}  // namespace sbk::certain
