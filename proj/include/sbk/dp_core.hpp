#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sbk/errors.hpp"
#include "sbk/model.hpp"
#include "sbk/piecewise_linear.hpp"
#include "sbk/solve_result.hpp"

namespace sbk::dp {

/// Distribution of the total size of the items preferred over a fixed item at
/// a fixed threshold: mass[b] = P(total = b) for b = 0..b_max. Entries above
/// b_max are zero.
template <class T>
class HTable {
 public:
  /// Empty preferred set: point mass at b = 0.
  static HTable point_mass() {
    HTable h;
    h.mass_.assign(1, T(1));
    return h;
  }

  std::int64_t b_max() const { return static_cast<std::int64_t>(mass_.size()) - 1; }
  const std::vector<T>& mass() const { return mass_; }

  T at(std::int64_t b) const {
    if (b < 0 || b > b_max()) return T(0);
    return mass_[static_cast<std::size_t>(b)];
  }

  T total() const {
    T acc = 0;
    for (const auto& v : mass_) acc += v;
    return acc;
  }

  /// Adds one item of size `size` that is preferred with probability `p_gt`:
  /// mass'[b] = p_gt mass[b - size] + (1 - p_gt) mass[b]. Updates in place from
  /// the top so each mass[b - size] is read before it is overwritten; the
  /// support only grows when p_gt > 0.
  void add_item(const T& p_gt, std::int64_t size) {
    if (size < 1) throw InvalidInput("htable: item size must be >= 1");
    if (p_gt == T(0)) return;
    const auto old_size = mass_.size();
    const auto shift = static_cast<std::size_t>(size);
    mass_.resize(old_size + shift, T(0));
    if (p_gt == T(1)) {
      for (std::size_t b = mass_.size(); b-- > shift;) mass_[b] = mass_[b - shift];
      for (std::size_t b = 0; b < shift; ++b) mass_[b] = T(0);
      return;
    }
    const T keep = T(1) - p_gt;
    for (std::size_t b = mass_.size(); b-- > 0;) {
      T v = b < old_size ? T(keep * mass_[b]) : T(0);
      if (b >= shift) v += p_gt * mass_[b - shift];
      mass_[b] = std::move(v);
    }
  }

 private:
  std::vector<T> mass_;
};

/// One recursion step on a copy of `prev`.
template <class T>
HTable<T> h_recursion_step(const HTable<T>& prev, const T& p_gt, std::int64_t size) {
  HTable<T> next = prev;
  next.add_item(p_gt, size);
  return next;
}

/// g[i][b] = P(c_i > 0 and the items preferred over i have total size b),
/// for b = 0..A.
template <class T>
struct GTable {
  std::vector<std::vector<T>> g;

  static GTable zeros(std::size_t n, std::int64_t total_size) {
    GTable out;
    out.g.assign(n, std::vector<T>(static_cast<std::size_t>(total_size + 1), T(0)));
    return out;
  }

  /// Adds weight * h to row i.
  void accumulate(std::size_t i, const T& weight, const HTable<T>& h) {
    auto& row = g[i];
    const auto& mass = h.mass();
    for (std::size_t b = 0; b < mass.size() && b < row.size(); ++b) row[b] += weight * mass[b];
  }
};

/// Expected unit increments xprime[i][b] = x_hat_i(b) - x_hat_i(b - 1) for
/// b = 1..A (index 0 is unused and zero), and the expected leader objective
/// f_hat sampled at every integer capacity.
template <class T>
struct ExpectedIncrements {
  std::vector<std::vector<T>> xprime;
  PiecewiseLinear<T> fhat;
};

/// xprime[i][b] = (1/a_i) sum_{r=1}^{a_i} g_i(b - r), evaluated term by term.
/// O(n A max a); kept as a reference for the incremental form.
template <class T>
std::vector<std::vector<T>> xprime_direct(const GTable<T>& g, std::span<const std::int64_t> a) {
  std::vector<std::vector<T>> out(g.g.size());
  for (std::size_t i = 0; i < g.g.size(); ++i) {
    const auto& row = g.g[i];
    const auto total = static_cast<std::int64_t>(row.size()) - 1;
    out[i].assign(row.size(), T(0));
    for (std::int64_t b = 1; b <= total; ++b) {
      T acc = 0;
      for (std::int64_t r = 1; r <= a[i]; ++r) {
        if (b - r >= 0) acc += row[static_cast<std::size_t>(b - r)];
      }
      acc /= T(static_cast<long>(a[i]));
      out[i][static_cast<std::size_t>(b)] = std::move(acc);
    }
  }
  return out;
}

/// Reconstructs xprime from g with the running update
/// xprime_i(b) = xprime_i(b-1) + (g_i(b-1) - g_i(b-1-a_i)) / a_i, O(nA) total,
/// and assembles f_hat from f_hat(0) = 0, f_hat'(b) = d^T xprime(b) - delta.
template <class T>
ExpectedIncrements<T> xprime_from_g(const GTable<T>& g, const Instance& inst) {
  const std::size_t n = inst.size();
  const std::int64_t total = inst.total_size();
  if (g.g.size() != n) throw InvalidInput("xprime_from_g: table has wrong item count");
  ExpectedIncrements<T> out;
  out.xprime.assign(n, std::vector<T>(static_cast<std::size_t>(total + 1), T(0)));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& row = g.g[i];
    if (static_cast<std::int64_t>(row.size()) != total + 1) {
      throw InvalidInput("xprime_from_g: table row has wrong length");
    }
    const T size(static_cast<long>(inst.a[i]));
    auto& xp = out.xprime[i];
    T running = 0;  // a_i * xprime_i(b)
    for (std::int64_t b = 1; b <= total; ++b) {
      running += row[static_cast<std::size_t>(b - 1)];
      if (b - 1 - inst.a[i] >= 0) running -= row[static_cast<std::size_t>(b - 1 - inst.a[i])];
      T v = running;
      v /= size;
      xp[static_cast<std::size_t>(b)] = std::move(v);
    }
  }
  std::vector<T> d;
  for (const auto& dj : inst.d) d.push_back(from_rational<T>(dj));
  const T delta = from_rational<T>(inst.delta);
  std::vector<T> values(static_cast<std::size_t>(total + 1), T(0));
  for (std::int64_t b = 1; b <= total; ++b) {
    const auto bi = static_cast<std::size_t>(b);
    T slope = -delta;
    for (std::size_t i = 0; i < n; ++i) slope += d[i] * out.xprime[i][bi];
    values[bi] = values[bi - 1] + slope;
  }
  out.fhat = PiecewiseLinear<T>::on_integers(std::move(values));
  return out;
}

/// Maximizes f_hat over [b_lo, b_hi].
template <class T>
SolveResult<T> solve_from_increments(const ExpectedIncrements<T>& inc, const Instance& inst) {
  const T lo = from_rational<T>(inst.b_lo);
  const T hi = from_rational<T>(inst.b_hi);
  auto best = maximize(inc.fhat, lo, hi);
  SolveResult<T> out{std::move(best.argmax), std::move(best.value), inc.fhat, "", {}};
  return out;
}

}  // namespace sbk::dp
