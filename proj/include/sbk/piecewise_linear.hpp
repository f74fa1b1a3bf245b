#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sbk/errors.hpp"

namespace sbk {

/// Continuous piecewise linear function given by its vertices.
///
/// Works with both exact (Rational) and floating scalars. Breakpoints are
/// strictly increasing; between them the function is linear, so no jumps can
/// be represented. Slopes follow the left-derivative convention.
template <class T>
class PiecewiseLinear {
 public:
  PiecewiseLinear() = default;

  PiecewiseLinear(std::vector<T> breakpoints, std::vector<T> values)
      : x_(std::move(breakpoints)), y_(std::move(values)) {
    if (x_.empty() || x_.size() != y_.size()) {
      throw InvalidInput("piecewise linear: need matching, nonempty breakpoints and values");
    }
    for (std::size_t k = 1; k < x_.size(); ++k) {
      if (!(x_[k - 1] < x_[k])) {
        throw InvalidInput("piecewise linear: breakpoints must be strictly increasing");
      }
    }
  }

  /// Function sampled at b = 0, 1, ..., values.size() - 1.
  static PiecewiseLinear on_integers(std::vector<T> values) {
    std::vector<T> x(values.size());
    for (std::size_t b = 0; b < x.size(); ++b) x[b] = T(static_cast<long>(b));
    return PiecewiseLinear(std::move(x), std::move(values));
  }

  const std::vector<T>& breakpoints() const { return x_; }
  const std::vector<T>& values() const { return y_; }
  std::size_t size() const { return x_.size(); }
  const T& lower() const { return x_.front(); }
  const T& upper() const { return x_.back(); }

  T operator()(const T& t) const {
    if (t < lower() || upper() < t) throw InvalidInput("piecewise linear: argument outside domain");
    auto it = std::lower_bound(x_.begin(), x_.end(), t);
    const auto k = static_cast<std::size_t>(it - x_.begin());
    if (x_[k] == t) return y_[k];
    return interpolate(k, t);
  }

  /// Slope of piece k, i.e. on [x_{k-1}, x_k], for k in 1..size()-1.
  T piece_slope(std::size_t k) const {
    T s = y_[k] - y_[k - 1];
    s /= (x_[k] - x_[k - 1]);
    return s;
  }

  /// Left derivative at t (t strictly above the lower end of the domain).
  T left_slope(const T& t) const {
    if (!(lower() < t) || upper() < t) {
      throw InvalidInput("piecewise linear: left slope needs t in (lower, upper]");
    }
    auto it = std::lower_bound(x_.begin(), x_.end(), t);
    return piece_slope(static_cast<std::size_t>(it - x_.begin()));
  }

  /// Values at the integers lo, lo+1, ..., hi by a single left-to-right sweep.
  std::vector<T> sample_integers(std::int64_t lo, std::int64_t hi) const {
    std::vector<T> out;
    out.reserve(static_cast<std::size_t>(std::max<std::int64_t>(hi - lo + 1, 0)));
    std::size_t k = 0;
    for (std::int64_t b = lo; b <= hi; ++b) {
      const T t(static_cast<long>(b));
      if (t < lower() || upper() < t) {
        throw InvalidInput("piecewise linear: sample outside domain");
      }
      while (x_[k] < t) ++k;
      out.push_back(x_[k] == t ? y_[k] : interpolate(k, t));
    }
    return out;
  }

 private:
  // Value at t with x_[k-1] < t < x_[k].
  T interpolate(std::size_t k, const T& t) const {
    T r = t - x_[k - 1];
    r *= (y_[k] - y_[k - 1]);
    r /= (x_[k] - x_[k - 1]);
    r += y_[k - 1];
    return r;
  }

  std::vector<T> x_;
  std::vector<T> y_;
};

template <class T>
struct WeightedTerm {
  T weight;
  const PiecewiseLinear<T>* function;
};

/// Sum of weighted piecewise linear functions over a common domain.
///
/// The result's breakpoints are the union of all input breakpoints. The sum is
/// assembled by sorting all vertices and sweeping left to right while tracking
/// the slope of the active pieces, which takes O(T log T) for T vertices.
template <class T>
PiecewiseLinear<T> weighted_sum(std::span<const WeightedTerm<T>> terms) {
  if (terms.empty()) throw InvalidInput("weighted sum: no terms");
  const T lo = terms.front().function->lower();
  const T hi = terms.front().function->upper();

  struct Event {
    T x;
    T slope_change;
  };
  std::vector<Event> events;
  T slope = 0;
  T value = 0;
  for (const auto& term : terms) {
    const auto& f = *term.function;
    if (f.lower() != lo || f.upper() != hi) {
      throw InvalidInput("weighted sum: terms are defined on different domains");
    }
    value += term.weight * f.values().front();
    if (f.size() < 2) continue;
    T prev = f.piece_slope(1);
    slope += term.weight * prev;
    for (std::size_t k = 1; k + 1 < f.size(); ++k) {
      T next = f.piece_slope(k + 1);
      T change = next - prev;
      change *= term.weight;
      events.push_back(Event{f.breakpoints()[k], std::move(change)});
      prev = std::move(next);
    }
  }
  std::sort(events.begin(), events.end(),
            [](const Event& l, const Event& r) { return l.x < r.x; });

  std::vector<T> xs{lo};
  std::vector<T> ys{value};
  T at = lo;
  for (std::size_t e = 0; e < events.size();) {
    const T& x = events[e].x;
    T step = x - at;
    step *= slope;
    value += step;
    xs.push_back(x);
    ys.push_back(value);
    at = x;
    for (; e < events.size() && events[e].x == x; ++e) slope += events[e].slope_change;
  }
  if (lo < hi) {
    T step = hi - at;
    step *= slope;
    value += step;
    xs.push_back(hi);
    ys.push_back(value);
  }
  return PiecewiseLinear<T>(std::move(xs), std::move(ys));
}

template <class T>
PiecewiseLinear<T> weighted_sum(const std::vector<WeightedTerm<T>>& terms) {
  return weighted_sum(std::span<const WeightedTerm<T>>(terms));
}

template <class T>
struct Maximum {
  T argmax;
  T value;
};

/// Maximizes f over [lo, hi] by checking lo, hi and every breakpoint strictly
/// between them. Ties go to the smallest abscissa.
template <class T>
Maximum<T> maximize(const PiecewiseLinear<T>& f, const T& lo, const T& hi) {
  if (hi < lo) throw InvalidInput("maximize: empty interval (lo > hi)");
  if (lo < f.lower() || f.upper() < hi) throw InvalidInput("maximize: interval outside domain");
  Maximum<T> best{lo, f(lo)};
  const auto& xs = f.breakpoints();
  auto first = std::upper_bound(xs.begin(), xs.end(), lo);
  for (auto it = first; it != xs.end() && *it < hi; ++it) {
    const T& v = f.values()[static_cast<std::size_t>(it - xs.begin())];
    if (best.value < v) best = Maximum<T>{*it, v};
  }
  if (lo < hi) {
    T v = f(hi);
    if (best.value < v) best = Maximum<T>{hi, std::move(v)};
  }
  return best;
}

}  // namespace sbk
