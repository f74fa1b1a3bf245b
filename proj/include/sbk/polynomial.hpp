#pragma once

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "sbk/errors.hpp"

namespace sbk {

/// Dense univariate polynomial in the monomial basis, coefficient k on t^k.
/// Trailing zero coefficients are always trimmed.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coefficients) : c_(std::move(coefficients)) { trim(); }

  static Polynomial constant(const T& value) { return Polynomial(std::vector<T>{value}); }
  /// alpha + beta * t
  static Polynomial linear(const T& alpha, const T& beta) {
    return Polynomial(std::vector<T>{alpha, beta});
  }

  const std::vector<T>& coefficients() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree after trimming; the zero polynomial reports 0.
  std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }

  T coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }

  T operator()(const T& t) const {
    T acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
      acc *= t;
      acc += *it;
    }
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }

  Polynomial& operator*=(const T& s) {
    for (auto& ck : c_) ck *= s;
    trim();
    return *this;
  }

  friend Polynomial operator+(Polynomial l, const Polynomial& r) { return l += r; }
  friend Polynomial operator-(Polynomial l, const Polynomial& r) { return l -= r; }
  friend Polynomial operator*(Polynomial l, const T& s) { return l *= s; }

  friend Polynomial operator*(const Polynomial& l, const Polynomial& r) {
    if (l.is_zero() || r.is_zero()) return Polynomial();
    std::vector<T> out(l.c_.size() + r.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < l.c_.size(); ++i) {
      for (std::size_t j = 0; j < r.c_.size(); ++j) out[i + j] += l.c_[i] * r.c_[j];
    }
    return Polynomial(std::move(out));
  }

  /// (alpha + beta t) * this, in O(degree).
  Polynomial times_linear(const T& alpha, const T& beta) const {
    if (is_zero()) return Polynomial();
    std::vector<T> out(c_.size() + 1, T(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      out[k] += alpha * c_[k];
      out[k + 1] += beta * c_[k];
    }
    return Polynomial(std::move(out));
  }

  /// Antiderivative with zero constant term.
  Polynomial antiderivative() const {
    if (is_zero()) return Polynomial();
    std::vector<T> out(c_.size() + 1, T(0));
    for (std::size_t k = 0; k < c_.size(); ++k) {
      T v = c_[k];
      v /= T(static_cast<long>(k + 1));
      out[k + 1] = std::move(v);
    }
    return Polynomial(std::move(out));
  }

  T integrate(const T& lo, const T& hi) const {
    const Polynomial anti = antiderivative();
    return anti(hi) - anti(lo);
  }

  /// Integral over [0, 1], i.e. sum of c_k / (k + 1).
  T integrate_unit() const {
    T acc = 0;
    for (std::size_t k = 0; k < c_.size(); ++k) {
      T v = c_[k];
      v /= T(static_cast<long>(k + 1));
      acc += v;
    }
    return acc;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T(0)) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Piecewise polynomial on the real line. Piece k covers (cut_{k-1}, cut_k],
/// with the first piece unbounded to the left and the last to the right.
template <class T>
class PiecewisePolynomial {
 public:
  PiecewisePolynomial() : pieces_(1) {}

  PiecewisePolynomial(std::vector<T> cuts, std::vector<Polynomial<T>> pieces)
      : cuts_(std::move(cuts)), pieces_(std::move(pieces)) {
    if (pieces_.size() != cuts_.size() + 1) {
      throw InvalidInput("piecewise polynomial: need one more piece than cut points");
    }
    for (std::size_t k = 1; k < cuts_.size(); ++k) {
      if (!(cuts_[k - 1] < cuts_[k])) {
        throw InvalidInput("piecewise polynomial: cut points must be strictly increasing");
      }
    }
  }

  const std::vector<T>& cuts() const { return cuts_; }
  const std::vector<Polynomial<T>>& pieces() const { return pieces_; }

  /// Index of the piece containing t under the left-open, right-closed rule.
  std::size_t piece_index(const T& t) const {
    return static_cast<std::size_t>(std::lower_bound(cuts_.begin(), cuts_.end(), t) -
                                    cuts_.begin());
  }

  T operator()(const T& t) const { return pieces_[piece_index(t)](t); }

 private:
  std::vector<T> cuts_;
  std::vector<Polynomial<T>> pieces_;
};

}  // namespace sbk
