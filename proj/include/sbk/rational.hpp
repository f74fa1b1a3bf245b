#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>

namespace sbk {

/// Exact rational scalar used on every exact solver path.
using Rational = mpq_class;

/// num / den in lowest terms. den != 0.
inline Rational ratio(const mpz_class& num, const mpz_class& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "p/q", integers, and decimal literals ("1.25", "-3e-2") exactly.
/// Throws ParseError on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Exact rational of the shortest decimal string that round-trips `value`,
/// so 0.3 becomes 3/10 rather than the binary expansion of the double.
Rational rational_from_double(double value);

/// Canonical rendering: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// Converts instance data (always rational) to the scalar of a solver path.
template <class T>
T from_rational(const Rational& q) {
  if constexpr (std::is_same_v<T, Rational>) {
    return q;
  } else {
    return static_cast<T>(to_double(q));
  }
}

}  // namespace sbk
