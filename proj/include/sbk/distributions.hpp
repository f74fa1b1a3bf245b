#pragma once

#include <cstddef>

#include "sbk/model.hpp"

namespace sbk {

/// Exponential distribution with the given rate.
OracleDistribution make_exponential(double rate);

/// Normal distribution. The CDF goes through erfc; the quantile uses a
/// rational initial approximation refined by one Halley step (|error| well
/// below 1e-12 on (1e-300, 1 - 1e-16)).
OracleDistribution make_normal(double mean, double stddev);

/// Builds a built-in oracle family by name: "exp" {rate}, "normal" {mean, sd}.
OracleDistribution make_builtin_oracle(const std::string& name,
                                       const std::map<std::string, double>& params);

/// F(t) = P(c <= t) in double precision for any representation.
double cdf(const ItemDistribution& dist, double t);

/// Generalized inverse Q(p) = inf{t : p <= F(t)} for p in (0, 1).
double quantile(const ItemDistribution& dist, double p);

/// Wraps any representation as a CDF/quantile pair. Finite and uniform
/// components keep their exact behaviour, only evaluated in doubles.
OracleDistribution as_oracle(const ItemDistribution& dist);

/// P(c > 0), exact for finite and uniform components.
Rational prob_positive_exact(const ItemDistribution& dist);
double prob_positive(const ItemDistribution& dist);

}  // namespace sbk
