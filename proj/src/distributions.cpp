#include "sbk/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <utility>

#include "sbk/detail/overloaded.hpp"
#include "sbk/errors.hpp"

namespace sbk {
namespace {

using detail::overloaded;

// Acklam's rational approximation of the standard normal quantile.
double normal_quantile_initial(double p) {
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                 -2.759285104469687e+02, 1.383577518672690e+02,
                                 -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                 -1.556989798598866e+02, 6.680131188771972e+01,
                                 -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                 -2.400758277161838e+00, -2.549732539343734e+00,
                                 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                 2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;
  if (p < p_low) {
    const double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - p_low) {
    const double q = std::sqrt(-2 * std::log1p(-p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

double standard_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double standard_normal_quantile(double p) {
  if (p <= 0) return -INFINITY;
  if (p >= 1) return std::numeric_limits<double>::infinity();
  double x = normal_quantile_initial(p);
  // One Halley step against the erfc-based CDF.
  const double e = standard_normal_cdf(x) - p;
  const double u = e * std::sqrt(2 * std::numbers::pi) * std::exp(x * x / 2);
  x = x - u / (1 + x * u / 2);
  return x;
}

struct SortedPmf {
  std::vector<double> values;
  std::vector<double> cumulative;
};

SortedPmf sorted_pmf(const FinitePmf& pmf) {
  std::vector<std::size_t> order(pmf.values.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::sort(order.begin(), order.end(),
            [&](std::size_t x, std::size_t y) { return pmf.values[x] < pmf.values[y]; });
  SortedPmf out;
  Rational running = 0;
  for (std::size_t k : order) {
    running += pmf.probs[k];
    out.values.push_back(to_double(pmf.values[k]));
    out.cumulative.push_back(to_double(running));
  }
  if (!out.cumulative.empty()) out.cumulative.back() = 1.0;
  return out;
}

double pmf_cdf(const SortedPmf& pmf, double t) {
  auto it = std::upper_bound(pmf.values.begin(), pmf.values.end(), t);
  if (it == pmf.values.begin()) return 0.0;
  return pmf.cumulative[static_cast<std::size_t>(it - pmf.values.begin()) - 1];
}

double pmf_quantile(const SortedPmf& pmf, double p) {
  auto it = std::lower_bound(pmf.cumulative.begin(), pmf.cumulative.end(), p);
  if (it == pmf.cumulative.end()) return pmf.values.back();
  return pmf.values[static_cast<std::size_t>(it - pmf.cumulative.begin())];
}

double uniform_cdf(double lo, double hi, double t) {
  if (t <= lo) return 0.0;
  if (t >= hi) return 1.0;
  return (t - lo) / (hi - lo);
}

}  // namespace

OracleDistribution make_exponential(double rate) {
  if (!(rate > 0) || !std::isfinite(rate)) throw InvalidInput("exponential rate must be > 0");
  OracleDistribution out;
  out.name = "exp";
  out.params = {{"rate", rate}};
  out.cdf = [rate](double t) { return t <= 0 ? 0.0 : -std::expm1(-rate * t); };
  out.quantile = [rate](double p) {
    if (p <= 0) return 0.0;
    if (p >= 1) return std::numeric_limits<double>::infinity();
    return -std::log1p(-p) / rate;
  };
  return out;
}

OracleDistribution make_normal(double mean, double stddev) {
  if (!(stddev > 0) || !std::isfinite(stddev) || !std::isfinite(mean)) {
    throw InvalidInput("normal distribution needs finite mean and sd > 0");
  }
  OracleDistribution out;
  out.name = "normal";
  out.params = {{"mean", mean}, {"sd", stddev}};
  out.cdf = [mean, stddev](double t) { return standard_normal_cdf((t - mean) / stddev); };
  out.quantile = [mean, stddev](double p) {
    return mean + stddev * standard_normal_quantile(p);
  };
  return out;
}

OracleDistribution make_builtin_oracle(const std::string& name,
                                       const std::map<std::string, double>& params) {
  auto param = [&](const std::string& key, double fallback, bool required) {
    auto it = params.find(key);
    if (it == params.end()) {
      if (required) throw InvalidInput("builtin oracle '" + name + "' needs parameter " + key);
      return fallback;
    }
    return it->second;
  };
  if (name == "exp") return make_exponential(param("rate", 1.0, false));
  if (name == "normal") return make_normal(param("mean", 0.0, true), param("sd", 1.0, true));
  throw InvalidInput("unknown builtin oracle: " + name);
}

double cdf(const ItemDistribution& dist, double t) {
  return std::visit(
      overloaded{
          [t](const FinitePmf& pmf) { return pmf_cdf(sorted_pmf(pmf), t); },
          [t](const UniformInterval& u) {
            return uniform_cdf(to_double(u.lo), to_double(u.hi), t);
          },
          [t](const OracleDistribution& o) { return o.cdf(t); },
      },
      dist);
}

double quantile(const ItemDistribution& dist, double p) {
  return std::visit(
      overloaded{
          [p](const FinitePmf& pmf) { return pmf_quantile(sorted_pmf(pmf), p); },
          [p](const UniformInterval& u) {
            const double lo = to_double(u.lo);
            const double hi = to_double(u.hi);
            return lo + std::clamp(p, 0.0, 1.0) * (hi - lo);
          },
          [p](const OracleDistribution& o) { return o.quantile(p); },
      },
      dist);
}

OracleDistribution as_oracle(const ItemDistribution& dist) {
  return std::visit(
      overloaded{
          [](const FinitePmf& pmf) {
            auto table = std::make_shared<SortedPmf>(sorted_pmf(pmf));
            OracleDistribution out;
            out.name = "pmf";
            out.cdf = [table](double t) { return pmf_cdf(*table, t); };
            out.quantile = [table](double p) { return pmf_quantile(*table, p); };
            return out;
          },
          [](const UniformInterval& u) {
            const double lo = to_double(u.lo);
            const double hi = to_double(u.hi);
            OracleDistribution out;
            out.name = "uniform";
            out.params = {{"lo", lo}, {"hi", hi}};
            out.cdf = [lo, hi](double t) { return uniform_cdf(lo, hi, t); };
            out.quantile = [lo, hi](double p) { return lo + std::clamp(p, 0.0, 1.0) * (hi - lo); };
            return out;
          },
          [](const OracleDistribution& o) { return o; },
      },
      dist);
}

Rational prob_positive_exact(const ItemDistribution& dist) {
  return std::visit(overloaded{
                        [](const FinitePmf& pmf) {
                          Rational p = 0;
                          for (std::size_t k = 0; k < pmf.values.size(); ++k) {
                            if (pmf.values[k] > 0) p += pmf.probs[k];
                          }
                          return p;
                        },
                        [](const UniformInterval& u) {
                          if (u.hi <= 0) return Rational(0);
                          if (u.lo >= 0) return Rational(1);
                          return Rational(u.hi / (u.hi - u.lo));
                        },
                        [](const OracleDistribution& o) {
                          return rational_from_double(1.0 - o.cdf(0.0));
                        },
                    },
                    dist);
}

double prob_positive(const ItemDistribution& dist) {
  if (const auto* o = std::get_if<OracleDistribution>(&dist)) return 1.0 - o->cdf(0.0);
  return to_double(prob_positive_exact(dist));
}

}  // namespace sbk
