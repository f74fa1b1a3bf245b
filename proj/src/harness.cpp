#include "sbk/harness.hpp"

#include <cmath>
#include <numeric>

#include "sbk/certain.hpp"
#include "sbk/dp_finite.hpp"
#include "sbk/dp_uniform.hpp"
#include "sbk/errors.hpp"
#include "sbk/oracles.hpp"

namespace sbk::harness {

std::string to_string(ReductionVariant v) {
  return v == ReductionVariant::finite ? "finite" : "continuous";
}

ReductionVariant parse_variant(const std::string& text) {
  if (text == "finite") return ReductionVariant::finite;
  if (text == "continuous") return ReductionVariant::continuous;
  throw ParseError("unknown reduction variant '" + text + "' (expected finite or continuous)");
}

ReductionInstance build_reduction(const std::vector<std::int64_t>& a_star, std::int64_t b_star,
                                  const Rational& tau, ReductionVariant variant) {
  if (a_star.empty()) throw InvalidInput("reduction: a_star must be nonempty");
  for (auto v : a_star) {
    if (v < 1) throw InvalidInput("reduction: a_star entries must be positive");
  }
  const std::int64_t total = std::accumulate(a_star.begin(), a_star.end(), std::int64_t{0});
  if (b_star < 0 || b_star >= total) {
    throw InvalidInput("reduction: need 0 <= b_star < sum(a_star) = " + std::to_string(total));
  }
  if (tau < -1 || tau > 1) throw InvalidInput("reduction: tau must lie in [-1, 1]");

  ReductionInstance red;
  red.a_star = a_star;
  red.b_star = b_star;
  red.tau = tau;
  red.variant = variant;

  Instance& inst = red.built;
  inst.a = a_star;
  inst.a.push_back(total);
  for (auto v : a_star) inst.d.push_back((1 + tau) * v);
  inst.d.push_back((tau - 1) * total);
  inst.delta = 0;
  inst.b_lo = 0;
  inst.b_hi = total;

  if (variant == ReductionVariant::finite) {
    red.eps = ratio(1, 2 * total);
    for (std::size_t i = 0; i < inst.a.size(); ++i) {
      inst.dists.emplace_back(FinitePmf{{red.eps, Rational(1)}, {ratio(1, 2), ratio(1, 2)}});
    }
  } else {
    red.eps = ratio(1, 1'000'000'000);
    for (auto v : a_star) {
      inst.dists.emplace_back(UniformInterval{ratio(v, 2 * total), ratio(3 * v, 2 * total)});
    }
    inst.dists.emplace_back(UniformInterval{1 - red.eps, 1 + red.eps});
  }
  require_valid(inst);
  return red;
}

SlopeReport check_slope_identity(const ReductionInstance& red) {
  SlopeReport rep;
  rep.variant = red.variant;
  rep.true_count = oracles::count_knapsack(red.a_star, red.b_star);
  const auto m = static_cast<int>(red.a_star.size());

  if (red.variant == ReductionVariant::finite) {
    const auto result = dp::solve_dp_finite(red.built);
    const auto vals = result.profile.sample_integers(red.b_star, red.b_star + 1);
    const Rational slope = vals[1] - vals[0];
    mpz_class two_m;
    mpz_ui_pow_ui(two_m.get_mpz_t(), 2, static_cast<unsigned long>(m));
    const Rational expected = 1 + red.tau - ratio(mpz_class(rep.true_count), two_m);
    const Rational recovered = Rational(two_m) * (1 + red.tau - slope);
    rep.exact_slope = slope;
    rep.exact_expected_slope = expected;
    rep.slope = to_double(slope);
    rep.expected_slope = to_double(expected);
    rep.recovered_count = to_double(recovered);
    rep.pass = slope == expected && recovered == Rational(mpz_class(rep.true_count));
    return rep;
  }

  const auto trace = dp::trace_dp_uniform(red.built);
  const auto& ys = trace.increments.fhat.values();
  const auto bi = static_cast<std::size_t>(red.b_star);
  const double slope = ys[bi + 1] - ys[bi];
  const double half_pow = std::ldexp(1.0, m - 1);
  const double tau = to_double(red.tau);
  rep.slope = slope;
  rep.expected_slope = 1 + tau - static_cast<double>(rep.true_count) / half_pow;
  rep.recovered_count = half_pow * (1 + tau - slope);
  rep.pass = std::abs(rep.slope - rep.expected_slope) <= 1e-4 &&
             std::llround(rep.recovered_count) == static_cast<long long>(rep.true_count);
  return rep;
}

Rational prob_all_preferred(const ReductionInstance& red) {
  if (red.variant != ReductionVariant::finite) {
    throw DistributionMismatch("prob_all_preferred: finite variant only");
  }
  if (red.a_star.size() > 19) throw ResourceLimit("prob_all_preferred: at most 19 base items");
  const auto& inst = red.built;
  const std::size_t last = inst.size() - 1;
  const auto support = oracles::product_expand(inst);
  Rational p = 0;
  for (const auto& s : support.scenarios) {
    bool all = true;
    for (std::size_t i = 0; i < last && all; ++i) {
      all = certain::prefers<Rational>(inst.a, s.c, i, last);
    }
    if (all) p += s.p;
  }
  return p;
}

}  // namespace sbk::harness
