#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"

#include "sbk/errors.hpp"
#include "sbk/piecewise_linear.hpp"
#include "sbk/polynomial.hpp"
#include "sbk/rational.hpp"

using namespace sbk;
using Q = Rational;

namespace {

PiecewiseLinear<Q> pwl(std::vector<Q> xs, std::vector<Q> ys) {
  return PiecewiseLinear<Q>(std::move(xs), std::move(ys));
}

PiecewiseLinear<double> random_pwl(std::mt19937_64& rng, int pieces, double hi) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> xs{0.0};
  // Interior breakpoints on a 1e-3 grid.
  for (int k = 1; k < pieces; ++k) {
    xs.push_back(std::round(1e3 * (hi * k / pieces + 0.3 * (u(rng) - 0.5) * hi / pieces)) / 1e3);
  }
  xs.push_back(hi);
  std::vector<double> ys;
  for (std::size_t k = 0; k < xs.size(); ++k) ys.push_back(4 * u(rng) - 2);
  return PiecewiseLinear<double>(xs, ys);
}

}  // namespace

TEST_CASE("construction rejects unsorted or mismatched breakpoints") {
  CHECK_THROWS_AS(pwl({Q(0), Q(0)}, {Q(1), Q(1)}), InvalidInput);
  CHECK_THROWS_AS(pwl({Q(0), Q(1)}, {Q(1)}), InvalidInput);
  CHECK_THROWS_AS(pwl({}, {}), InvalidInput);
}

TEST_CASE("evaluation interpolates and slopes are left slopes") {
  const auto f = pwl({Q(0), Q(2), Q(3)}, {Q(0), Q(4), Q(1)});
  CHECK(f(Q(1)) == Q(2));
  CHECK(f(ratio(5, 2)) == ratio(5, 2));
  CHECK(f.left_slope(Q(2)) == Q(2));
  CHECK(f.left_slope(ratio(5, 2)) == Q(-3));
  CHECK_THROWS_AS(f(Q(4)), InvalidInput);
  CHECK_THROWS_AS(f.left_slope(Q(0)), InvalidInput);
  const auto ints = f.sample_integers(0, 3);
  CHECK(ints == std::vector<Q>{Q(0), Q(2), Q(4), Q(1)});
}

TEST_CASE("weighted sum examples") {
  const auto f = pwl({Q(0), Q(1), Q(3)}, {Q(0), Q(2), Q(1)});
  const WeightedTerm<Q> single{Q(1), &f};
  const auto same = weighted_sum(std::vector<WeightedTerm<Q>>{single});
  CHECK(same.breakpoints() == f.breakpoints());
  CHECK(same.values() == f.values());

  const auto up = pwl({Q(0), Q(2)}, {Q(0), Q(2)});
  const auto down = pwl({Q(0), Q(2)}, {Q(0), Q(-2)});
  const auto zero = weighted_sum(std::vector<WeightedTerm<Q>>{{ratio(1, 2), &up}, {ratio(1, 2), &down}});
  for (const auto& y : zero.values()) CHECK(y == 0);

  const auto g = pwl({Q(0), Q(2), Q(3)}, {Q(1), Q(-1), Q(0)});
  const auto sum = weighted_sum(std::vector<WeightedTerm<Q>>{{Q(1), &f}, {Q(1), &g}});
  CHECK(sum.size() == 4);
  for (int b = 0; b <= 3; ++b) CHECK(sum(Q(b)) == f(Q(b)) + g(Q(b)));

  const auto other_domain = pwl({Q(0), Q(4)}, {Q(0), Q(0)});
  CHECK_THROWS_AS(weighted_sum(std::vector<WeightedTerm<Q>>{{Q(1), &f}, {Q(1), &other_domain}}),
                  InvalidInput);
}

TEST_CASE("weighted sum is linear") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 50; ++rep) {
    const auto f = random_pwl(rng, 6, 5.0);
    const auto g = random_pwl(rng, 4, 5.0);
    const double alpha = 3 * u(rng) - 1;
    const double beta = 3 * u(rng) - 1;
    const auto s = weighted_sum(std::vector<WeightedTerm<double>>{{alpha, &f}, {beta, &g}});
    for (int k = 0; k < 10; ++k) {
      const double t = 5.0 * u(rng);
      CHECK(std::abs(s(t) - (alpha * f(t) + beta * g(t))) <= 1e-12);
    }
  }
}

TEST_CASE("maximize examples") {
  const auto flat = pwl({Q(0), Q(3)}, {Q(0), Q(0)});
  auto m = maximize(flat, Q(0), Q(3));
  CHECK(m.argmax == 0);
  CHECK(m.value == 0);

  const auto tent = pwl({Q(0), Q(1), Q(3)}, {Q(0), Q(2), Q(0)});
  m = maximize(tent, Q(0), Q(3));
  CHECK(m.argmax == 1);
  CHECK(m.value == 2);

  m = maximize(tent, ratio(3, 2), ratio(5, 2));
  CHECK(m.argmax == ratio(3, 2));
  CHECK(m.value == ratio(3, 2));

  CHECK_THROWS_AS(maximize(tent, Q(2), Q(1)), InvalidInput);
  CHECK_THROWS_AS(maximize(tent, Q(-1), Q(1)), InvalidInput);
}

TEST_CASE("maximize agrees with a dense grid and dominates random points") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 30; ++rep) {
    const auto f = random_pwl(rng, 6, 5.0);
    const auto m = maximize(f, 0.5, 4.5);
    double grid_best = -1e300;
    for (int k = 500; k <= 4500; ++k) grid_best = std::max(grid_best, f(k / 1e3));
    CHECK(std::abs(m.value - grid_best) <= 1e-9);
    for (int k = 0; k < 100; ++k) CHECK(m.value >= f(0.5 + 4.0 * u(rng)) - 1e-12);
  }
}

TEST_CASE("polynomial arithmetic") {
  Polynomial<Q> p({Q(1), Q(-2), Q(0), Q(0)});
  CHECK(p.degree() == 1);
  CHECK(Polynomial<Q>().degree() == 0);
  CHECK(Polynomial<Q>().is_zero());
  const auto sq = p * p;  // 1 - 4t + 4t^2
  CHECK(sq.coefficient(2) == 4);
  CHECK(sq(ratio(1, 2)) == 0);
  CHECK(sq.integrate(Q(0), Q(1)) == ratio(1, 3));
  CHECK(sq.integrate_unit() == ratio(1, 3));
  CHECK((sq - sq).is_zero());
  CHECK(sq.antiderivative()(Q(1)) == ratio(1, 3));

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    Polynomial<double> r({u(rng), u(rng), u(rng), u(rng)});
    const double alpha = u(rng);
    const double beta = u(rng);
    const double t = u(rng);
    const double lhs = r.times_linear(alpha, beta)(t);
    const double rhs = r(t) * (alpha + beta * t);
    CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
  }
}

TEST_CASE("piecewise polynomial pieces are left-open, right-closed") {
  PiecewisePolynomial<Q> f({Q(1), Q(2)},
                           {Polynomial<Q>::constant(Q(1)), Polynomial<Q>::linear(Q(2), Q(-1)),
                            Polynomial<Q>()});
  CHECK(f(Q(1)) == 1);
  CHECK(f(ratio(3, 2)) == ratio(1, 2));
  CHECK(f(Q(2)) == 0);
  CHECK(f(Q(3)) == 0);
  CHECK(f.piece_index(Q(1)) == 0);
  CHECK(f.piece_index(Q(2)) == 1);
  CHECK_THROWS_AS(PiecewisePolynomial<Q>({Q(1)}, {Polynomial<Q>()}), InvalidInput);
}
