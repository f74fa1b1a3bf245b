#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"

#include "sbk/certain.hpp"
#include "sbk/distributions.hpp"
#include "sbk/dp_uniform.hpp"
#include "sbk/errors.hpp"
#include "sbk/oracles.hpp"
#include "support/generators.hpp"

using namespace sbk;
using Q = Rational;

namespace {

Instance uniform_instance(std::vector<std::int64_t> a, std::vector<UniformInterval> u) {
  Instance inst;
  inst.a = std::move(a);
  for (std::size_t i = 0; i < inst.a.size(); ++i) inst.d.emplace_back(1);
  inst.delta = 0;
  inst.b_lo = 0;
  inst.b_hi = inst.total_size();
  for (auto& x : u) inst.dists.emplace_back(std::move(x));
  return inst;
}

}  // namespace

TEST_CASE("breakpoint grid clamps at zero and merges duplicates") {
  const auto inst = uniform_instance({2, 1, 4}, {{Q(-1), Q(2)}, {ratio(1, 2), Q(1)}, {Q(2), Q(4)}});
  const auto grid = dp::breakpoint_grid(inst);
  CHECK(grid.v == std::vector<Q>{Q(0), ratio(1, 2), Q(1)});
}

TEST_CASE("exceed probability ramp") {
  const auto inst = uniform_instance({2, 3}, {{Q(1), Q(2)}, {Q(3), Q(6)}});
  // c_1 / 3 > gamma / 2  <=>  c_1 > 3 gamma / 2; cuts at 2 and 4.
  const auto p = dp::exceed_prob_pwl(inst, 1, 0);
  CHECK(p.cuts() == std::vector<Q>{Q(2), Q(4)});
  CHECK(p(Q(1)) == 1);
  CHECK(p(Q(2)) == 1);
  CHECK(p(Q(3)) == ratio(1, 2));
  CHECK(p(Q(4)) == 0);
  CHECK(p(Q(9)) == 0);
  CHECK_THROWS_AS(dp::exceed_prob_pwl(inst, 0, 0), InvalidInput);

  // Item with c ~ U[a/(2A'), 3a/(2A')] against threshold ratio 1/A'.
  const auto red = uniform_instance({3, 7}, {{ratio(3, 14), ratio(9, 14)}, {Q(1), Q(2)}});
  CHECK(dp::exceed_prob_pwl(red, 0, 1)(Q(7) / Q(7)) == ratio(1, 2));
}

TEST_CASE("interval tables for one and two items") {
  auto inst = uniform_instance({2}, {{Q(1), Q(2)}});
  auto tables = dp::h_tables_pwp(inst, 0);
  REQUIRE(tables.size() == 1);
  REQUIRE(tables[0].h.size() == 1);
  CHECK(tables[0].h[0].coefficients() == std::vector<double>{1.0});

  inst = uniform_instance({1, 1}, {{Q(0), Q(1)}, {Q(0), Q(1)}});
  tables = dp::h_tables_pwp(inst, 0);
  REQUIRE(tables.size() == 1);
  // Threshold gamma in (0, 1]: item 1 preferred with probability 1 - gamma.
  for (double gamma : {0.1, 0.5, 0.9}) {
    CHECK(tables[0].evaluate(1, gamma) == Catch::Approx(1 - gamma).margin(1e-15));
    CHECK(tables[0].evaluate(0, gamma) == Catch::Approx(gamma).margin(1e-15));
  }
}

TEST_CASE("interval tables sum to one and have degree below n") {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 60; ++rep) {
    const auto inst = testing::random_uniform_instance(rng);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      for (const auto& t : dp::h_tables_pwp(inst, i)) {
        Polynomial<double> sum;
        for (const auto& p : t.h) {
          CHECK(p.degree() + 1 <= inst.size());
          sum += p;
        }
        CHECK(std::abs(sum.coefficient(0) - 1.0) <= 1e-9);
        for (std::size_t k = 1; k < sum.coefficients().size(); ++k) CHECK(std::abs(sum.coefficient(k)) < 1e-9);
      }
    }
  }
}

TEST_CASE("g rows integrate to P(c > 0) and conserve capacity") {
  std::mt19937_64 rng(16);
  for (int rep = 0; rep < 60; ++rep) {
    const auto inst = testing::random_uniform_instance(rng);
    const auto trace = dp::trace_dp_uniform(inst);
    std::vector<double> p_pos;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      double mass = 0;
      for (double v : trace.g.g[i]) mass += v;
      p_pos.push_back(prob_positive(inst.dists[i]));
      CHECK(std::abs(mass - p_pos.back()) <= 1e-9);
    }
    std::vector<double> sizes{1.0};
    for (std::size_t j = 0; j < inst.size(); ++j) {
      std::vector<double> next(sizes.size() + static_cast<std::size_t>(inst.a[j]), 0.0);
      for (std::size_t s = 0; s < sizes.size(); ++s) {
        next[s] += (1 - p_pos[j]) * sizes[s];
        next[s + static_cast<std::size_t>(inst.a[j])] += p_pos[j] * sizes[s];
      }
      sizes = std::move(next);
    }
    for (std::int64_t b = 1; b <= inst.total_size(); ++b) {
      double lhs = 0;
      for (std::size_t i = 0; i < inst.size(); ++i) {
        lhs += static_cast<double>(inst.a[i]) * trace.increments.xprime[i][static_cast<std::size_t>(b)];
      }
      double tail = 0;
      for (std::size_t s = static_cast<std::size_t>(b); s < sizes.size(); ++s) tail += sizes[s];
      CHECK(std::abs(lhs - tail) <= 1e-8);
    }
  }
}

TEST_CASE("single always-profitable item") {
  auto inst = uniform_instance({2}, {{Q(1), Q(2)}});
  const auto r = dp::solve_dp_uniform(inst);
  CHECK(r.b_star == 2.0);
  for (int b = 0; b <= 2; ++b) CHECK(r.profile(b) == Catch::Approx(b / 2.0).margin(1e-15));
}

TEST_CASE("matches the exact order-integration oracle") {
  std::mt19937_64 rng(61);
  for (int rep = 0; rep < 40; ++rep) {
    const auto inst = testing::random_uniform_instance(rng);
    const auto r = dp::solve_dp_uniform(inst);
    const auto exact = oracles::permutation_expectation(inst);
    for (std::int64_t b = 0; b <= inst.total_size(); ++b) {
      CHECK(std::abs(r.profile(static_cast<double>(b)) - to_double(exact(Q(b)))) <= 1e-9);
    }
  }
}

TEST_CASE("narrow intervals approach the certain objective") {
  std::mt19937_64 rng(5);
  const Q h(1, 1000000);
  for (int rep = 0; rep < 20; ++rep) {
    const auto base = testing::random_uniform_instance(rng);
    Instance inst = base;
    std::vector<Q> c;
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const auto& u = std::get<UniformInterval>(base.dists[i]);
      // Midpoint plus an index-dependent offset keeps profits distinct.
      c.push_back((u.lo + u.hi) / 2 + ratio(static_cast<long>(i + 1), 1000));
      inst.dists[i] = UniformInterval{c.back() - h, c.back() + h};
    }
    bool generic = true;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) generic = false;
      for (std::size_t j = i + 1; j < c.size(); ++j) {
        if (c[i] * inst.a[j] == c[j] * inst.a[i]) generic = false;
      }
    }
    if (!generic) continue;
    const auto r = dp::solve_dp_uniform(inst);
    const auto f = certain::leader_objective(inst, c);
    double sup = 0;
    for (std::int64_t b = 0; b <= inst.total_size(); ++b) {
      sup = std::max(sup, std::abs(r.profile(static_cast<double>(b)) - to_double(f(Q(b)))));
    }
    CHECK(sup <= 1e-4);
  }
}

TEST_CASE("finite components are rejected") {
  Instance inst;
  inst.a = {1};
  inst.d = {Q(1)};
  inst.delta = 0;
  inst.b_lo = 0;
  inst.b_hi = 1;
  inst.dists = {FinitePmf{{Q(1)}, {Q(1)}}};
  CHECK_THROWS_AS(dp::solve_dp_uniform(inst), DistributionMismatch);
}
