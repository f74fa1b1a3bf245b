#include <chrono>
#include <cmath>
#include <random>

#include "catch_amalgamated.hpp"

#include "sbk/approx.hpp"
#include "sbk/distributions.hpp"
#include "sbk/dp_finite.hpp"
#include "sbk/dp_uniform.hpp"
#include "sbk/errors.hpp"
#include "sbk/oracles.hpp"
#include "support/generators.hpp"

using namespace sbk;
using Q = Rational;

namespace {

Instance exp_instance() {
  Instance inst;
  inst.a = {1, 2};
  inst.d = {Q(1), Q(2)};
  inst.delta = ratio(1, 2);
  inst.b_lo = 0;
  inst.b_hi = 3;
  inst.dists = {make_exponential(1.0), make_exponential(0.5)};
  return inst;
}

double seconds_min(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

}  // namespace

TEST_CASE("round_cdf rounds to the nearest multiple, ties up") {
  CHECK(approx::round_cdf(0.5, 5) == 0.6);
  CHECK(approx::round_cdf(0.3, 2) == 0.5);
  CHECK(approx::round_cdf(0.25, 2) == 0.5);
  CHECK(approx::round_cdf(0.24, 2) == 0.0);
  CHECK(approx::round_cdf(1.0, 7) == 1.0);
  CHECK(approx::round_cdf(0.0, 7) == 0.0);
  CHECK_THROWS_AS(approx::tilde_cdf(make_exponential(1.0), 0, 1.0), InvalidInput);
}

TEST_CASE("Exp(1) discretization error is at most 1/(2m)") {
  const ItemDistribution e = make_exponential(1.0);
  for (std::size_t m : {5u, 50u}) {
    const double lo = quantile(e, 1e-6);
    const double hi = quantile(e, 1 - 1e-6);
    double sup = 0;
    for (int k = 0; k < 10000; ++k) {
      const double t = lo + (hi - lo) * k / 9999.0;
      sup = std::max(sup, std::abs(cdf(e, t) - approx::tilde_cdf(e, m, t)));
    }
    CHECK(sup <= 1.0 / (2.0 * static_cast<double>(m)) + 1e-12);
  }
}

TEST_CASE("tilde_cdf is the CDF of the mid-quantile points") {
  const ItemDistribution e = make_exponential(1.0);
  const std::size_t m = 7;
  std::vector<double> pts;
  for (std::size_t k = 1; k <= m; ++k) pts.push_back(quantile(e, (k - 0.5) / m));
  for (double t : {0.01, 0.2, 0.5, 1.0, 2.0, 4.0}) {
    const double count = static_cast<double>(std::upper_bound(pts.begin(), pts.end(), t) - pts.begin());
    CHECK(approx::tilde_cdf(e, m, t) == count / m);
  }
}

TEST_CASE("granularity and discretization shape") {
  Instance inst = exp_instance();
  CHECK(approx::granularity(inst, 0.1) == 90);
  CHECK_THROWS_AS(approx::granularity(inst, 0.0), InvalidInput);
  CHECK_THROWS_AS(approx::granularity(inst, -1.0), InvalidInput);
  inst.a = {1};
  inst.d = {Q(1)};
  inst.dists.resize(1);
  inst.b_hi = 1;
  CHECK(approx::granularity(inst, 0.1) == 1);

  std::mt19937_64 rng(21);
  for (int rep = 0; rep < 30; ++rep) {
    const auto u = testing::random_uniform_instance(rng, {4, 15});
    const auto disc = approx::discretize(u, 0.5);
    for (std::size_t i = 0; i < u.size(); ++i) {
      CHECK(std::is_sorted(disc.tilde_c[i].begin(), disc.tilde_c[i].end()));
      CHECK(disc.J[i].size() <= (u.size() - 1) * disc.m);
      CHECK(std::adjacent_find(disc.J[i].begin(), disc.J[i].end(), std::greater_equal<>()) == disc.J[i].end());
      for (double j : disc.J[i]) CHECK(j > 0);
    }
  }
}

TEST_CASE("g table error bound and row mass on uniform instances") {
  std::mt19937_64 rng(22);
  for (int rep = 0; rep < 30; ++rep) {
    const auto inst = testing::random_uniform_instance(rng, {4, 15});
    if (inst.leader_weight() == 0) continue;
    const auto g = dp::g_table_uniform(inst);
    for (double eps : {0.5, 0.1}) {
      const auto disc = approx::discretize(inst, eps);
      const auto gt = approx::g_table_approx(inst, disc);
      const double bound = static_cast<double>(inst.size() - 1) / (2.0 * static_cast<double>(disc.m));
      for (std::size_t i = 0; i < inst.size(); ++i) {
        double mass = 0;
        for (std::size_t b = 0; b < gt.g[i].size(); ++b) {
          CHECK(std::abs(g.g[i][b] - gt.g[i][b]) <= bound + 1e-9);
          mass += gt.g[i][b];
        }
        CHECK(mass <= 1 + 1e-9);
      }
    }
  }
}

TEST_CASE("approximate optimum is eps-close on uniform instances") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const auto inst = testing::random_uniform_instance(rng, {4, 15});
    const auto exact = dp::solve_dp_uniform(inst);
    for (double eps : {0.5, 0.1}) {
      const auto r = approx::solve_approx(inst, {eps, std::uint64_t{1} << 30});
      CHECK(std::abs(exact.profile(r.b_star) - exact.value) <= eps + 1e-12);
      CHECK(std::abs(r.value - exact.value) <= eps + 1e-12);
      CHECK(r.method == "approx");
    }
  }
}

TEST_CASE("lossless discretization reproduces the finite DP") {
  // Two-point uniform pmfs and m = 8: each value keeps mass exactly 1/2.
  Instance inst;
  inst.a = {1, 2, 3};
  inst.d = {Q(1), Q(-1), Q(2)};
  inst.delta = ratio(1, 4);
  inst.b_lo = 0;
  inst.b_hi = 6;
  inst.dists = {FinitePmf{{Q(1), Q(5)}, {ratio(1, 2), ratio(1, 2)}},
                FinitePmf{{Q(-1), Q(3)}, {ratio(1, 2), ratio(1, 2)}},
                FinitePmf{{Q(2), Q(7)}, {ratio(1, 2), ratio(1, 2)}}};
  const double eps = 2.0 * 6.0 * 4.0 / 8.0;
  REQUIRE(approx::granularity(inst, eps) == 8);
  const auto r = approx::solve_approx(inst, {eps, std::uint64_t{1} << 30});
  const auto f = dp::solve_dp_finite(inst);
  for (int b = 0; b <= 6; ++b) CHECK(std::abs(r.profile(b) - to_double(f.profile(Q(b)))) <= 1e-12);
  CHECK(r.b_star == to_double(f.b_star));
}

TEST_CASE("zero leader weight is solved directly") {
  Instance inst = exp_instance();
  inst.d = {Q(0), Q(0)};
  const auto r = approx::solve_approx(inst, {1e-12, 1});
  CHECK(r.b_star == 0.0);
  CHECK(r.profile(3.0) == -1.5);
}

TEST_CASE("memory cap and eps are enforced") {
  const Instance inst = exp_instance();
  CHECK_THROWS_AS(approx::solve_approx(inst, {1e-9, std::uint64_t{1} << 30}), ResourceLimit);
  CHECK_THROWS_AS(approx::solve_approx(inst, {0.0, std::uint64_t{1} << 30}), InvalidInput);
  CHECK(approx::predicted_bytes(inst, 10) == 8u * (2 * 10 + 2 * 1 * 10 + 2 * 2 * 4));
}

TEST_CASE("exponential components against a Monte Carlo reference") {
  const Instance inst = exp_instance();
  const auto mc = oracles::monte_carlo_fhat(inst, 10'000'000, 2718, 1);
  std::vector<double> errors;
  for (double eps : {0.4, 0.2, 0.1}) {
    const auto r = approx::solve_approx(inst, {eps, std::uint64_t{1} << 30});
    double worst = 0;
    for (int b = 0; b <= 3; ++b) {
      const double err = std::abs(r.profile(b) - mc.mean[static_cast<std::size_t>(b)]);
      CHECK(err <= eps + 3 * mc.std_error[static_cast<std::size_t>(b)]);
      worst = std::max(worst, err);
    }
    errors.push_back(worst);
  }
  double se = 0;
  for (double s : mc.std_error) se = std::max(se, s);
  CHECK(errors.back() <= errors.front() + 3 * se);
}

TEST_CASE("running time is linear in 1/eps") {
  Instance inst;
  inst.a = {3, 5, 4, 6, 7, 5};
  inst.d = {Q(5), Q(-4), Q(6), Q(3), Q(-6), Q(6)};
  inst.delta = ratio(1, 2);
  inst.b_lo = 0;
  inst.b_hi = 30;
  for (int i = 0; i < 6; ++i) inst.dists.emplace_back(UniformInterval{ratio(-1 + i, 3), Q(4 + i)});
  std::vector<double> t;
  for (double eps : {0.4, 0.2, 0.1}) {
    t.push_back(seconds_min(3, [&] { approx::solve_approx(inst, {eps, std::uint64_t{1} << 32}); }));
  }
  for (std::size_t k = 1; k < t.size(); ++k) {
    INFO("ratio " << t[k] / t[k - 1]);
    CHECK(t[k] / t[k - 1] >= 2.0 / 1.5);
    CHECK(t[k] / t[k - 1] <= 2.0 * 1.5);
  }
}
