#include "sbk/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <thread>
#include <utility>

#include "sbk/certain.hpp"
#include "sbk/distributions.hpp"
#include "sbk/errors.hpp"
#include "sbk/polynomial.hpp"
#include "sbk/rng.hpp"

namespace sbk::oracles {
namespace {

constexpr std::size_t kMaxPermutationItems = 8;
constexpr std::size_t kBlock = 4096;

// Leader objective of a packing order at b = 0..A, evaluated item by item.
std::vector<Rational> order_objective(const Instance& inst, const std::vector<std::size_t>& perm,
                                      std::size_t n_pos) {
  const std::int64_t total = inst.total_size();
  std::vector<Rational> out(static_cast<std::size_t>(total + 1));
  for (std::int64_t b = 0; b <= total; ++b) {
    Rational v = -inst.delta * b;
    std::int64_t before = 0;
    for (std::size_t l = 0; l < n_pos; ++l) {
      const std::size_t j = perm[l];
      const std::int64_t room = b - before;
      if (room <= 0) break;
      if (room >= inst.a[j]) {
        v += inst.d[j];
      } else {
        v += inst.d[j] * ratio(room, inst.a[j]);
      }
      before += inst.a[j];
    }
    out[static_cast<std::size_t>(b)] = std::move(v);
  }
  return out;
}

// Positive items by decreasing ratio (lower index on ties), then the rest by index.
std::pair<std::vector<std::size_t>, std::size_t> packing_order(const Instance& inst,
                                                               const std::vector<Rational>& c) {
  std::vector<std::size_t> pos;
  std::vector<std::size_t> rest;
  for (std::size_t i = 0; i < c.size(); ++i) (c[i] > 0 ? pos : rest).push_back(i);
  std::vector<Rational> per_size(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) per_size[i] = c[i] / inst.a[i];
  std::stable_sort(pos.begin(), pos.end(),
                   [&](std::size_t i, std::size_t j) { return per_size[i] > per_size[j]; });
  const std::size_t n_pos = pos.size();
  pos.insert(pos.end(), rest.begin(), rest.end());
  return {std::move(pos), n_pos};
}

std::vector<PermutationTerm> finite_terms(const Instance& inst) {
  const std::size_t n = inst.size();
  std::vector<const FinitePmf*> pmf(n);
  for (std::size_t i = 0; i < n; ++i) pmf[i] = &std::get<FinitePmf>(inst.dists[i]);

  std::map<std::pair<std::vector<std::size_t>, std::size_t>, Rational> acc;
  std::vector<std::size_t> idx(n, 0);
  std::vector<Rational> c(n);
  while (true) {
    Rational p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = pmf[i]->values[idx[i]];
      p *= pmf[i]->probs[idx[i]];
    }
    acc[packing_order(inst, c)] += p;
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == pmf[pos]->values.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  std::vector<PermutationTerm> out;
  for (auto& [key, p] : acc) {
    out.push_back({key.first, key.second, p,
                   PiecewiseLinear<Rational>::on_integers(order_objective(inst, key.first, key.second))});
  }
  return out;
}

// Tail functions T(x) = P(r_{pi_1} > ... > r_{pi_k} > x) on the cells of a
// common grid 0 = v_0 < ... < v_last, one polynomial in x per cell; T = 0 past v_last.
struct UniformOrderIntegrator {
  const Instance& inst;
  std::vector<Rational> grid;
  std::vector<Rational> ratio_lo;
  std::vector<Rational> ratio_hi;

  explicit UniformOrderIntegrator(const Instance& instance) : inst(instance) {
    grid.push_back(0);
    for (std::size_t i = 0; i < inst.size(); ++i) {
      const auto& u = std::get<UniformInterval>(inst.dists[i]);
      ratio_lo.push_back(u.lo / inst.a[i]);
      ratio_hi.push_back(u.hi / inst.a[i]);
      if (ratio_lo.back() > 0) grid.push_back(ratio_lo.back());
      if (ratio_hi.back() > 0) grid.push_back(ratio_hi.back());
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  }

  std::size_t cells() const { return grid.size() - 1; }

  std::vector<Polynomial<Rational>> one() const {
    return std::vector<Polynomial<Rational>>(cells(), Polynomial<Rational>::constant(1));
  }

  // T_next(x) = integral from x to infinity of dens_j(y) T(y) dy.
  std::vector<Polynomial<Rational>> extend(const std::vector<Polynomial<Rational>>& T,
                                           std::size_t j) const {
    std::vector<Polynomial<Rational>> out(cells());
    const Rational density = Rational(1) / (ratio_hi[j] - ratio_lo[j]);
    Rational above = 0;  // T_next at the right end of the current cell
    for (std::size_t s = cells(); s-- > 0;) {
      const Rational mid = (grid[s] + grid[s + 1]) / 2;
      if (mid <= ratio_lo[j] || ratio_hi[j] <= mid || T[s].is_zero()) {
        out[s] = Polynomial<Rational>::constant(above);
        continue;
      }
      Polynomial<Rational> anti = (T[s] * density).antiderivative();
      const Rational at_right = anti(grid[s + 1]);
      // above + anti(v_{s+1}) - anti(x)
      Polynomial<Rational> piece = Polynomial<Rational>::constant(above + at_right);
      piece -= anti;
      above = piece(grid[s]);
      out[s] = std::move(piece);
    }
    return out;
  }

  Rational at_zero(const std::vector<Polynomial<Rational>>& T) const {
    return cells() == 0 ? Rational(0) : T[0](grid[0]);
  }

  Rational prob_nonpositive(std::size_t j) const {
    if (ratio_hi[j] <= 0) return 1;
    if (ratio_lo[j] >= 0) return 0;
    return -ratio_lo[j] / (ratio_hi[j] - ratio_lo[j]);
  }
};

void uniform_dfs(const Instance& inst, const UniformOrderIntegrator& integ,
                 std::vector<std::size_t>& prefix, std::vector<bool>& used,
                 const std::vector<Polynomial<Rational>>& T, const Rational& prefix_prob,
                 std::vector<PermutationTerm>& out) {
  Rational p = prefix_prob;
  std::vector<std::size_t> perm = prefix;
  for (std::size_t j = 0; j < inst.size() && p != 0; ++j) {
    if (used[j]) continue;
    p *= integ.prob_nonpositive(j);
    perm.push_back(j);
  }
  if (p != 0) {
    out.push_back({perm, prefix.size(), p,
                   PiecewiseLinear<Rational>::on_integers(order_objective(inst, perm, prefix.size()))});
  }
  for (std::size_t j = 0; j < inst.size(); ++j) {
    if (used[j]) continue;
    auto next = integ.extend(T, j);
    const Rational q = integ.at_zero(next);
    if (q == 0) continue;
    used[j] = true;
    prefix.push_back(j);
    uniform_dfs(inst, integ, prefix, used, next, q, out);
    prefix.pop_back();
    used[j] = false;
  }
}

std::vector<PermutationTerm> uniform_terms(const Instance& inst) {
  const UniformOrderIntegrator integ(inst);
  std::vector<PermutationTerm> out;
  std::vector<std::size_t> prefix;
  std::vector<bool> used(inst.size(), false);
  uniform_dfs(inst, integ, prefix, used, integ.one(), Rational(1), out);
  return out;
}

struct BlockStats {
  std::size_t count = 0;
  std::vector<double> mean;
  std::vector<double> m2;
};

BlockStats run_block(const Instance& inst, const certain::LeaderData<double>& data,
                     const std::vector<CounterRng>& rngs, std::size_t begin, std::size_t end) {
  const std::int64_t total = inst.total_size();
  BlockStats s;
  s.mean.assign(static_cast<std::size_t>(total + 1), 0.0);
  s.m2.assign(s.mean.size(), 0.0);
  std::vector<double> c(inst.size());
  for (std::size_t idx = begin; idx < end; ++idx) {
    for (std::size_t j = 0; j < inst.size(); ++j) c[j] = quantile(inst.dists[j], rngs[j].uniform(idx));
    const auto f = certain::leader_objective<double>(data, std::span<const double>(c));
    const auto vals = f.sample_integers(0, total);
    ++s.count;
    const double inv = 1.0 / static_cast<double>(s.count);
    for (std::size_t b = 0; b < vals.size(); ++b) {
      const double delta = vals[b] - s.mean[b];
      s.mean[b] += delta * inv;
      s.m2[b] += delta * (vals[b] - s.mean[b]);
    }
  }
  return s;
}

}  // namespace

std::vector<PermutationTerm> permutation_terms(const Instance& inst) {
  require_valid(inst);
  if (inst.size() > kMaxPermutationItems) {
    throw InvalidInput("permutation oracle: n = " + std::to_string(inst.size()) +
                       " exceeds the limit of " + std::to_string(kMaxPermutationItems));
  }
  if (inst.all_finite()) {
    std::size_t product = 1;
    for (const auto& d : inst.dists) {
      product *= std::get<FinitePmf>(d).values.size();
      if (product > 1'000'000) throw ResourceLimit("permutation oracle: more than 10^6 realizations");
    }
    return finite_terms(inst);
  }
  if (inst.all_uniform()) return uniform_terms(inst);
  throw DistributionMismatch(
      "permutation oracle: needs all components finite or all continuous uniform");
}

PiecewiseLinear<Rational> permutation_expectation(const Instance& inst) {
  const auto terms = permutation_terms(inst);
  std::vector<Rational> values(static_cast<std::size_t>(inst.total_size() + 1), Rational(0));
  for (const auto& t : terms) {
    const auto& ys = t.objective.values();
    for (std::size_t b = 0; b < values.size(); ++b) values[b] += t.probability * ys[b];
  }
  return PiecewiseLinear<Rational>::on_integers(std::move(values));
}

FiniteSupport product_expand(const Instance& inst, std::size_t max_scenarios) {
  require_all_finite(inst, "product expansion");
  const std::size_t n = inst.size();
  std::vector<const FinitePmf*> pmf(n);
  std::size_t product = 1;
  for (std::size_t i = 0; i < n; ++i) {
    pmf[i] = &std::get<FinitePmf>(inst.dists[i]);
    product *= pmf[i]->values.size();
    if (product > max_scenarios) {
      throw ResourceLimit("product expansion: more than " + std::to_string(max_scenarios) +
                          " scenarios");
    }
  }
  FiniteSupport out;
  out.scenarios.reserve(product);
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    Scenario s;
    s.c.resize(n);
    s.p = 1;
    for (std::size_t i = 0; i < n; ++i) {
      s.c[i] = pmf[i]->values[idx[i]];
      s.p *= pmf[i]->probs[idx[i]];
    }
    out.scenarios.push_back(std::move(s));
    std::size_t pos = 0;
    while (pos < n && ++idx[pos] == pmf[pos]->values.size()) idx[pos++] = 0;
    if (pos == n) break;
  }
  return out;
}

MonteCarloEstimate monte_carlo_fhat(const Instance& inst, std::size_t samples, std::uint64_t seed,
                                    unsigned threads) {
  require_valid(inst);
  if (samples < 1) throw InvalidInput("monte carlo: need at least one sample");
  const auto data = certain::leader_data<double>(inst);
  std::vector<CounterRng> rngs;
  for (std::size_t j = 0; j < inst.size(); ++j) rngs.emplace_back(seed, j);

  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  std::vector<BlockStats> stats(blocks);
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(blocks)));
  auto work = [&](unsigned w) {
    for (std::size_t k = w; k < blocks; k += workers) {
      stats[k] = run_block(inst, data, rngs, k * kBlock, std::min(samples, (k + 1) * kBlock));
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  // Pairwise (Chan) merge in block order.
  BlockStats total = std::move(stats[0]);
  for (std::size_t k = 1; k < blocks; ++k) {
    const auto& s = stats[k];
    const double na = static_cast<double>(total.count);
    const double nb = static_cast<double>(s.count);
    const double nt = na + nb;
    for (std::size_t b = 0; b < total.mean.size(); ++b) {
      const double delta = s.mean[b] - total.mean[b];
      total.mean[b] += delta * nb / nt;
      total.m2[b] += s.m2[b] + delta * delta * na * nb / nt;
    }
    total.count += s.count;
  }
  MonteCarloEstimate out;
  out.samples = samples;
  out.mean = total.mean;
  out.std_error.assign(total.mean.size(), 0.0);
  if (samples > 1) {
    const double N = static_cast<double>(samples);
    for (std::size_t b = 0; b < out.mean.size(); ++b) {
      out.std_error[b] = std::sqrt(std::max(0.0, total.m2[b] / (N - 1)) / N);
    }
  }
  return out;
}

std::uint64_t count_knapsack(std::span<const std::int64_t> a_star, std::int64_t b_star) {
  if (a_star.size() > 63) throw InvalidInput("count_knapsack: at most 63 items");
  for (auto v : a_star) {
    if (v < 1) throw InvalidInput("count_knapsack: sizes must be positive");
  }
  if (b_star < 0) return 0;
  std::vector<std::uint64_t> ways(static_cast<std::size_t>(b_star + 1), 0);
  ways[0] = 1;
  for (auto v : a_star) {
    for (std::int64_t s = b_star; s >= v; --s) {
      ways[static_cast<std::size_t>(s)] += ways[static_cast<std::size_t>(s - v)];
    }
  }
  std::uint64_t count = 0;
  for (auto w : ways) count += w;
  return count;
}

}  // namespace sbk::oracles
