#include "sbk/finite_support.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>

#include "sbk/certain.hpp"
#include "sbk/distributions.hpp"
#include "sbk/errors.hpp"
#include "sbk/rng.hpp"

namespace sbk {

void FiniteSupport::validate(std::size_t n) const {
  if (scenarios.empty()) throw InvalidInput("finite support: no scenarios");
  Rational total = 0;
  for (const auto& s : scenarios) {
    if (s.c.size() != n) throw InvalidInput("finite support: scenario has wrong length");
    if (s.p <= 0) throw InvalidInput("finite support: scenario probability must be positive");
    total += s.p;
  }
  if (total != 1) throw InvalidInput("finite support: probabilities sum to " + to_string(total));
}

FiniteSupport FiniteSupport::merged() const {
  std::map<std::vector<Rational>, Rational> acc;
  for (const auto& s : scenarios) {
    auto [it, inserted] = acc.try_emplace(s.c, s.p);
    if (!inserted) it->second += s.p;
  }
  FiniteSupport out;
  out.scenarios.reserve(acc.size());
  for (auto& [c, p] : acc) out.scenarios.push_back(Scenario{c, p});
  return out;
}

ScenarioSampler componentwise_sampler(const Instance& inst) {
  struct Component {
    const FinitePmf* pmf = nullptr;
    std::vector<Rational> sorted_values;
    std::vector<double> cumulative;
    OracleDistribution oracle;
  };
  auto components = std::make_shared<std::vector<Component>>();
  for (const auto& dist : inst.dists) {
    Component comp;
    if (const auto* pmf = std::get_if<FinitePmf>(&dist)) {
      std::vector<std::size_t> order(pmf->values.size());
      for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
      std::sort(order.begin(), order.end(),
                [&](std::size_t x, std::size_t y) { return pmf->values[x] < pmf->values[y]; });
      Rational running = 0;
      for (std::size_t k : order) {
        running += pmf->probs[k];
        comp.sorted_values.push_back(pmf->values[k]);
        comp.cumulative.push_back(to_double(running));
      }
      comp.cumulative.back() = 1.0;
      comp.pmf = pmf;
    } else {
      comp.oracle = as_oracle(dist);
    }
    components->push_back(std::move(comp));
  }
  return [components](std::uint64_t seed, std::uint64_t index) {
    const CounterRng rng(seed, index);
    std::vector<Rational> c;
    c.reserve(components->size());
    for (std::size_t i = 0; i < components->size(); ++i) {
      const auto& comp = (*components)[i];
      const double u = rng.uniform(i);
      if (comp.pmf != nullptr) {
        auto it = std::lower_bound(comp.cumulative.begin(), comp.cumulative.end(), u);
        const auto k = std::min<std::size_t>(
            static_cast<std::size_t>(it - comp.cumulative.begin()), comp.sorted_values.size() - 1);
        c.push_back(comp.sorted_values[k]);
      } else {
        c.emplace_back(comp.oracle.quantile(u));
      }
    }
    return c;
  };
}

namespace {

PiecewiseLinear<Rational> merged_objective(const Instance& inst, const FiniteSupport& merged) {
  const auto data = certain::leader_data<Rational>(inst);
  std::vector<PiecewiseLinear<Rational>> profiles;
  profiles.reserve(merged.scenarios.size());
  for (const auto& s : merged.scenarios) {
    profiles.push_back(certain::leader_objective<Rational>(data, std::span<const Rational>(s.c)));
  }
  std::vector<WeightedTerm<Rational>> terms;
  terms.reserve(profiles.size());
  for (std::size_t k = 0; k < profiles.size(); ++k) {
    terms.push_back(WeightedTerm<Rational>{merged.scenarios[k].p, &profiles[k]});
  }
  return weighted_sum(terms);
}

}  // namespace

PiecewiseLinear<Rational> expected_objective(const Instance& inst, const FiniteSupport& support) {
  support.validate(inst.size());
  return merged_objective(inst, support.merged());
}

SolveResult<Rational> solve_finite_support(const Instance& inst, const FiniteSupport& support) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(inst);
  support.validate(inst.size());
  const FiniteSupport merged = support.merged();
  auto profile = merged_objective(inst, merged);
  auto best = maximize(profile, inst.b_lo, inst.b_hi);
  SolveResult<Rational> out{std::move(best.argmax), std::move(best.value), std::move(profile),
                            "finite-support", {}};
  out.stats.counters["scenarios"] = merged.scenarios.size();
  out.stats.counters["input_scenarios"] = support.scenarios.size();
  out.stats.counters["breakpoints"] = out.profile.size();
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

SolveResult<Rational> solve_saa(const Instance& inst, const ScenarioSampler& sampler,
                                std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw InvalidInput("saa: need at least one sample");
  const auto start = std::chrono::steady_clock::now();
  FiniteSupport support;
  support.scenarios.reserve(samples);
  const Rational weight(1, static_cast<unsigned long>(samples));
  for (std::size_t k = 0; k < samples; ++k) {
    auto c = sampler(seed, k);
    if (c.size() != inst.size()) throw InvalidInput("saa: sampler returned wrong length");
    support.scenarios.push_back(Scenario{std::move(c), weight});
  }
  auto out = solve_finite_support(inst, support);
  out.method = "saa";
  out.stats.counters["samples"] = samples;
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sbk
