#include "sbk/dp_finite.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>

namespace sbk::dp {

ExceedTable::ExceedTable(const Instance& inst) {
  require_all_finite(inst, "dp-finite");
  const std::size_t n = inst.size();
  table_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pmf_i = std::get<FinitePmf>(inst.dists[i]);
    table_[i].assign(pmf_i.values.size(), std::vector<Rational>(n, Rational(0)));
    for (std::size_t k = 0; k < pmf_i.values.size(); ++k) {
      // Compare c_j^l a_i against c_i^k a_j.
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const auto& pmf_j = std::get<FinitePmf>(inst.dists[j]);
        const Rational threshold = pmf_i.values[k] * inst.a[j];
        Rational p = 0;
        for (std::size_t l = 0; l < pmf_j.values.size(); ++l) {
          const Rational lhs = pmf_j.values[l] * inst.a[i];
          if (lhs > threshold || (lhs == threshold && j < i)) p += pmf_j.probs[l];
        }
        table_[i][k][j] = std::move(p);
      }
    }
  }
}

GTable<Rational> g_table_finite(const Instance& inst, const ExceedTable& exceed,
                                std::size_t* htable_builds) {
  const std::size_t n = inst.size();
  auto g = GTable<Rational>::zeros(n, inst.total_size());
  std::size_t builds = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& pmf = std::get<FinitePmf>(inst.dists[i]);
    std::vector<std::size_t> order(pmf.values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return pmf.values[x] < pmf.values[y]; });

    // Exceed columns are monotone in the threshold, so equal columns are
    // adjacent in value order and the previous table can be reused.
    const std::vector<Rational>* last_column = nullptr;
    HTable<Rational> h;
    for (std::size_t k : order) {
      if (pmf.values[k] <= 0) continue;
      const auto& column = exceed.column(i, k);
      if (last_column == nullptr || *last_column != column) {
        h = HTable<Rational>::point_mass();
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) h.add_item(column[j], inst.a[j]);
        }
        last_column = &column;
        ++builds;
      }
      g.accumulate(i, pmf.probs[k], h);
    }
  }
  if (htable_builds != nullptr) *htable_builds = builds;
  return g;
}

FiniteDpTrace trace_dp_finite(const Instance& inst) {
  require_valid(inst);
  FiniteDpTrace trace;
  trace.exceed = ExceedTable(inst);
  trace.g = g_table_finite(inst, trace.exceed);
  trace.increments = xprime_from_g(trace.g, inst);
  return trace;
}

SolveResult<Rational> solve_dp_finite(const Instance& inst) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(inst);
  const ExceedTable exceed(inst);
  std::size_t builds = 0;
  const auto g = g_table_finite(inst, exceed, &builds);
  const auto inc = xprime_from_g(g, inst);
  auto out = solve_from_increments(inc, inst);
  out.method = "dp-finite";
  out.stats.counters["htable_builds"] = builds;
  out.stats.counters["table_entries"] = inst.size() * static_cast<std::size_t>(inst.total_size() + 1);
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sbk::dp
