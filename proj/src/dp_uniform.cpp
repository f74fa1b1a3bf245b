#include "sbk/dp_uniform.hpp"

#include <algorithm>
#include <chrono>

namespace sbk::dp {
namespace {

const UniformInterval& uniform_of(const Instance& inst, std::size_t i) {
  return std::get<UniformInterval>(inst.dists[i]);
}

Rational positive_part(const Rational& q) { return q > 0 ? q : Rational(0); }

// One recursion step with a preference probability linear in t:
// h'[b] = (alpha + beta t) h[b - size] + (keep_alpha - beta t) h[b].
void add_ramp_item(std::vector<Polynomial<double>>& h, double alpha, double keep_alpha,
                   double beta, std::int64_t size) {
  const auto old_size = h.size();
  const auto shift = static_cast<std::size_t>(size);
  h.resize(old_size + shift);
  for (std::size_t b = h.size(); b-- > 0;) {
    Polynomial<double> v;
    if (b < old_size) v = h[b].times_linear(keep_alpha, -beta);
    if (b >= shift) v += h[b - shift].times_linear(alpha, beta);
    h[b] = std::move(v);
  }
}

void add_sure_item(std::vector<Polynomial<double>>& h, std::int64_t size) {
  const auto shift = static_cast<std::size_t>(size);
  h.insert(h.begin(), shift, Polynomial<double>());
}

}  // namespace

BreakpointGrid breakpoint_grid(const Instance& inst) {
  require_all_uniform(inst, "dp-uniform");
  BreakpointGrid grid;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto& u = uniform_of(inst, i);
    grid.v.push_back(positive_part(u.lo / inst.a[i]));
    grid.v.push_back(positive_part(u.hi / inst.a[i]));
  }
  std::sort(grid.v.begin(), grid.v.end());
  grid.v.erase(std::unique(grid.v.begin(), grid.v.end()), grid.v.end());
  return grid;
}

PiecewisePolynomial<Rational> exceed_prob_pwl(const Instance& inst, std::size_t j, std::size_t i) {
  require_all_uniform(inst, "dp-uniform");
  if (i == j) throw InvalidInput("exceed_prob_pwl: needs two different items");
  const auto& u = uniform_of(inst, j);
  const Rational width = u.hi - u.lo;
  if (width <= 0) throw InvalidInput("exceed_prob_pwl: zero-width interval");
  const Rational scale(inst.a[i], inst.a[j]);  // a_i / a_j
  std::vector<Rational> cuts{scale * u.lo, scale * u.hi};
  const Rational slope = -ratio(inst.a[j], inst.a[i]) / width;
  const Rational offset = u.hi / width;
  std::vector<Polynomial<Rational>> pieces{Polynomial<Rational>::constant(1),
                                           Polynomial<Rational>::linear(offset, slope),
                                           Polynomial<Rational>()};
  return PiecewisePolynomial<Rational>(std::move(cuts), std::move(pieces));
}

double IntervalTable::evaluate(std::int64_t b, double gamma) const {
  if (b < 0 || b >= static_cast<std::int64_t>(h.size())) return 0.0;
  const double l = to_double(lo);
  const double t = (gamma - l) / (to_double(hi) - l);
  return h[static_cast<std::size_t>(b)](t);
}

std::vector<IntervalTable> h_tables_pwp(const Instance& inst, std::size_t i) {
  const auto grid = breakpoint_grid(inst);
  const std::size_t n = inst.size();
  const auto& ui = uniform_of(inst, i);
  const Rational supp_lo = positive_part(ui.lo);
  const Rational& supp_hi = ui.hi;

  std::vector<IntervalTable> out;
  for (std::size_t k = 0; k + 1 < grid.v.size(); ++k) {
    const Rational lo = grid.v[k] * inst.a[i];
    const Rational hi = grid.v[k + 1] * inst.a[i];
    if (lo < supp_lo || supp_hi < hi) continue;
    const Rational mid = (lo + hi) / 2;
    const Rational span_len = hi - lo;

    IntervalTable table{lo, hi, {Polynomial<double>::constant(1.0)}};
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const auto& uj = uniform_of(inst, j);
      const Rational scale(inst.a[i], inst.a[j]);
      if (mid <= scale * uj.lo) {
        add_sure_item(table.h, inst.a[j]);
      } else if (mid < scale * uj.hi) {
        // p(gamma) = (c_j^+ - (a_j/a_i) gamma) / w_j with gamma = lo + span t.
        const Rational width = uj.hi - uj.lo;
        const Rational inv_scale(inst.a[j], inst.a[i]);
        const Rational alpha = (uj.hi - inv_scale * lo) / width;
        const Rational beta = -inv_scale * span_len / width;
        add_ramp_item(table.h, to_double(alpha), to_double(Rational(1 - alpha)),
                      to_double(beta), inst.a[j]);
      }
    }
    out.push_back(std::move(table));
  }
  return out;
}

GTable<double> g_table_uniform(const Instance& inst) {
  require_all_uniform(inst, "dp-uniform");
  const std::size_t n = inst.size();
  auto g = GTable<double>::zeros(n, inst.total_size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ui = uniform_of(inst, i);
    const Rational width = ui.hi - ui.lo;
    for (const auto& table : h_tables_pwp(inst, i)) {
      const double weight = to_double(Rational((table.hi - table.lo) / width));
      auto& row = g.g[i];
      for (std::size_t b = 0; b < table.h.size() && b < row.size(); ++b) {
        row[b] += weight * table.h[b].integrate_unit();
      }
    }
  }
  return g;
}

UniformDpTrace trace_dp_uniform(const Instance& inst) {
  require_valid(inst);
  UniformDpTrace trace;
  trace.g = g_table_uniform(inst);
  trace.increments = xprime_from_g(trace.g, inst);
  return trace;
}

SolveResult<double> solve_dp_uniform(const Instance& inst) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(inst);
  const auto g = g_table_uniform(inst);
  const auto inc = xprime_from_g(g, inst);
  auto out = solve_from_increments(inc, inst);
  out.method = "dp-uniform";
  out.stats.counters["grid_points"] = breakpoint_grid(inst).v.size();
  out.stats.counters["table_entries"] = inst.size() * static_cast<std::size_t>(inst.total_size() + 1);
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sbk::dp
