#include "sbk/approx.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>
#include <utility>

#include "sbk/distributions.hpp"
#include "sbk/errors.hpp"

namespace sbk::approx {
namespace {

struct ScaledPoint {
  double value;
  std::size_t j;
};

// Positive thresholds (a_i/a_j) tilde_c[j][k] for j != i, sorted by value.
std::vector<ScaledPoint> scaled_points(const Instance& inst, const QuantileDiscretization& disc,
                                       std::size_t i) {
  std::vector<ScaledPoint> pts;
  for (std::size_t j = 0; j < inst.size(); ++j) {
    if (j == i) continue;
    const double scale = static_cast<double>(inst.a[i]) / static_cast<double>(inst.a[j]);
    for (double c : disc.tilde_c[j]) {
      const double v = scale * c;
      if (v > 0) pts.push_back({v, j});
    }
  }
  std::sort(pts.begin(), pts.end(),
            [](const ScaledPoint& x, const ScaledPoint& y) { return x.value < y.value; });
  return pts;
}

}  // namespace

std::size_t granularity(const Instance& inst, double eps) {
  if (!(eps > 0) || !std::isfinite(eps)) throw InvalidInput("approx: eps must be a positive number");
  const double n = static_cast<double>(inst.size());
  const double raw = std::ceil((n - 1) * static_cast<double>(inst.total_size()) *
                              to_double(inst.leader_weight()) / eps);
  if (!(raw < 1e15)) throw ResourceLimit("approx: granularity m = " + std::to_string(raw) + " is too large");
  return std::max<std::size_t>(1, static_cast<std::size_t>(raw));
}

double round_cdf(double F, std::size_t m) {
  const double md = static_cast<double>(m);
  return std::clamp(std::floor(F * md + 0.5) / md, 0.0, 1.0);
}

double tilde_cdf(const ItemDistribution& dist, std::size_t m, double t) {
  if (m < 1) throw InvalidInput("tilde_cdf: m must be >= 1");
  return round_cdf(cdf(dist, t), m);
}

std::uint64_t predicted_bytes(const Instance& inst, std::size_t m) {
  const long double n = static_cast<long double>(inst.size());
  const long double md = static_cast<long double>(m);
  const long double bytes =
      8.0L * (n * md + n * (n - 1) * md + 2 * n * static_cast<long double>(inst.total_size() + 1));
  if (bytes > 1.8e19L) return UINT64_MAX;
  return static_cast<std::uint64_t>(bytes);
}

QuantileDiscretization discretize(const Instance& inst, double eps) {
  QuantileDiscretization disc;
  disc.eps = eps;
  disc.m = granularity(inst, eps);
  const std::size_t n = inst.size();
  const double md = static_cast<double>(disc.m);
  disc.tilde_c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = disc.tilde_c[i];
    row.resize(disc.m);
    for (std::size_t k = 0; k < disc.m; ++k) {
      row[k] = quantile(inst.dists[i], (static_cast<double>(k) + 0.5) / md);
    }
    if (!std::is_sorted(row.begin(), row.end())) {
      throw InvalidInput("approx: quantile oracle of item " + std::to_string(i) + " is not monotone");
    }
  }
  disc.J.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : scaled_points(inst, disc, i)) {
      if (disc.J[i].empty() || disc.J[i].back() != p.value) disc.J[i].push_back(p.value);
    }
  }
  return disc;
}

dp::GTable<double> g_table_approx(const Instance& inst, const QuantileDiscretization& disc) {
  const std::size_t n = inst.size();
  const double md = static_cast<double>(disc.m);
  auto g = dp::GTable<double>::zeros(n, inst.total_size());
  for (std::size_t i = 0; i < n; ++i) {
    const auto pts = scaled_points(inst, disc, i);
    // count[j] = #{k : (a_i/a_j) tilde_c[j][k] > gamma} for gamma in the current interval.
    std::vector<std::size_t> count(n, 0);
    for (const auto& p : pts) ++count[p.j];

    double F_left = cdf(inst.dists[i], 0.0);
    std::size_t next = 0;
    while (true) {
      const bool last = next == pts.size();
      const double right = last ? 0.0 : pts[next].value;
      const double F_right = last ? 1.0 : cdf(inst.dists[i], right);
      const double weight = F_right - F_left;
      if (weight > 0) {
        auto h = dp::HTable<double>::point_mass();
        for (std::size_t j = 0; j < n; ++j) {
          if (j != i) h.add_item(static_cast<double>(count[j]) / md, inst.a[j]);
        }
        g.accumulate(i, weight, h);
      }
      if (last) break;
      while (next < pts.size() && pts[next].value == right) --count[pts[next++].j];
      F_left = F_right;
    }
  }
  return g;
}

SolveResult<double> solve_approx(const Instance& inst, const ApproxOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(inst);
  if (!(options.eps > 0) || !std::isfinite(options.eps)) {
    throw InvalidInput("approx: eps must be a positive number");
  }
  dp::GTable<double> g;
  std::size_t m = 0;
  std::size_t breakpoints = 0;
  if (inst.leader_weight() == 0) {
    g = dp::GTable<double>::zeros(inst.size(), inst.total_size());
  } else {
    m = granularity(inst, options.eps);
    const auto bytes = predicted_bytes(inst, m);
    if (bytes > options.memory_cap_bytes) {
      throw ResourceLimit("approx: predicted table size " + std::to_string(bytes) +
                          " bytes exceeds the memory cap of " +
                          std::to_string(options.memory_cap_bytes) + " bytes (m = " +
                          std::to_string(m) + ")");
    }
    const auto disc = discretize(inst, options.eps);
    for (const auto& Ji : disc.J) breakpoints += Ji.size();
    g = g_table_approx(inst, disc);
  }
  const auto inc = dp::xprime_from_g(g, inst);
  auto out = dp::solve_from_increments(inc, inst);
  out.method = "approx";
  out.stats.counters["granularity"] = m;
  out.stats.counters["breakpoints"] = breakpoints;
  out.stats.counters["predicted_bytes"] = m == 0 ? 0 : predicted_bytes(inst, m);
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sbk::approx
