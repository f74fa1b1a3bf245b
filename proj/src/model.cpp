#include "sbk/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "sbk/detail/overloaded.hpp"
#include "sbk/errors.hpp"

namespace sbk {
namespace {

using detail::overloaded;

void add(std::vector<Violation>& out, ViolationKind kind, Severity severity,
         const std::string& message) {
  out.push_back(Violation{kind, severity, message});
}

std::string item(std::size_t i) { return "item " + std::to_string(i); }

void check_pmf(std::size_t i, const FinitePmf& pmf, std::vector<Violation>& out) {
  if (pmf.values.empty() || pmf.values.size() != pmf.probs.size()) {
    add(out, ViolationKind::pmf_shape, Severity::error,
        item(i) + ": pmf needs equally many (>= 1) values and probabilities");
    return;
  }
  Rational total = 0;
  for (std::size_t k = 0; k < pmf.probs.size(); ++k) {
    if (pmf.probs[k] <= 0) {
      add(out, ViolationKind::pmf_probability, Severity::error,
          item(i) + ": probability " + to_string(pmf.probs[k]) + " is not positive");
    }
    total += pmf.probs[k];
  }
  if (total != 1) {
    add(out, ViolationKind::pmf_normalization, Severity::error,
        item(i) + ": probabilities sum to " + to_string(total) + ", not 1");
  }
  std::vector<Rational> sorted = pmf.values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    add(out, ViolationKind::pmf_duplicate_value, Severity::error,
        item(i) + ": pmf values are not pairwise distinct");
  }
}

void check_oracle(std::size_t i, const OracleDistribution& dist, std::vector<Violation>& out) {
  if (!dist.cdf || !dist.quantile) {
    add(out, ViolationKind::oracle_shape, Severity::error,
        item(i) + ": oracle distribution lacks a cdf or quantile callable");
    return;
  }
  if (dist.cdf(-1e300) > 1e-12 || dist.cdf(1e300) < 1.0 - 1e-12) {
    add(out, ViolationKind::oracle_shape, Severity::error,
        item(i) + ": oracle cdf does not tend to 0 and 1");
  }
  double prev_t = -INFINITY;
  double prev_f = 0.0;
  for (int s = 1; s < 100; ++s) {
    const double p = s / 100.0;
    const double t = dist.quantile(p);
    const double f = dist.cdf(t);
    if (!std::isfinite(t) || t < prev_t || f < prev_f || f < p - 1e-9) {
      add(out, ViolationKind::oracle_shape, Severity::error,
          item(i) + ": oracle cdf/quantile pair is not monotone or not inverse at p=" +
              std::to_string(p));
      return;
    }
    prev_t = t;
    prev_f = f;
  }
}

struct Realization {
  Rational ratio;
  std::size_t item;
  std::size_t k;
};

void check_ties(const Instance& inst, std::vector<Violation>& out) {
  std::vector<Realization> all;
  for (std::size_t i = 0; i < inst.size(); ++i) {
    const auto* pmf = std::get_if<FinitePmf>(&inst.dists[i]);
    if (pmf == nullptr) continue;
    for (std::size_t k = 0; k < pmf->values.size(); ++k) {
      if (pmf->values[k] == 0) {
        add(out, ViolationKind::zero_profit, Severity::warning,
            item(i) + ": realization " + std::to_string(k) + " has value 0");
      }
      all.push_back({Rational(pmf->values[k] / inst.a[i]), i, k});
    }
  }
  std::stable_sort(all.begin(), all.end(),
                   [](const Realization& x, const Realization& y) { return x.ratio < y.ratio; });
  for (std::size_t lo = 0; lo < all.size();) {
    std::size_t hi = lo + 1;
    while (hi < all.size() && all[hi].ratio == all[lo].ratio) ++hi;
    for (std::size_t p = lo; p < hi; ++p) {
      for (std::size_t q = p + 1; q < hi; ++q) {
        const Realization* x = &all[p];
        const Realization* y = &all[q];
        if (x->item == y->item) continue;
        if (x->item > y->item) std::swap(x, y);
        std::ostringstream msg;
        msg << "profit tie: " << item(x->item) << " realization " << x->k << " and "
            << item(y->item) << " realization " << y->k << " both have c/a = "
            << to_string(x->ratio) << " (resolved by lower index)";
        add(out, ViolationKind::profit_tie, Severity::warning, msg.str());
      }
    }
    lo = hi;
  }
}

}  // namespace

std::string distribution_kind(const ItemDistribution& dist) {
  return std::visit(overloaded{[](const FinitePmf&) { return std::string("pmf"); },
                               [](const UniformInterval&) { return std::string("uniform"); },
                               [](const OracleDistribution&) {
                                 return std::string("builtin_oracle");
                               }},
                    dist);
}

std::int64_t Instance::total_size() const {
  return std::accumulate(a.begin(), a.end(), std::int64_t{0});
}

Rational Instance::leader_weight() const {
  Rational total = 0;
  for (const auto& dj : d) total += abs(dj);
  return total;
}

bool Instance::all_finite() const {
  return std::all_of(dists.begin(), dists.end(), [](const ItemDistribution& dist) {
    return std::holds_alternative<FinitePmf>(dist);
  });
}

bool Instance::all_uniform() const {
  return std::all_of(dists.begin(), dists.end(), [](const ItemDistribution& dist) {
    return std::holds_alternative<UniformInterval>(dist);
  });
}

std::vector<Violation> validate(const Instance& inst) {
  std::vector<Violation> out;
  const std::size_t n = inst.a.size();
  if (n == 0) {
    add(out, ViolationKind::item_count, Severity::error, "instance has no items");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (inst.a[i] < 1) {
      add(out, ViolationKind::item_size, Severity::error,
          item(i) + ": size " + std::to_string(inst.a[i]) + " is not a positive integer");
    }
  }
  if (inst.d.size() != n) {
    add(out, ViolationKind::vector_length, Severity::error,
        "d has " + std::to_string(inst.d.size()) + " entries, expected " + std::to_string(n));
  }
  if (inst.dists.size() != n) {
    add(out, ViolationKind::vector_length, Severity::error,
        "dists has " + std::to_string(inst.dists.size()) + " entries, expected " +
            std::to_string(n));
  }
  if (inst.delta < 0) {
    add(out, ViolationKind::capacity_cost, Severity::error, "delta must be nonnegative");
  }
  const Rational total(inst.total_size());
  if (!(0 <= inst.b_lo && inst.b_lo <= inst.b_hi && inst.b_hi <= total)) {
    add(out, ViolationKind::capacity_bounds, Severity::error,
        "capacity bounds must satisfy 0 <= b_lo <= b_hi <= A = " + to_string(total));
  }
  for (std::size_t i = 0; i < inst.dists.size(); ++i) {
    std::visit(overloaded{
                   [&](const FinitePmf& pmf) { check_pmf(i, pmf, out); },
                   [&](const UniformInterval& u) {
                     if (!(u.lo < u.hi)) {
                       add(out, ViolationKind::uniform_width, Severity::error,
                           item(i) + ": uniform interval needs lo < hi");
                     }
                   },
                   [&](const OracleDistribution& o) { check_oracle(i, o, out); },
               },
               inst.dists[i]);
  }
  if (!has_errors(out)) check_ties(inst, out);
  return out;
}

bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::error; });
}

void require_valid(const Instance& instance) {
  for (const auto& v : validate(instance)) {
    if (v.severity == Severity::error) throw InvalidInput(v.message);
  }
}

void require_all_finite(const Instance& instance, const std::string& method) {
  for (std::size_t i = 0; i < instance.dists.size(); ++i) {
    if (!std::holds_alternative<FinitePmf>(instance.dists[i])) {
      throw DistributionMismatch(method + " requires finite pmf components; item " +
                                 std::to_string(i) + " is " +
                                 distribution_kind(instance.dists[i]));
    }
  }
}

void require_all_uniform(const Instance& instance, const std::string& method) {
  for (std::size_t i = 0; i < instance.dists.size(); ++i) {
    if (!std::holds_alternative<UniformInterval>(instance.dists[i])) {
      throw DistributionMismatch(method + " requires uniform interval components; item " +
                                 std::to_string(i) + " is " +
                                 distribution_kind(instance.dists[i]));
    }
  }
}

}  // namespace sbk
