#include "sbk/certain.hpp"

#include <chrono>

namespace sbk::certain {

std::vector<Rational> follower_solve(const Instance& inst, std::span<const Rational> c,
                                     const Rational& b) {
  const Rational total(inst.total_size());
  if (b < 0 || total < b) throw InvalidInput("follower_solve: capacity outside [0, A]");
  const auto order = follower_ordering<Rational>(inst.a, c);
  std::vector<Rational> x(inst.size(), Rational(0));
  Rational remaining = b;
  for (std::size_t k = 0; k < order.n_pos && remaining > 0; ++k) {
    const std::size_t i = order.perm[k];
    const Rational size(inst.a[i]);
    if (remaining >= size) {
      x[i] = 1;
      remaining -= size;
    } else {
      x[i] = remaining / size;
      remaining = 0;
    }
  }
  return x;
}

PiecewiseLinear<Rational> leader_objective(const Instance& inst, std::span<const Rational> c) {
  return leader_objective(leader_data<Rational>(inst), c);
}

SolveResult<Rational> solve_certain(const Instance& inst, std::span<const Rational> c) {
  const auto start = std::chrono::steady_clock::now();
  require_valid(inst);
  auto profile = leader_objective(inst, c);
  auto best = maximize(profile, inst.b_lo, inst.b_hi);
  SolveResult<Rational> out{std::move(best.argmax), std::move(best.value), std::move(profile),
                            "certain", {}};
  out.stats.counters["breakpoints"] = out.profile.size();
  out.stats.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace sbk::certain
