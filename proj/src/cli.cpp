#include "sbk/cli.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>

#include "CLI11.hpp"

#include "sbk/approx.hpp"
#include "sbk/certain.hpp"
#include "sbk/dp_finite.hpp"
#include "sbk/dp_uniform.hpp"
#include "sbk/errors.hpp"
#include "sbk/finite_support.hpp"
#include "sbk/harness.hpp"
#include "sbk/io.hpp"
#include "sbk/oracles.hpp"

namespace sbk::cli {
namespace {

struct SolveArgs {
  std::string instance;
  std::string method;
  std::string c;
  std::string support;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double epsilon = 0.1;
  std::uint64_t memory_cap = std::uint64_t{1} << 30;
  std::string profile_out;
  bool json = false;
  bool timing = false;
};

struct OracleArgs {
  std::string method;
  std::string instance;
  std::size_t samples = 10000;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string a_star;
  std::int64_t b_star = 0;
};

struct HarnessArgs {
  std::string a_star;
  std::int64_t b_star = 0;
  std::string tau = "0";
  std::string variant = "finite";
  bool json = false;
};

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

// Prints violations; returns true when at least one is an error.
bool report_violations(const Instance& inst, std::ostream& err) {
  const auto violations = validate(inst);
  for (const auto& v : violations) {
    err << (v.severity == Severity::error ? "error: " : "warning: ") << v.message << '\n';
  }
  return has_errors(violations);
}

template <class T>
void write_profile(const SolveArgs& args, const SolveResult<T>& r) {
  if (args.profile_out.empty()) return;
  std::ofstream file(args.profile_out);
  if (!file) throw ParseError("cannot write '" + args.profile_out + "'");
  io::write_profile_csv(file, r.profile);
  if (!file) throw ParseError("cannot write '" + args.profile_out + "'");
}

void print_result(const SolveArgs& args, const SolveResult<Rational>& r, std::ostream& out) {
  write_profile(args, r);
  if (args.json) {
    out << io::dump(io::result_to_json(r, args.timing));
    return;
  }
  out << "method: " << r.method << '\n'
      << "b_star: " << to_string(r.b_star) << " (" << g12(to_double(r.b_star)) << ")\n"
      << "value: " << to_string(r.value) << " (" << g12(to_double(r.value)) << ")\n";
  if (args.timing) out << "wall_seconds: " << r.stats.wall_seconds << '\n';
}

void print_result(const SolveArgs& args, const SolveResult<double>& r, std::ostream& out) {
  write_profile(args, r);
  if (args.json) {
    out << io::dump(io::result_to_json(r, args.timing));
    return;
  }
  out << "method: " << r.method << '\n'
      << "b_star: " << g12(r.b_star) << '\n'
      << "value: " << g12(r.value) << '\n';
  if (args.timing) out << "wall_seconds: " << r.stats.wall_seconds << '\n';
}

int run_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  const Instance inst = io::read_instance(args.instance);
  if (report_violations(inst, err)) return kInvalid;
  const auto& m = args.method;
  if (m == "certain") {
    if (args.c.empty()) throw InvalidInput("--method certain needs --c");
    const auto c = io::parse_rational_list(args.c);
    if (c.size() != inst.size()) {
      throw InvalidInput("--c has " + std::to_string(c.size()) + " entries, instance has " +
                         std::to_string(inst.size()) + " items");
    }
    print_result(args, certain::solve_certain(inst, c), out);
  } else if (m == "finite-support") {
    if (args.support.empty()) throw InvalidInput("--method finite-support needs --support");
    print_result(args, solve_finite_support(inst, io::read_support(args.support)), out);
  } else if (m == "saa") {
    print_result(args, solve_saa(inst, componentwise_sampler(inst), args.samples, args.seed), out);
  } else if (m == "dp-finite") {
    print_result(args, dp::solve_dp_finite(inst), out);
  } else if (m == "dp-uniform") {
    print_result(args, dp::solve_dp_uniform(inst), out);
  } else if (m == "approx") {
    print_result(args, approx::solve_approx(inst, {args.epsilon, args.memory_cap}), out);
  } else {
    throw InvalidInput("unknown method '" + m + "'");
  }
  return kOk;
}

int run_oracle(const OracleArgs& args, std::ostream& out, std::ostream& err) {
  if (args.method == "count") {
    if (args.a_star.empty()) throw InvalidInput("--method count needs --a-star");
    const auto a = io::parse_int_list(args.a_star);
    out << io::dump({{"count", oracles::count_knapsack(a, args.b_star)}});
    return kOk;
  }
  if (args.instance.empty()) throw InvalidInput("--method " + args.method + " needs --instance");
  const Instance inst = io::read_instance(args.instance);
  if (report_violations(inst, err)) return kInvalid;
  if (args.method == "perm") {
    const auto terms = oracles::permutation_terms(inst);
    std::vector<Rational> values(static_cast<std::size_t>(inst.total_size() + 1), Rational(0));
    for (const auto& t : terms) {
      const auto& ys = t.objective.values();
      for (std::size_t b = 0; b < values.size(); ++b) values[b] += t.probability * ys[b];
    }
    io::json profile = io::json::array();
    for (const auto& v : values) profile.push_back(to_string(v));
    out << io::dump({{"terms", terms.size()}, {"profile", profile}});
  } else if (args.method == "product") {
    out << io::dump(io::support_to_json(oracles::product_expand(inst)));
  } else if (args.method == "mc") {
    out << io::dump(io::monte_carlo_to_json(
        oracles::monte_carlo_fhat(inst, args.samples, args.seed, args.threads)));
  } else {
    throw InvalidInput("unknown oracle method '" + args.method + "'");
  }
  return kOk;
}

int run_harness(const HarnessArgs& args, std::ostream& out) {
  const auto red = harness::build_reduction(io::parse_int_list(args.a_star), args.b_star,
                                            parse_rational(args.tau),
                                            harness::parse_variant(args.variant));
  const auto rep = harness::check_slope_identity(red);
  if (args.json) {
    io::json j{{"variant", harness::to_string(rep.variant)},
               {"true_count", rep.true_count},
               {"slope", rep.slope},
               {"expected_slope", rep.expected_slope},
               {"recovered_count", rep.recovered_count},
               {"pass", rep.pass}};
    if (rep.exact_slope) j["slope_exact"] = to_string(*rep.exact_slope);
    if (rep.exact_expected_slope) j["expected_slope_exact"] = to_string(*rep.exact_expected_slope);
    out << io::dump(j);
  } else {
    out << "variant: " << harness::to_string(rep.variant) << '\n'
        << "count: " << rep.true_count << '\n'
        << "slope: " << (rep.exact_slope ? to_string(*rep.exact_slope) : g12(rep.slope)) << '\n'
        << "expected: "
        << (rep.exact_expected_slope ? to_string(*rep.exact_expected_slope) : g12(rep.expected_slope))
        << '\n'
        << "recovered_count: " << g12(rep.recovered_count) << '\n'
        << (rep.pass ? "pass" : "FAIL") << '\n';
  }
  return rep.pass ? kOk : kCheckFailed;
}

int run_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  const Instance inst = io::read_instance(path);
  if (report_violations(inst, err)) return kInvalid;
  out << "ok\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic bilevel continuous knapsack solver"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Optimize the leader's capacity");
  solve_cmd->add_option("--instance", solve.instance, "Instance JSON file")->required();
  solve_cmd->add_option("--method", solve.method, "Solver")
      ->required()
      ->check(CLI::IsMember(
          {"certain", "finite-support", "saa", "dp-finite", "dp-uniform", "approx"}));
  solve_cmd->add_option("--c", solve.c, "Comma-separated follower values (certain)");
  solve_cmd->add_option("--support", solve.support, "Scenario JSON file (finite-support)");
  solve_cmd->add_option("--samples", solve.samples, "Sample count (saa)")->check(CLI::PositiveNumber);
  solve_cmd->add_option("--seed", solve.seed, "Random seed (saa)");
  solve_cmd->add_option("--epsilon", solve.epsilon, "Additive error target (approx)");
  solve_cmd->add_option("--memory-cap", solve.memory_cap, "Table size limit in bytes (approx)");
  solve_cmd->add_option("--profile-out", solve.profile_out, "Write f_hat at integer b as CSV");
  solve_cmd->add_flag("--json", solve.json, "Emit the result as JSON");
  solve_cmd->add_flag("--stats", solve.timing, "Include wall-clock time");

  OracleArgs oracle;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force reference computations");
  oracle_cmd->add_option("--method", oracle.method, "Oracle")
      ->required()
      ->check(CLI::IsMember({"perm", "product", "mc", "count"}));
  oracle_cmd->add_option("--instance", oracle.instance, "Instance JSON file");
  oracle_cmd->add_option("--samples", oracle.samples, "Sample count (mc)")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--seed", oracle.seed, "Random seed (mc)");
  oracle_cmd->add_option("--threads", oracle.threads, "Worker threads (mc)")->check(CLI::PositiveNumber);
  oracle_cmd->add_option("--a-star", oracle.a_star, "Comma-separated sizes (count)");
  oracle_cmd->add_option("--b-star", oracle.b_star, "Capacity (count)");

  HarnessArgs harness;
  auto* harness_cmd = app.add_subcommand("harness", "Check the slope identity on a counting reduction");
  harness_cmd->add_option("--a-star", harness.a_star, "Comma-separated base sizes")->required();
  harness_cmd->add_option("--b-star", harness.b_star, "Base capacity")->required();
  harness_cmd->add_option("--tau", harness.tau, "Shift parameter in [-1, 1]");
  harness_cmd->add_option("--variant", harness.variant, "finite or continuous")
      ->check(CLI::IsMember({"finite", "continuous"}));
  harness_cmd->add_flag("--json", harness.json, "Emit the report as JSON");

  std::string validate_path;
  auto* validate_cmd = app.add_subcommand("validate", "Check an instance file");
  validate_cmd->add_option("--instance", validate_path, "Instance JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalid;
  }

  try {
    if (*solve_cmd) return run_solve(solve, out, err);
    if (*oracle_cmd) return run_oracle(oracle, out, err);
    if (*harness_cmd) return run_harness(harness, out);
    return run_validate(validate_path, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const io::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const DistributionMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kMismatch;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
}

}  // namespace sbk::cli
