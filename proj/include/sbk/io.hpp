#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "sbk/finite_support.hpp"
#include "sbk/model.hpp"
#include "sbk/oracles.hpp"
#include "sbk/solve_result.hpp"

// Instance, support and result files. Every malformed document raises
// ParseError; semantic checks are left to validate().
namespace sbk::io {

using nlohmann::json;

/// Whole file as text; ParseError when it cannot be read.
std::string read_text_file(const std::string& path);

/// Number or "p/q" / decimal string, exactly.
Rational rational_from_json(const json& j);
/// Comma-separated rationals, e.g. "1,2/3,0.5".
std::vector<Rational> parse_rational_list(std::string_view text);
/// Comma-separated integers.
std::vector<std::int64_t> parse_int_list(std::string_view text);

Instance instance_from_json(const json& j);
json instance_to_json(const Instance& inst);
Instance read_instance(const std::string& path);

/// Support file: [{"c": [...], "p": "p/q"}, ...].
FiniteSupport support_from_json(const json& j);
json support_to_json(const FiniteSupport& support);
FiniteSupport read_support(const std::string& path);

/// Exact results carry rationals as strings plus "_float" approximations;
/// float results carry plain numbers. wall_seconds is included only when
/// `with_timing` is set, so default output is reproducible byte for byte.
json result_to_json(const SolveResult<Rational>& r, bool with_timing);
json result_to_json(const SolveResult<double>& r, bool with_timing);

json monte_carlo_to_json(const oracles::MonteCarloEstimate& est);

/// "b,fhat" header, then f_hat at b = 0..A with 12 significant digits.
void write_profile_csv(std::ostream& out, const PiecewiseLinear<Rational>& profile);
void write_profile_csv(std::ostream& out, const PiecewiseLinear<double>& profile);

/// Canonical text of a JSON document: two-space indent, keys sorted.
std::string dump(const json& j);

}  // namespace sbk::io
