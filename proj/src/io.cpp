#include "sbk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sbk/distributions.hpp"
#include "sbk/errors.hpp"

namespace sbk::io {
namespace {

const json& field(const json& obj, const char* key, const char* where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

std::vector<Rational> rational_array(const json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

json rational_to_json(const Rational& q) { return to_string(q); }

json rational_array_to_json(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rational_to_json(q));
  return out;
}

ItemDistribution dist_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("dists: each entry must be an object");
  const auto type = field(j, "type", "dists").get<std::string>();
  if (type == "pmf") {
    return FinitePmf{rational_array(field(j, "values", "pmf"), "pmf values"),
                     rational_array(field(j, "probs", "pmf"), "pmf probs")};
  }
  if (type == "uniform") {
    return UniformInterval{rational_from_json(field(j, "lo", "uniform")),
                           rational_from_json(field(j, "hi", "uniform"))};
  }
  if (type == "builtin_oracle") {
    const auto name = field(j, "name", "builtin_oracle").get<std::string>();
    std::map<std::string, double> params;
    for (const auto& [key, value] : j.items()) {
      if (key == "type" || key == "name") continue;
      if (!value.is_number()) throw ParseError("builtin_oracle parameter '" + key + "' must be a number");
      params[key] = value.get<double>();
    }
    try {
      return make_builtin_oracle(name, params);
    } catch (const InvalidInput& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("dists: unknown type '" + type + "'");
}

json dist_to_json(const ItemDistribution& dist) {
  json out;
  out["type"] = distribution_kind(dist);
  if (const auto* pmf = std::get_if<FinitePmf>(&dist)) {
    out["values"] = rational_array_to_json(pmf->values);
    out["probs"] = rational_array_to_json(pmf->probs);
  } else if (const auto* u = std::get_if<UniformInterval>(&dist)) {
    out["lo"] = rational_to_json(u->lo);
    out["hi"] = rational_to_json(u->hi);
  } else {
    const auto& o = std::get<OracleDistribution>(dist);
    out["name"] = o.name;
    for (const auto& [key, value] : o.params) out[key] = value;
  }
  return out;
}

std::string format_g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::int64_t integer_upper(const PiecewiseLinear<Rational>& p) {
  const mpz_class f = p.upper().get_num() / p.upper().get_den();
  return f.get_si();
}

std::int64_t integer_upper(const PiecewiseLinear<double>& p) {
  return static_cast<std::int64_t>(std::floor(p.upper()));
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw ParseError("cannot read '" + path + "'");
  return ss.str();
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Rational(mpz_class(std::to_string(j.get<std::uint64_t>())));
    return Rational(mpz_class(std::to_string(j.get<std::int64_t>())));
  }
  if (j.is_number_float()) return rational_from_double(j.get<double>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw ParseError("expected a number or rational string, got " + j.dump());
}

std::vector<Rational> parse_rational_list(std::string_view text) {
  std::vector<Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto end = comma == std::string_view::npos ? text.size() : comma;
    out.push_back(parse_rational(text.substr(start, end - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  for (const auto& q : parse_rational_list(text)) {
    if (q.get_den() != 1 || !q.get_num().fits_slong_p()) {
      throw ParseError("expected integers, got '" + std::string(text) + "'");
    }
    out.push_back(q.get_num().get_si());
  }
  return out;
}

Instance instance_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("instance: top level must be an object");
  Instance inst;
  const auto& a = field(j, "a", "instance");
  if (!a.is_array()) throw ParseError("instance: 'a' must be an array");
  for (const auto& v : a) {
    if (!v.is_number_integer()) throw ParseError("instance: sizes in 'a' must be integers");
    inst.a.push_back(v.get<std::int64_t>());
  }
  inst.d = rational_array(field(j, "d", "instance"), "instance 'd'");
  inst.delta = rational_from_json(field(j, "delta", "instance"));
  inst.b_lo = rational_from_json(field(j, "b_lo", "instance"));
  inst.b_hi = rational_from_json(field(j, "b_hi", "instance"));
  const auto& dists = field(j, "dists", "instance");
  if (!dists.is_array()) throw ParseError("instance: 'dists' must be an array");
  for (const auto& dj : dists) inst.dists.push_back(dist_from_json(dj));
  return inst;
}

json instance_to_json(const Instance& inst) {
  json out;
  out["a"] = inst.a;
  out["d"] = rational_array_to_json(inst.d);
  out["delta"] = rational_to_json(inst.delta);
  out["b_lo"] = rational_to_json(inst.b_lo);
  out["b_hi"] = rational_to_json(inst.b_hi);
  json dists = json::array();
  for (const auto& d : inst.dists) dists.push_back(dist_to_json(d));
  out["dists"] = std::move(dists);
  return out;
}

Instance read_instance(const std::string& path) {
  const auto text = read_text_file(path);
  try {
    return instance_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

FiniteSupport support_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("support: top level must be an array");
  FiniteSupport out;
  for (const auto& s : j) {
    if (!s.is_object()) throw ParseError("support: each scenario must be an object");
    out.scenarios.push_back({rational_array(field(s, "c", "support"), "support 'c'"),
                             rational_from_json(field(s, "p", "support"))});
  }
  return out;
}

json support_to_json(const FiniteSupport& support) {
  json out = json::array();
  for (const auto& s : support.scenarios) {
    out.push_back({{"c", rational_array_to_json(s.c)}, {"p", rational_to_json(s.p)}});
  }
  return out;
}

FiniteSupport read_support(const std::string& path) {
  const auto text = read_text_file(path);
  try {
    return support_from_json(json::parse(text));
  } catch (const json::exception& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

json result_to_json(const SolveResult<Rational>& r, bool with_timing) {
  json out;
  out["method"] = r.method;
  out["exact"] = true;
  out["b_star"] = rational_to_json(r.b_star);
  out["value"] = rational_to_json(r.value);
  out["b_star_float"] = to_double(r.b_star);
  out["value_float"] = to_double(r.value);
  const auto ys = r.profile.sample_integers(0, integer_upper(r.profile));
  out["profile"] = rational_array_to_json(ys);
  out["counters"] = r.stats.counters;
  if (with_timing) out["wall_seconds"] = r.stats.wall_seconds;
  return out;
}

json result_to_json(const SolveResult<double>& r, bool with_timing) {
  json out;
  out["method"] = r.method;
  out["exact"] = false;
  out["b_star"] = r.b_star;
  out["value"] = r.value;
  out["profile"] = r.profile.sample_integers(0, integer_upper(r.profile));
  out["counters"] = r.stats.counters;
  if (with_timing) out["wall_seconds"] = r.stats.wall_seconds;
  return out;
}

json monte_carlo_to_json(const oracles::MonteCarloEstimate& est) {
  return {{"samples", est.samples}, {"mean", est.mean}, {"std_error", est.std_error}};
}

void write_profile_csv(std::ostream& out, const PiecewiseLinear<Rational>& profile) {
  const auto ys = profile.sample_integers(0, integer_upper(profile));
  out << "b,fhat\n";
  for (std::size_t b = 0; b < ys.size(); ++b) out << b << ',' << format_g12(to_double(ys[b])) << '\n';
}

void write_profile_csv(std::ostream& out, const PiecewiseLinear<double>& profile) {
  const auto ys = profile.sample_integers(0, integer_upper(profile));
  out << "b,fhat\n";
  for (std::size_t b = 0; b < ys.size(); ++b) out << b << ',' << format_g12(ys[b]) << '\n';
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace sbk::io
