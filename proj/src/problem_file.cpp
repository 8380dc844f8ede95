#include "fpdde/problem_file.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fpdde {
namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ProblemFileError(msg); }

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// JSON cannot hold inf/nan; they are written as strings.
ojson json_number(double v) {
  if (std::isfinite(v)) return v;
  return num(v);
}

Expr expr_field(const json& doc, const char* key, int n) {
  const auto& v = doc.at(key);
  if (!v.is_string()) fail(std::string("field '") + key + "' must be a string");
  try {
    return parse(v.get<std::string>(), n);
  } catch (const ParseError& e) {
    fail(std::string("field '") + key + "': " + e.what());
  }
}

std::optional<Expr> optional_expr(const json& doc, const char* key, int n) {
  if (!doc.contains(key)) return std::nullopt;
  return expr_field(doc, key, n);
}

int int_field(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number_integer()) fail(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number_field(const json& doc, const char* key) {
  const auto& v = doc.at(key);
  if (!v.is_number()) fail(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Complex complex_pair(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
    fail(where + " must be an [re, im] pair of numbers");
  }
  return {v[0].get<double>(), v[1].get<double>()};
}

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [k, _] : obj.items()) {
    if (!allowed.count(k)) fail("unknown field '" + k + "' in " + where);
  }
}

PolicyOverrides parse_policy(const json& p) {
  if (!p.is_object()) fail("field 'policy' must be an object");
  reject_unknown(p, {"samples", "radius", "tol", "seed", "pole_epsilon"}, "policy");
  PolicyOverrides o;
  if (p.contains("samples")) o.samples = int_field(p, "samples");
  if (p.contains("radius")) o.radius = number_field(p, "radius");
  if (p.contains("tol")) o.tolerance = number_field(p, "tol");
  if (p.contains("seed")) {
    if (!p["seed"].is_number_unsigned() && !p["seed"].is_number_integer()) fail("policy seed must be an integer");
    o.seed = p["seed"].get<std::uint64_t>();
  }
  if (p.contains("pole_epsilon")) o.pole_epsilon = number_field(p, "pole_epsilon");
  return o;
}

LinearPDOperator parse_operator(const json& arr, int n) {
  if (!arr.is_array()) fail("field 'operator' must be an array");
  LinearPDOperator op;
  op.dimension = n;
  for (std::size_t t = 0; t < arr.size(); ++t) {
    const auto& term = arr[t];
    const std::string where = "operator[" + std::to_string(t) + "]";
    if (!term.is_object() || !term.contains("index") || !term.contains("coeff")) {
      fail(where + " needs 'index' and 'coeff'");
    }
    reject_unknown(term, {"index", "coeff"}, where);
    const auto& idx = term["index"];
    if (!idx.is_array()) fail(where + ".index must be an array");
    std::vector<int> orders;
    for (const auto& x : idx) {
      if (!x.is_number_integer() || x.get<int>() < 0) fail(where + ".index entries must be non-negative integers");
      orders.push_back(x.get<int>());
    }
    if (orders.size() != static_cast<std::size_t>(n)) fail(where + ".index must have n entries");
    Expr coeff;
    try {
      if (!term["coeff"].is_string()) fail(where + ".coeff must be a string");
      coeff = parse(term["coeff"].get<std::string>(), n);
    } catch (const ParseError& e) {
      fail(where + ".coeff: " + e.what());
    }
    op.terms.emplace_back(MultiIndex(std::move(orders)), coeff);
  }
  return op;
}

ojson report_object(const VerificationReport& r) {
  ojson j;
  j["verdict"] = r.pass ? "pass" : "fail";
  j["points_tested"] = r.points_tested;
  j["points_skipped"] = r.points_skipped;
  j["max_abs_residual"] = json_number(r.max_abs_residual);
  j["max_rel_residual"] = json_number(r.max_rel_residual);
  j["samples"] = r.policy.samples;
  j["radius"] = r.policy.radius;
  j["seed"] = r.policy.seed;
  j["tolerance"] = r.policy.tolerance;
  j["pole_epsilon"] = r.policy.pole_epsilon;
  return j;
}

}  // namespace

SamplingPolicy PolicyOverrides::apply(SamplingPolicy base) const {
  if (samples) base.samples = *samples;
  if (radius) base.radius = *radius;
  if (tolerance) base.tolerance = *tolerance;
  if (seed) base.seed = *seed;
  if (pole_epsilon) base.pole_epsilon = *pole_epsilon;
  return base;
}

ProblemFile parse_problem_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON at byte ") + std::to_string(e.byte) + ": " + e.what());
  }
  if (!doc.is_object()) fail("problem document must be a JSON object");
  reject_unknown(doc,
                 {"n", "kind", "m1", "m2", "c", "f", "g", "alpha", "beta", "phi", "operator", "policy",
                  "expected_status", "description"},
                 "problem document");

  try {
    ProblemFile pf;
    PDDEProblem& p = pf.problem;
    p.dimension = int_field(doc, "n");
    if (p.dimension < 1) fail("field 'n' must be >= 1");
    const int n = p.dimension;
    if (!doc.at("kind").is_string()) fail("field 'kind' must be a string");
    try {
      p.kind = parse_kind(doc["kind"].get<std::string>());
    } catch (const ProblemError& e) {
      fail(e.what());
    }
    p.m1 = doc.contains("m1") ? int_field(doc, "m1") : 2;
    p.m2 = doc.contains("m2") ? int_field(doc, "m2") : 1;
    if (doc.contains("c")) {
      const auto& c = doc["c"];
      if (!c.is_array()) fail("field 'c' must be an array of [re, im] pairs");
      for (std::size_t j = 0; j < c.size(); ++j) p.shift.push_back(complex_pair(c[j], "c[" + std::to_string(j) + "]"));
    }
    p.g = optional_expr(doc, "g", n);
    p.alpha = optional_expr(doc, "alpha", n);
    p.beta = optional_expr(doc, "beta", n);
    p.phi = optional_expr(doc, "phi", n);
    if (doc.contains("operator")) p.op = parse_operator(doc["operator"], n);
    pf.candidate = optional_expr(doc, "f", n);
    if (doc.contains("policy")) pf.policy = parse_policy(doc["policy"]);
    if (doc.contains("expected_status")) {
      if (!doc["expected_status"].is_string()) fail("field 'expected_status' must be a string");
      pf.expected_status = doc["expected_status"].get<std::string>();
      if (pf.expected_status != "pass" && pf.expected_status != "fail" && pf.expected_status != "inconsistent") {
        fail("field 'expected_status' must be pass, fail or inconsistent");
      }
    }
    if (doc.contains("description") && doc["description"].is_string()) {
      pf.description = doc["description"].get<std::string>();
    }
    try {
      p.validate();
    } catch (const ProblemError& e) {
      fail(std::string("invalid problem: ") + e.what());
    }
    return pf;
  } catch (const json::out_of_range& e) {
    fail(std::string("missing field: ") + e.what());
  } catch (const json::type_error& e) {
    fail(std::string("wrong field type: ") + e.what());
  }
}

ProblemFile load_problem_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open problem file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_problem_document(buf.str());
  } catch (const ProblemFileError& e) {
    fail(path.string() + ": " + e.what());
  }
}

std::string write_problem_document(const PDDEProblem& p, const Expr& candidate, std::string_view expected_status,
                                   std::string_view description) {
  ojson doc;
  doc["n"] = p.dimension;
  doc["kind"] = std::string(kind_name(p.kind));
  doc["m1"] = p.m1;
  doc["m2"] = p.m2;
  ojson c = ojson::array();
  for (auto x : p.shift) c.push_back(ojson::array({x.real(), x.imag()}));
  doc["c"] = c;
  doc["f"] = to_string(candidate);
  if (p.g) doc["g"] = to_string(*p.g);
  if (p.alpha) doc["alpha"] = to_string(*p.alpha);
  if (p.beta) doc["beta"] = to_string(*p.beta);
  if (p.phi) doc["phi"] = to_string(*p.phi);
  if (p.op) {
    ojson ops = ojson::array();
    for (const auto& [idx, coeff] : p.op->terms) {
      ops.push_back({{"index", idx.orders()}, {"coeff", to_string(coeff)}});
    }
    doc["operator"] = ops;
  }
  if (!expected_status.empty()) doc["expected_status"] = std::string(expected_status);
  if (!description.empty()) doc["description"] = std::string(description);
  return doc.dump(2) + "\n";
}

std::string report_to_text(const VerificationReport& r) {
  std::ostringstream os;
  os << "verdict=" << (r.pass ? "pass" : "fail") << '\n'
     << "points_tested=" << r.points_tested << '\n'
     << "points_skipped=" << r.points_skipped << '\n'
     << "max_abs_residual=" << num(r.max_abs_residual) << '\n'
     << "max_rel_residual=" << num(r.max_rel_residual) << '\n'
     << "samples=" << r.policy.samples << '\n'
     << "radius=" << num(r.policy.radius) << '\n'
     << "seed=" << r.policy.seed << '\n'
     << "tolerance=" << num(r.policy.tolerance) << '\n'
     << "pole_epsilon=" << num(r.policy.pole_epsilon) << '\n';
  return os.str();
}

std::string report_to_json(const VerificationReport& r) { return report_object(r).dump(); }

std::string growth_to_text(const GrowthEstimate& est) {
  std::ostringstream os;
  os << "order=" << num(est.order) << '\n'
     << "directions=" << est.directions << '\n'
     << "truncated=" << (est.truncated ? "true" : "false") << '\n';
  for (std::size_t k = 0; k < est.radii.size(); ++k) {
    os << "log_max_modulus[" << num(est.radii[k]) << "]=" << num(est.log_max_modulus[k]) << '\n';
  }
  return os.str();
}

std::string growth_to_json(const GrowthEstimate& est) {
  ojson j;
  j["order"] = json_number(est.order);
  j["directions"] = est.directions;
  j["truncated"] = est.truncated;
  j["radii"] = est.radii;
  ojson logs = ojson::array();
  for (double v : est.log_max_modulus) logs.push_back(json_number(v));
  j["log_max_modulus"] = logs;
  return j.dump();
}

}  // namespace fpdde
