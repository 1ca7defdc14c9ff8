#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"

#include "plineq/classes.hpp"
#include "plineq/inequalities.hpp"
#include "plineq/pl_function.hpp"

namespace plineq {

using Json = nlohmann::ordered_json;

/// Malformed input; the message names the source, line/column or field path.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses JSON text, reporting syntax errors as "<source>:<line>:<column>: ...".
Json parse_json_text(std::string_view text, std::string_view source);
Json read_json_file(const std::string& path);

/// Exact scalar field: accepts "n/d", "n", decimal strings and JSON numbers.
Rational rational_from_json(const Json& j, const std::string& path);

template <class Scalar>
Json scalar_to_json(const Scalar& x) {
  return to_exact_string(x);
}

template <class Scalar>
Scalar scalar_from_json(const Json& j, const std::string& path) {
  return ScalarTraits<Scalar>::from_rational(rational_from_json(j, path));
}

/// {"domain": [lo, hi], "breakpoints": [...], "values": [...]}, all exact.
template <class Scalar>
Json to_json(const PLFunction<Scalar>& f) {
  Json out;
  out["domain"] = Json::array({scalar_to_json(f.domain_lo()), scalar_to_json(f.domain_hi())});
  Json xs = Json::array(), ys = Json::array();
  for (const auto& x : f.breakpoints()) xs.push_back(scalar_to_json(x));
  for (const auto& y : f.values()) ys.push_back(scalar_to_json(y));
  out["breakpoints"] = std::move(xs);
  out["values"] = std::move(ys);
  return out;
}

namespace detail {
const Json& require_field(const Json& j, const char* key, const std::string& path);
const Json& require_array(const Json& j, const char* key, const std::string& path);
}  // namespace detail

template <class Scalar>
PLFunction<Scalar> pl_function_from_json(const Json& j, const std::string& path = "function") {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const Json& xs_j = detail::require_array(j, "breakpoints", path);
  const Json& ys_j = detail::require_array(j, "values", path);
  std::vector<Scalar> xs, ys;
  for (std::size_t i = 0; i < xs_j.size(); ++i) {
    xs.push_back(scalar_from_json<Scalar>(xs_j[i], path + ".breakpoints[" + std::to_string(i) + "]"));
  }
  for (std::size_t i = 0; i < ys_j.size(); ++i) {
    ys.push_back(scalar_from_json<Scalar>(ys_j[i], path + ".values[" + std::to_string(i) + "]"));
  }
  if (j.contains("domain")) {
    const Json& d = j["domain"];
    if (!d.is_array() || d.size() != 2) throw ParseError(path + ".domain: expected [lo, hi]");
    const Scalar lo = scalar_from_json<Scalar>(d[0], path + ".domain[0]");
    const Scalar hi = scalar_from_json<Scalar>(d[1], path + ".domain[1]");
    if (xs.empty() || !(xs.front() == lo) || !(xs.back() == hi)) {
      throw ParseError(path + ".domain: does not match the first and last breakpoints");
    }
  }
  try {
    return PLFunction<Scalar>(std::move(xs), std::move(ys));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path + ": " + e.what());
  }
}

template <class Scalar>
Json to_json(const ClassReport<Scalar>& r) {
  Json out;
  out["class"] = std::string(to_string(r.class_name));
  out["holds"] = r.holds;
  out["tolerance"] = scalar_to_json(r.tolerance);
  if (r.violation_at) out["violation_at"] = scalar_to_json(*r.violation_at);
  if (r.violation_magnitude) out["violation_magnitude"] = scalar_to_json(*r.violation_magnitude);
  return out;
}

template <class Scalar>
Json to_json(const MWitness<Scalar>& w) {
  Json out;
  out["class"] = std::string(to_string(w.direction));
  out["in_class"] = w.in_class;
  out["mean"] = scalar_to_json(w.mean);
  if (w.c_lo) out["c_lo"] = scalar_to_json(*w.c_lo);
  if (w.c_hi) out["c_hi"] = scalar_to_json(*w.c_hi);
  if (w.certificate) {
    out["certificate"] = {{"x_below", scalar_to_json(w.certificate->first)},
                          {"x_above", scalar_to_json(w.certificate->second)}};
  }
  return out;
}

template <class Scalar>
Json to_json(const ValueCheck<Scalar>& c) {
  Json out;
  out["relation"] = c.relation;
  out["observed"] = scalar_to_json(c.observed);
  out["target"] = scalar_to_json(c.target);
  return out;
}

template <class Scalar>
Json to_json(const InequalityVerdict<Scalar>& v) {
  Json out;
  out["inequality"] = std::string(to_string(v.name));
  if (v.variant) out["variant"] = std::string(to_string(*v.variant));
  out["lhs"] = scalar_to_json(v.lhs);
  out["rhs"] = scalar_to_json(v.rhs);
  out["margin"] = scalar_to_json(v.margin);
  out["margin_approx"] = to_double(v.margin);
  out["holds"] = v.holds;
  out["tolerance"] = scalar_to_json(v.tolerance);
  out["hypotheses_hold"] = v.hypotheses_hold();
  Json hyps = Json::array();
  for (const auto& h : v.hypotheses) {
    Json e;
    e["name"] = h.name;
    e["holds"] = h.holds;
    e["evidence"] = std::visit([](const auto& ev) { return to_json(ev); }, h.evidence);
    hyps.push_back(std::move(e));
  }
  out["hypotheses"] = std::move(hyps);
  Json det = Json::object();
  for (const auto& [k, x] : v.details) det[k] = scalar_to_json(x);
  out["details"] = std::move(det);
  return out;
}

template <class Scalar>
Json to_json(const Case<Scalar>& c) {
  Json out;
  out["inequality"] = std::string(to_string(c.kind));
  if (c.variant) out["variant"] = std::string(to_string(*c.variant));
  Json fns;
  for (const auto& slot : input_slots(c.kind)) {
    if (auto it = c.functions.find(slot); it != c.functions.end()) fns[slot] = to_json(it->second);
  }
  out["functions"] = std::move(fns);
  return out;
}

template <class Scalar>
Case<Scalar> case_from_json(const Json& j, const std::string& path = "case") {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  const Json& name = detail::require_field(j, "inequality", path);
  if (!name.is_string()) throw ParseError(path + ".inequality: expected a string");
  auto kind = parse_inequality(name.get<std::string>());
  if (!kind) throw ParseError(path + ".inequality: unknown inequality '" + name.get<std::string>() + "'");
  Case<Scalar> c{*kind, std::nullopt, {}};
  if (j.contains("variant")) {
    const Json& vj = j["variant"];
    auto v = vj.is_string() ? parse_variant(vj.get<std::string>()) : std::nullopt;
    if (!v) throw ParseError(path + ".variant: unknown Chebyshev-M variant");
    c.variant = v;
  }
  const Json& fns = detail::require_field(j, "functions", path);
  if (!fns.is_object()) throw ParseError(path + ".functions: expected an object");
  for (const auto& slot : input_slots(*kind)) {
    if (!fns.contains(slot)) throw ParseError(path + ".functions." + slot + ": missing");
    c.functions.emplace(slot, pl_function_from_json<Scalar>(fns[slot], path + ".functions." + slot));
  }
  return c;
}

}  // namespace plineq
