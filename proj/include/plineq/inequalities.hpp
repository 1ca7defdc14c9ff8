#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "plineq/classes.hpp"
#include "plineq/generators.hpp"
#include "plineq/pl_function.hpp"

namespace plineq {

enum class InequalityKind {
  chebyshev,
  chebyshev_m,
  levin_steckin,
  ls_symmetric,
  clausing_general,
  clausing_classic,
  hermite_hadamard,
  q0_sharpness,
};

/// (class of f, monotonicity of g). The first two predict
/// mean(fg) >= mean(f) mean(g); the toggled pair predicts <=.
enum class ChebyshevMVariant { plus_nondecreasing, minus_nonincreasing, minus_nondecreasing, plus_nonincreasing };

std::string_view to_string(InequalityKind k);
std::optional<InequalityKind> parse_inequality(std::string_view name);
std::string_view to_string(ChebyshevMVariant v);
std::optional<ChebyshevMVariant> parse_variant(std::string_view name);
bool is_toggled(ChebyshevMVariant v);

/// Function slot names each checker takes, in argument order.
const std::vector<std::string>& input_slots(InequalityKind k);

/// Hypothesis names as they appear in verdicts and search problems.
namespace hyp {
inline constexpr std::string_view p_symmetric = "p_symmetric";
inline constexpr std::string_view p_nondecreasing_half = "p_nondecreasing_half";
inline constexpr std::string_view p_nonnegative = "p_nonnegative";
inline constexpr std::string_view q_symmetric = "q_symmetric";
inline constexpr std::string_view q_nonnegative = "q_nonnegative";
inline constexpr std::string_view q_convex_half = "q_convex_half";
inline constexpr std::string_view q_zero_at_0 = "q_zero_at_0";
inline constexpr std::string_view q_unit_integral = "q_unit_integral";
inline constexpr std::string_view phi_convex = "phi_convex";
inline constexpr std::string_view phi_concave = "phi_concave";
inline constexpr std::string_view phi_endpoint_sum = "phi_endpoint_sum";
inline constexpr std::string_view phi_positive = "phi_positive";
inline constexpr std::string_view phi_symmetric = "phi_symmetric";
inline constexpr std::string_view f_monotone = "f_monotone";
inline constexpr std::string_view g_monotone = "g_monotone";
inline constexpr std::string_view f_m_class = "f_m_class";
inline constexpr std::string_view f_concave = "f_concave";
}  // namespace hyp

/// A scalar side condition such as q(0) = 0.
template <class Scalar>
struct ValueCheck {
  std::string relation;  // "==", ">=" or ">"
  Scalar observed{0};
  Scalar target{0};
};

template <class Scalar>
struct Hypothesis {
  std::string name;
  bool holds = false;
  std::variant<ClassReport<Scalar>, MWitness<Scalar>, ValueCheck<Scalar>> evidence;
};

/// Both sides of one inequality. `margin` is oriented so admissible inputs
/// give margin >= 0; `holds` iff margin >= -tolerance. Hypotheses are
/// evaluated and recorded but never stop the evaluation.
template <class Scalar>
struct InequalityVerdict {
  InequalityKind name;
  Scalar lhs{0};
  Scalar rhs{0};
  Scalar margin{0};
  bool holds = false;
  std::vector<Hypothesis<Scalar>> hypotheses;
  Scalar tolerance{0};
  std::vector<std::pair<std::string, Scalar>> details;
  std::optional<ChebyshevMVariant> variant;

  bool hypotheses_hold() const {
    for (const auto& h : hypotheses) {
      if (!h.holds) return false;
    }
    return true;
  }

  std::vector<std::string> failed_hypotheses() const {
    std::vector<std::string> out;
    for (const auto& h : hypotheses) {
      if (!h.holds) out.push_back(h.name);
    }
    return out;
  }

  const Hypothesis<Scalar>* hypothesis(std::string_view n) const {
    for (const auto& h : hypotheses) {
      if (h.name == n) return &h;
    }
    return nullptr;
  }

  std::optional<Scalar> detail(std::string_view key) const {
    for (const auto& [k, v] : details) {
      if (k == key) return v;
    }
    return std::nullopt;
  }
};

namespace detail {

template <class Scalar>
Hypothesis<Scalar> from_report(std::string_view name, ClassReport<Scalar> r) {
  const bool ok = r.holds;
  return {std::string(name), ok, std::move(r)};
}

template <class Scalar>
Hypothesis<Scalar> value_equals(std::string_view name, const Scalar& observed, const Scalar& target) {
  const bool ok = !(scalar_abs(Scalar(observed - target)) > ScalarTraits<Scalar>::class_tolerance());
  return {std::string(name), ok, ValueCheck<Scalar>{"==", observed, target}};
}

template <class Scalar>
Hypothesis<Scalar> value_at_least(std::string_view name, const Scalar& observed, const Scalar& target) {
  const bool ok = !(observed < Scalar(target - ScalarTraits<Scalar>::class_tolerance()));
  return {std::string(name), ok, ValueCheck<Scalar>{">=", observed, target}};
}

template <class Scalar>
Hypothesis<Scalar> value_above(std::string_view name, const Scalar& observed, const Scalar& target) {
  return {std::string(name), observed > target, ValueCheck<Scalar>{">", observed, target}};
}

template <class Scalar>
void require_unit_domain(const PLFunction<Scalar>& f) {
  if (!(f.domain_lo() == Scalar(0)) || !(f.domain_hi() == Scalar(1))) {
    throw std::domain_error("this inequality is stated on [0, 1]");
  }
}

template <class Scalar>
Scalar half_point() {
  return Scalar(Scalar(1) / Scalar(2));
}

template <class Scalar>
InequalityVerdict<Scalar> finish(InequalityVerdict<Scalar> v, const Scalar& tol) {
  v.tolerance = tol;
  v.holds = !(v.margin < Scalar(-tol));
  return v;
}

/// Hypotheses on the weight p shared by Levin-Steckin and Clausing.
template <class Scalar>
void weight_hypotheses(std::vector<Hypothesis<Scalar>>& out, const PLFunction<Scalar>& p, bool nonnegative) {
  out.push_back(from_report(hyp::p_symmetric, is_symmetric(p)));
  out.push_back(from_report(hyp::p_nondecreasing_half,
                            is_monotone_on(p, Interval<Scalar>{Scalar(0), half_point<Scalar>()}, Monotonicity::nondecreasing)));
  if (nonnegative) out.push_back(from_report(hyp::p_nonnegative, is_nonnegative(p)));
}

template <class Scalar>
void q_hypotheses(std::vector<Hypothesis<Scalar>>& out, const PLFunction<Scalar>& q) {
  out.push_back(from_report(hyp::q_symmetric, is_symmetric(q)));
  out.push_back(from_report(hyp::q_nonnegative, is_nonnegative(q)));
  out.push_back(from_report(hyp::q_convex_half, is_convex(q, Interval<Scalar>{Scalar(0), half_point<Scalar>()})));
  out.push_back(value_equals(hyp::q_zero_at_0, q(Scalar(0)), Scalar(0)));
  out.push_back(value_equals(hyp::q_unit_integral, integrate(q), Scalar(1)));
}

}  // namespace detail

/// Classical Chebyshev: mean(fg) vs mean(f) mean(g). The orientation is
/// read off the monotonicity of f and g (same direction predicts >=); a
/// non-monotone input is recorded as a failed hypothesis and treated as
/// same-direction.
template <class Scalar>
InequalityVerdict<Scalar> check_chebyshev(const PLFunction<Scalar>& f, const PLFunction<Scalar>& g,
                                          const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  require_same_domain(f, g);
  InequalityVerdict<Scalar> v{InequalityKind::chebyshev};
  const Scalar width = f.domain_hi() - f.domain_lo();
  v.lhs = Scalar(integrate_product(f, g) / width);
  v.rhs = Scalar(mean(f) * mean(g));

  auto f_up = is_monotone_on(f, Monotonicity::nondecreasing);
  auto f_down = is_monotone_on(f, Monotonicity::nonincreasing);
  auto g_up = is_monotone_on(g, Monotonicity::nondecreasing);
  auto g_down = is_monotone_on(g, Monotonicity::nonincreasing);
  const bool f_mono = f_up.holds || f_down.holds;
  const bool g_mono = g_up.holds || g_down.holds;
  // Constant inputs are monotone both ways; they give equality either way.
  const bool opposite = f_mono && g_mono && ((f_up.holds && !f_down.holds && g_down.holds && !g_up.holds) ||
                                             (f_down.holds && !f_up.holds && g_up.holds && !g_down.holds));
  v.hypotheses.push_back(detail::from_report(hyp::f_monotone, f_up.holds || !f_down.holds ? f_up : f_down));
  v.hypotheses.push_back(detail::from_report(hyp::g_monotone, g_up.holds || !g_down.holds ? g_up : g_down));
  v.margin = opposite ? Scalar(v.rhs - v.lhs) : Scalar(v.lhs - v.rhs);
  v.details.emplace_back("opposite_directions", Scalar(opposite ? 1 : 0));
  return detail::finish(std::move(v), tol);
}

/// Chebyshev with one monotone factor relaxed to the M+/M- classes.
template <class Scalar>
InequalityVerdict<Scalar> check_chebyshev_m(const PLFunction<Scalar>& f, const PLFunction<Scalar>& g,
                                            ChebyshevMVariant variant,
                                            const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  require_same_domain(f, g);
  InequalityVerdict<Scalar> v{InequalityKind::chebyshev_m};
  v.variant = variant;
  const Scalar width = f.domain_hi() - f.domain_lo();
  v.lhs = Scalar(integrate_product(f, g) / width);
  v.rhs = Scalar(mean(f) * mean(g));

  const bool f_plus = variant == ChebyshevMVariant::plus_nondecreasing || variant == ChebyshevMVariant::plus_nonincreasing;
  const bool g_up = variant == ChebyshevMVariant::plus_nondecreasing || variant == ChebyshevMVariant::minus_nondecreasing;
  auto witness = classify_m(f, f_plus ? MClass::plus : MClass::minus);
  const bool in_class = witness.in_class;
  v.hypotheses.push_back({std::string(hyp::f_m_class), in_class, std::move(witness)});
  v.hypotheses.push_back(detail::from_report(
      hyp::g_monotone, is_monotone_on(g, g_up ? Monotonicity::nondecreasing : Monotonicity::nonincreasing)));
  v.margin = is_toggled(variant) ? Scalar(v.rhs - v.lhs) : Scalar(v.lhs - v.rhs);
  return detail::finish(std::move(v), tol);
}

/// Levin-Steckin: integral(p phi) <= integral(p) * integral(phi) for
/// symmetric p non-decreasing on [0, 1/2] and convex phi.
template <class Scalar>
InequalityVerdict<Scalar> check_levin_steckin(const PLFunction<Scalar>& p, const PLFunction<Scalar>& phi,
                                              const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  require_same_domain(p, phi);
  detail::require_unit_domain(p);
  InequalityVerdict<Scalar> v{InequalityKind::levin_steckin};
  v.lhs = integrate_product(p, phi);
  v.rhs = Scalar(integrate(p) * integrate(phi));
  v.margin = Scalar(v.rhs - v.lhs);
  detail::weight_hypotheses(v.hypotheses, p, false);
  v.hypotheses.push_back(detail::from_report(hyp::phi_convex, is_convex(phi)));
  return detail::finish(std::move(v), tol);
}

/// Levin-Steckin for symmetric phi, evaluated through the half-interval
/// chain: rhs = 4 int_0^1/2 p * int_0^1/2 phi, lhs = 2 int_0^1/2 p phi.
/// The details record whether each chain value equals its full-interval
/// counterpart.
template <class Scalar>
InequalityVerdict<Scalar> check_ls_symmetric_lemma(const PLFunction<Scalar>& p, const PLFunction<Scalar>& phi,
                                                   const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  require_same_domain(p, phi);
  detail::require_unit_domain(p);
  const Scalar half = detail::half_point<Scalar>();
  const auto p_left = restrict_to(p, Scalar(0), half);
  const auto phi_left = restrict_to(phi, Scalar(0), half);

  InequalityVerdict<Scalar> v{InequalityKind::ls_symmetric};
  const Scalar half_p = integrate(p_left);
  const Scalar half_phi = integrate(phi_left);
  const Scalar half_product = integrate_product(p_left, phi_left);
  v.rhs = Scalar(Scalar(4) * half_p * half_phi);
  v.lhs = Scalar(Scalar(2) * half_product);
  v.margin = Scalar(v.rhs - v.lhs);

  const Scalar full_lhs = integrate_product(p, phi);
  const Scalar full_rhs = Scalar(integrate(p) * integrate(phi));
  const Scalar id_tol = ScalarTraits<Scalar>::class_tolerance();
  const bool lhs_identity = !(scalar_abs(Scalar(full_lhs - v.lhs)) > id_tol);
  const bool rhs_identity = !(scalar_abs(Scalar(full_rhs - v.rhs)) > id_tol);
  v.details.emplace_back("half_integral_p", half_p);
  v.details.emplace_back("half_integral_phi", half_phi);
  v.details.emplace_back("half_integral_product", half_product);
  v.details.emplace_back("full_lhs", full_lhs);
  v.details.emplace_back("full_rhs", full_rhs);
  v.details.emplace_back("lhs_identity", Scalar(lhs_identity ? 1 : 0));
  v.details.emplace_back("rhs_identity", Scalar(rhs_identity ? 1 : 0));

  detail::weight_hypotheses(v.hypotheses, p, false);
  v.hypotheses.push_back(detail::from_report(hyp::phi_convex, is_convex(phi)));
  v.hypotheses.push_back(detail::from_report(hyp::phi_symmetric, is_symmetric(phi)));
  return detail::finish(std::move(v), tol);
}

/// Generalized Clausing: integral(p phi) <= integral(phi) * integral(p q).
/// K = integral(phi) is recorded; for symmetric phi the margin is also
/// computed as 2 int_0^1/2 (K q - phi) p.
template <class Scalar>
InequalityVerdict<Scalar> check_clausing_general(const PLFunction<Scalar>& p, const PLFunction<Scalar>& q,
                                                 const PLFunction<Scalar>& phi,
                                                 const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  require_same_domain(p, q);
  require_same_domain(p, phi);
  detail::require_unit_domain(p);
  InequalityVerdict<Scalar> v{InequalityKind::clausing_general};
  const Scalar k = integrate(phi);
  const Scalar pq = integrate_product(p, q);
  v.lhs = integrate_product(p, phi);
  v.rhs = Scalar(k * pq);
  v.margin = Scalar(v.rhs - v.lhs);
  v.details.emplace_back("K", k);
  v.details.emplace_back("integral_pq", pq);

  detail::weight_hypotheses(v.hypotheses, p, true);
  detail::q_hypotheses(v.hypotheses, q);
  v.hypotheses.push_back(detail::from_report(hyp::phi_concave, is_concave(phi)));
  v.hypotheses.push_back(detail::value_at_least(hyp::phi_endpoint_sum, Scalar(phi(Scalar(0)) + phi(Scalar(1))), Scalar(0)));

  if (is_symmetric(phi).holds) {
    const Scalar half = detail::half_point<Scalar>();
    const auto kq_minus_phi = linear_combine(k, q, Scalar(-1), phi);
    const Scalar reformulated = integrate_product(restrict_to(kq_minus_phi, Scalar(0), half), restrict_to(p, Scalar(0), half));
    v.details.emplace_back("half_reformulation", reformulated);
    const bool agrees = !(scalar_abs(Scalar(v.margin - Scalar(2) * reformulated)) > ScalarTraits<Scalar>::class_tolerance());
    v.details.emplace_back("reformulation_agrees", Scalar(agrees ? 1 : 0));
  }
  return detail::finish(std::move(v), tol);
}

/// Classical Clausing: the general form with q = q0. The verdict matches
/// check_clausing_general(p, q0, phi) except for its name and one extra
/// trailing hypothesis (phi nonnegative with positive integral).
template <class Scalar>
InequalityVerdict<Scalar> check_clausing_classic(const PLFunction<Scalar>& p, const PLFunction<Scalar>& phi,
                                                 const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  auto v = check_clausing_general(p, q0<Scalar>(), phi, tol);
  v.name = InequalityKind::clausing_classic;
  const bool positive = is_nonnegative(phi).holds && integrate(phi) > Scalar(0);
  v.hypotheses.push_back(
      {std::string(hyp::phi_positive), positive, ValueCheck<Scalar>{">", integrate(phi), Scalar(0)}});
  return v;
}

/// Hermite-Hadamard for concave f: f(mid) >= mean(f) >= (f(a) + f(b)) / 2.
/// lhs = mean, rhs = f(mid); margin is the smaller of the two gaps.
template <class Scalar>
InequalityVerdict<Scalar> check_hermite_hadamard(const PLFunction<Scalar>& f,
                                                 const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  InequalityVerdict<Scalar> v{InequalityKind::hermite_hadamard};
  const Scalar mid = (f.domain_lo() + f.domain_hi()) / Scalar(2);
  const Scalar avg = mean(f);
  const Scalar at_mid = f(mid);
  const Scalar ends = Scalar((f.values().front() + f.values().back()) / Scalar(2));
  v.lhs = avg;
  v.rhs = at_mid;
  const Scalar upper_gap = at_mid - avg;
  const Scalar lower_gap = avg - ends;
  v.margin = upper_gap < lower_gap ? upper_gap : lower_gap;
  v.details.emplace_back("endpoint_average", ends);
  v.details.emplace_back("upper_gap", upper_gap);
  v.details.emplace_back("lower_gap", lower_gap);
  v.hypotheses.push_back(detail::from_report(hyp::f_concave, is_concave(f)));
  return detail::finish(std::move(v), tol);
}

/// integral(p q0) <= integral(p q) for admissible q.
template <class Scalar>
InequalityVerdict<Scalar> check_q0_sharpness(const PLFunction<Scalar>& p, const PLFunction<Scalar>& q,
                                             const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  require_same_domain(p, q);
  detail::require_unit_domain(p);
  InequalityVerdict<Scalar> v{InequalityKind::q0_sharpness};
  v.lhs = integrate_product(p, q0<Scalar>());
  v.rhs = integrate_product(p, q);
  v.margin = Scalar(v.rhs - v.lhs);
  detail::weight_hypotheses(v.hypotheses, p, true);
  detail::q_hypotheses(v.hypotheses, q);
  return detail::finish(std::move(v), tol);
}

/// Named inputs for one checker; the unit of serialization and replay.
template <class Scalar>
struct Case {
  InequalityKind kind;
  std::optional<ChebyshevMVariant> variant;
  std::map<std::string, PLFunction<Scalar>> functions;

  const PLFunction<Scalar>& at(const std::string& slot) const {
    auto it = functions.find(slot);
    if (it == functions.end()) {
      throw std::invalid_argument(std::string(to_string(kind)) + " case is missing function '" + slot + "'");
    }
    return it->second;
  }

  template <class Other>
  Case<Other> cast() const {
    Case<Other> out{kind, variant, {}};
    for (const auto& [k, f] : functions) out.functions.emplace(k, f.template cast<Other>());
    return out;
  }
};

template <class Scalar>
InequalityVerdict<Scalar> evaluate(const Case<Scalar>& c, const Scalar& tol = ScalarTraits<Scalar>::verdict_tolerance()) {
  switch (c.kind) {
    case InequalityKind::chebyshev: return check_chebyshev(c.at("f"), c.at("g"), tol);
    case InequalityKind::chebyshev_m:
      return check_chebyshev_m(c.at("f"), c.at("g"), c.variant.value_or(ChebyshevMVariant::plus_nondecreasing), tol);
    case InequalityKind::levin_steckin: return check_levin_steckin(c.at("p"), c.at("phi"), tol);
    case InequalityKind::ls_symmetric: return check_ls_symmetric_lemma(c.at("p"), c.at("phi"), tol);
    case InequalityKind::clausing_general: return check_clausing_general(c.at("p"), c.at("q"), c.at("phi"), tol);
    case InequalityKind::clausing_classic: return check_clausing_classic(c.at("p"), c.at("phi"), tol);
    case InequalityKind::hermite_hadamard: return check_hermite_hadamard(c.at("f"), tol);
    case InequalityKind::q0_sharpness: return check_q0_sharpness(c.at("p"), c.at("q"), tol);
  }
  throw std::logic_error("unhandled inequality kind");
}

}  // namespace plineq
