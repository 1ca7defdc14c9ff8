#include "plineq/inequalities.hpp"

#include <array>

namespace plineq {

namespace {

constexpr std::array<std::pair<InequalityKind, std::string_view>, 8> kKindNames{{
    {InequalityKind::chebyshev, "chebyshev"},
    {InequalityKind::chebyshev_m, "chebyshev_m"},
    {InequalityKind::levin_steckin, "levin_steckin"},
    {InequalityKind::ls_symmetric, "ls_symmetric"},
    {InequalityKind::clausing_general, "clausing_general"},
    {InequalityKind::clausing_classic, "clausing_classic"},
    {InequalityKind::hermite_hadamard, "hermite_hadamard"},
    {InequalityKind::q0_sharpness, "q0_sharpness"},
}};

constexpr std::array<std::pair<ChebyshevMVariant, std::string_view>, 4> kVariantNames{{
    {ChebyshevMVariant::plus_nondecreasing, "plus_nondecreasing"},
    {ChebyshevMVariant::minus_nonincreasing, "minus_nonincreasing"},
    {ChebyshevMVariant::minus_nondecreasing, "minus_nondecreasing"},
    {ChebyshevMVariant::plus_nonincreasing, "plus_nonincreasing"},
}};

}  // namespace

std::string_view to_string(InequalityKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

std::optional<InequalityKind> parse_inequality(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  return std::nullopt;
}

std::string_view to_string(ChebyshevMVariant v) {
  for (const auto& [variant, name] : kVariantNames) {
    if (variant == v) return name;
  }
  return "unknown";
}

std::optional<ChebyshevMVariant> parse_variant(std::string_view name) {
  for (const auto& [variant, n] : kVariantNames) {
    if (n == name) return variant;
  }
  return std::nullopt;
}

bool is_toggled(ChebyshevMVariant v) {
  return v == ChebyshevMVariant::minus_nondecreasing || v == ChebyshevMVariant::plus_nonincreasing;
}

const std::vector<std::string>& input_slots(InequalityKind k) {
  static const std::vector<std::string> fg{"f", "g"};
  static const std::vector<std::string> p_phi{"p", "phi"};
  static const std::vector<std::string> p_q_phi{"p", "q", "phi"};
  static const std::vector<std::string> f_only{"f"};
  static const std::vector<std::string> p_q{"p", "q"};
  switch (k) {
    case InequalityKind::chebyshev:
    case InequalityKind::chebyshev_m: return fg;
    case InequalityKind::levin_steckin:
    case InequalityKind::ls_symmetric:
    case InequalityKind::clausing_classic: return p_phi;
    case InequalityKind::clausing_general: return p_q_phi;
    case InequalityKind::hermite_hadamard: return f_only;
    case InequalityKind::q0_sharpness: return p_q;
  }
  return fg;
}

}  // namespace plineq
