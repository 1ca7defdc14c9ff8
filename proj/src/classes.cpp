#include "plineq/classes.hpp"

namespace plineq {

std::string_view to_string(FunctionClass c) {
  switch (c) {
    case FunctionClass::convex: return "convex";
    case FunctionClass::concave: return "concave";
    case FunctionClass::symmetric: return "symmetric";
    case FunctionClass::nonnegative: return "nonnegative";
    case FunctionClass::nondecreasing_on: return "nondecreasing_on";
    case FunctionClass::nonincreasing_on: return "nonincreasing_on";
  }
  return "unknown";
}

std::string_view to_string(Monotonicity m) {
  return m == Monotonicity::nondecreasing ? "nondecreasing" : "nonincreasing";
}

std::string_view to_string(MClass m) { return m == MClass::plus ? "M_plus" : "M_minus"; }

}  // namespace plineq
