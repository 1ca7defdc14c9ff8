#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace plineq {

/// Exact rational scalar. All arithmetic on it is exact.
using Rational = mpq_class;

/// Per-scalar policy: conversions, tolerances and text form.
///
/// Double is the fast search mode; Rational is the verdict mode. Every
/// double is a dyadic rational, so `to_rational` is exact and both modes
/// can share one text format.
template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool is_exact = false;
  static constexpr const char* name = "float";

  static double from_double(double x) { return x; }
  static double to_double(double x) { return x; }
  static Rational to_rational(double x) { return Rational(x); }
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double abs(double x) { return std::fabs(x); }

  /// Breakpoints closer than this are merged when refining.
  static double merge_epsilon() { return 1e-15; }
  /// Default tolerance for class predicates.
  static double class_tolerance() { return 1e-12; }
  /// Default tolerance for inequality verdicts.
  static double verdict_tolerance() { return 1e-9; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr const char* name = "rational";

  static Rational from_double(double x) { return Rational(x); }
  static double to_double(const Rational& x) { return x.get_d(); }
  static Rational to_rational(const Rational& x) { return x; }
  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& x) { return Rational(::abs(x)); }

  static Rational merge_epsilon() { return Rational(0); }
  static Rational class_tolerance() { return Rational(0); }
  static Rational verdict_tolerance() { return Rational(0); }
};

template <class Scalar>
Scalar scalar_abs(const Scalar& x) {
  return ScalarTraits<Scalar>::abs(x);
}

template <class Scalar>
double to_double(const Scalar& x) {
  return ScalarTraits<Scalar>::to_double(x);
}

template <class To, class From>
To scalar_cast(const From& x) {
  return ScalarTraits<To>::from_rational(ScalarTraits<From>::to_rational(x));
}

/// Canonical exact text form: "n" or "n/d".
template <class Scalar>
std::string to_exact_string(const Scalar& x) {
  return ScalarTraits<Scalar>::to_rational(x).get_str();
}

/// Parses "n", "n/d" or a decimal literal such as "-0.125" or "3e-2".
/// Decimals are read exactly (0.1 becomes 1/10, not the nearest double).
Rational parse_rational(std::string_view text);

}  // namespace plineq
