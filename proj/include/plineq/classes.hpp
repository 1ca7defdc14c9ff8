#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "plineq/pl_function.hpp"

namespace plineq {

enum class FunctionClass { convex, concave, symmetric, nonnegative, nondecreasing_on, nonincreasing_on };
enum class Monotonicity { nondecreasing, nonincreasing };
enum class MClass { plus, minus };

std::string_view to_string(FunctionClass c);
std::string_view to_string(Monotonicity m);
std::string_view to_string(MClass m);

/// Outcome of testing one function against one class.
/// `holds` is true iff no violation was found; a recorded violation always
/// exceeds `tolerance`.
template <class Scalar>
struct ClassReport {
  FunctionClass class_name;
  bool holds = true;
  Scalar tolerance{0};
  std::optional<Scalar> violation_at;
  std::optional<Scalar> violation_magnitude;
};

/// M+/M- classification.
///
/// For M+, points where f is below its mean must lie left of some c and
/// points above the mean right of it. [c_lo, c_hi] is the full set of such
/// c. When f is not in the class, `certificate` holds (x_below, x_above)
/// with f(x_below) < mean and f(x_above) > mean placed so that no c can
/// separate them (x_above < x_below for M+, x_below < x_above for M-).
template <class Scalar>
struct MWitness {
  bool in_class = false;
  MClass direction = MClass::plus;
  Scalar mean{0};
  std::optional<Scalar> c_lo;
  std::optional<Scalar> c_hi;
  std::optional<std::pair<Scalar, Scalar>> certificate;
};

namespace detail {

template <class Scalar>
ClassReport<Scalar> violation(FunctionClass c, const Scalar& tol, const Scalar& at, const Scalar& magnitude) {
  return {c, false, tol, at, magnitude};
}

template <class Scalar>
void require_proper(const Interval<Scalar>& on) {
  if (!(on.lo < on.hi)) throw std::invalid_argument("class predicate on a degenerate interval");
}

}  // namespace detail

/// Slope monotonicity test. Consecutive slopes may decrease by at most
/// tol * (1 + max|slope|).
template <class Scalar>
ClassReport<Scalar> is_convex(const PLFunction<Scalar>& f, const Interval<Scalar>& on,
                              const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  detail::require_proper(on);
  const auto r = restrict_to(f, on);
  const auto xs = r.breakpoints();
  const auto ys = r.values();
  std::vector<Scalar> slopes;
  slopes.reserve(r.pieces());
  Scalar max_slope(0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    slopes.push_back(Scalar((ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])));
    const Scalar a = scalar_abs(slopes.back());
    if (a > max_slope) max_slope = a;
  }
  const Scalar slack = tol * (Scalar(1) + max_slope);
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
    const Scalar drop = slopes[i] - slopes[i + 1];
    if (drop > slack) return detail::violation(FunctionClass::convex, tol, xs[i + 1], drop);
  }
  return {FunctionClass::convex, true, tol, std::nullopt, std::nullopt};
}

template <class Scalar>
ClassReport<Scalar> is_convex(const PLFunction<Scalar>& f, const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  return is_convex(f, domain_of(f), tol);
}

template <class Scalar>
ClassReport<Scalar> is_concave(const PLFunction<Scalar>& f, const Interval<Scalar>& on,
                               const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  auto report = is_convex(negate(f), on, tol);
  report.class_name = FunctionClass::concave;
  return report;
}

template <class Scalar>
ClassReport<Scalar> is_concave(const PLFunction<Scalar>& f, const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  return is_concave(f, domain_of(f), tol);
}

/// f(x) == f(lo + hi - x) at every breakpoint of f and its mirror image.
template <class Scalar>
ClassReport<Scalar> is_symmetric(const PLFunction<Scalar>& f, const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  const auto mirrored = reflect(f);
  const auto xs = merge_breakpoints<Scalar>(f.breakpoints(), mirrored.breakpoints());
  for (const Scalar& x : xs) {
    const Scalar gap = scalar_abs(Scalar(f(x) - mirrored(x)));
    if (gap > tol) return detail::violation(FunctionClass::symmetric, tol, x, gap);
  }
  return {FunctionClass::symmetric, true, tol, std::nullopt, std::nullopt};
}

template <class Scalar>
ClassReport<Scalar> is_monotone_on(const PLFunction<Scalar>& f, const Interval<Scalar>& on, Monotonicity direction,
                                   const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  detail::require_proper(on);
  const auto r = restrict_to(f, on);
  const auto xs = r.breakpoints();
  const auto ys = r.values();
  const auto name = direction == Monotonicity::nondecreasing ? FunctionClass::nondecreasing_on
                                                             : FunctionClass::nonincreasing_on;
  for (std::size_t i = 0; i + 1 < ys.size(); ++i) {
    const Scalar step = direction == Monotonicity::nondecreasing ? Scalar(ys[i] - ys[i + 1])
                                                                 : Scalar(ys[i + 1] - ys[i]);
    if (step > tol) return detail::violation(name, tol, xs[i], step);
  }
  return {name, true, tol, std::nullopt, std::nullopt};
}

template <class Scalar>
ClassReport<Scalar> is_monotone_on(const PLFunction<Scalar>& f, Monotonicity direction,
                                   const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  return is_monotone_on(f, domain_of(f), direction, tol);
}

/// The minimum of a PL function sits at a breakpoint.
template <class Scalar>
ClassReport<Scalar> is_nonnegative(const PLFunction<Scalar>& f, const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Scalar v = f.values()[i];
    if (v < Scalar(-tol)) return detail::violation(FunctionClass::nonnegative, tol, f.breakpoints()[i], Scalar(-v));
  }
  return {FunctionClass::nonnegative, true, tol, std::nullopt, std::nullopt};
}

namespace detail {

// x in [x0, x1] where the segment (x0,v0)-(x1,v1) meets level.
template <class Scalar>
Scalar crossing(const Scalar& x0, const Scalar& v0, const Scalar& x1, const Scalar& v1, const Scalar& level) {
  return Scalar(x0 + (level - v0) / (v1 - v0) * (x1 - x0));
}

template <class Scalar>
MWitness<Scalar> classify_m_plus(const PLFunction<Scalar>& f, const Scalar& tol) {
  MWitness<Scalar> w;
  w.direction = MClass::plus;
  w.mean = mean(f);
  const Scalar below = w.mean - tol;  // S_below = {f < below}
  const Scalar above = w.mean + tol;  // S_above = {f > above}
  const auto xs = f.breakpoints();
  const auto ys = f.values();

  // Sup of S_below and inf of S_above, piece by piece.
  std::optional<Scalar> sup_below, inf_above;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Scalar &x0 = xs[i], &x1 = xs[i + 1], &v0 = ys[i], &v1 = ys[i + 1];
    std::optional<Scalar> s;
    if (v1 < below) {
      s = x1;
    } else if (v0 < below) {
      s = crossing(x0, v0, x1, v1, below);
    }
    if (s && (!sup_below || *sup_below < *s)) sup_below = s;

    std::optional<Scalar> t;
    if (v0 > above) {
      t = x0;
    } else if (v1 > above) {
      t = crossing(x0, v0, x1, v1, above);
    }
    if (t && (!inf_above || *t < *inf_above)) inf_above = t;
  }

  const Scalar c_lo = sup_below.value_or(f.domain_lo());
  const Scalar c_hi = inf_above.value_or(f.domain_hi());
  if (!(c_hi < c_lo)) {
    w.in_class = true;
    w.c_lo = c_lo;
    w.c_hi = c_hi;
    return w;
  }

  // Both sets are nonempty here. Every component of either set contains a
  // breakpoint or the midpoint of a sub-piece cut at the crossings, so the
  // rightmost sampled below-point and leftmost sampled above-point refute
  // every c.
  std::vector<Scalar> cuts(xs.begin(), xs.end());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    for (const Scalar* level : {&below, &above}) {
      const Scalar lo_v = ys[i] < ys[i + 1] ? ys[i] : ys[i + 1];
      const Scalar hi_v = ys[i] < ys[i + 1] ? ys[i + 1] : ys[i];
      if (lo_v < *level && *level < hi_v) cuts.push_back(crossing(xs[i], ys[i], xs[i + 1], ys[i + 1], *level));
    }
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Scalar> samples;
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    samples.push_back(cuts[i]);
    if (i + 1 < cuts.size() && cuts[i] < cuts[i + 1]) samples.push_back(Scalar((cuts[i] + cuts[i + 1]) / Scalar(2)));
  }
  std::optional<Scalar> x_below, x_above;
  for (const Scalar& x : samples) {
    const Scalar v = f(x);
    if (v < below && (!x_below || *x_below < x)) x_below = x;
    if (v > above && (!x_above || x < *x_above)) x_above = x;
  }
  w.in_class = false;
  // Float rounding near a crossing can hide a sample; fall back to the bounds.
  w.certificate = std::make_pair(x_below.value_or(c_lo), x_above.value_or(c_hi));
  return w;
}

}  // namespace detail

/// Decides membership in M+ (or M-) with a strictness band of width 2*tol
/// around the mean. Membership is judged on the open domain, so a single
/// endpoint value never decides it.
template <class Scalar>
MWitness<Scalar> classify_m(const PLFunction<Scalar>& f, MClass direction,
                            const Scalar& tol = ScalarTraits<Scalar>::class_tolerance()) {
  if (direction == MClass::plus) return detail::classify_m_plus(f, tol);
  // f in M- iff -f in M+; below/above swap roles.
  auto w = detail::classify_m_plus(negate(f), tol);
  w.direction = MClass::minus;
  w.mean = Scalar(-w.mean);
  if (w.certificate) w.certificate = std::make_pair(w.certificate->second, w.certificate->first);
  return w;
}

}  // namespace plineq
