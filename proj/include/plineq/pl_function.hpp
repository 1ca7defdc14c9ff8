#pragma once

#include <algorithm>
#include <cmath>
#include <iterator>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "plineq/scalar.hpp"

namespace plineq {

/// Continuous piecewise-linear function on [domain_lo, domain_hi].
///
/// Stored as strictly increasing breakpoints with one value each; the
/// function is the linear interpolant between consecutive breakpoints.
/// Immutable after construction, so instances can be shared freely
/// between threads.
template <class Scalar>
class PLFunction {
 public:
  using scalar_type = Scalar;

  PLFunction(std::vector<Scalar> breakpoints, std::vector<Scalar> values)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (breakpoints_.size() < 2) {
      throw std::invalid_argument("PLFunction needs at least 2 breakpoints");
    }
    if (breakpoints_.size() != values_.size()) {
      throw std::invalid_argument("PLFunction: " + std::to_string(breakpoints_.size()) +
                                  " breakpoints but " + std::to_string(values_.size()) + " values");
    }
    for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
      if (!std::isfinite(to_double(breakpoints_[i])) || !std::isfinite(to_double(values_[i]))) {
        throw std::invalid_argument("PLFunction: non-finite entry at index " + std::to_string(i));
      }
      if (i > 0 && !(breakpoints_[i - 1] < breakpoints_[i])) {
        throw std::invalid_argument("PLFunction: breakpoints not strictly increasing at index " +
                                    std::to_string(i));
      }
    }
  }

  static PLFunction constant(const Scalar& c, const Scalar& lo = Scalar(0), const Scalar& hi = Scalar(1)) {
    return PLFunction({lo, hi}, {c, c});
  }

  static PLFunction identity(const Scalar& lo = Scalar(0), const Scalar& hi = Scalar(1)) {
    return PLFunction({lo, hi}, {lo, hi});
  }

  /// Samples `fn` at `n` uniformly spaced points (chord interpolant).
  template <class Fn>
  static PLFunction sample(Fn&& fn, std::size_t n, const Scalar& lo = Scalar(0), const Scalar& hi = Scalar(1)) {
    if (n < 2) throw std::invalid_argument("PLFunction::sample needs n >= 2");
    std::vector<Scalar> xs(n), ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      xs[i] = i + 1 == n ? hi : Scalar(lo + (hi - lo) * Scalar(static_cast<long>(i)) / Scalar(static_cast<long>(n - 1)));
      ys[i] = fn(xs[i]);
    }
    return PLFunction(std::move(xs), std::move(ys));
  }

  const Scalar& domain_lo() const { return breakpoints_.front(); }
  const Scalar& domain_hi() const { return breakpoints_.back(); }
  std::size_t size() const { return breakpoints_.size(); }
  std::size_t pieces() const { return breakpoints_.size() - 1; }
  std::span<const Scalar> breakpoints() const { return breakpoints_; }
  std::span<const Scalar> values() const { return values_; }

  bool contains(const Scalar& x) const { return !(x < domain_lo()) && !(domain_hi() < x); }
  bool same_domain(const PLFunction& other) const {
    return domain_lo() == other.domain_lo() && domain_hi() == other.domain_hi();
  }

  Scalar operator()(const Scalar& x) const {
    if (!contains(x)) {
      throw std::domain_error("PLFunction: x=" + std::to_string(to_double(x)) + " outside [" +
                              std::to_string(to_double(domain_lo())) + ", " +
                              std::to_string(to_double(domain_hi())) + "]");
    }
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    std::size_t hi = static_cast<std::size_t>(it - breakpoints_.begin());
    if (hi == breakpoints_.size()) return values_.back();
    std::size_t lo = hi - 1;
    if (breakpoints_[lo] == x) return values_[lo];
    const Scalar t = (x - breakpoints_[lo]) / (breakpoints_[hi] - breakpoints_[lo]);
    return Scalar(values_[lo] + (values_[hi] - values_[lo]) * t);
  }

  template <class Other>
  PLFunction<Other> cast() const {
    std::vector<Other> xs, ys;
    xs.reserve(size());
    ys.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
      xs.push_back(scalar_cast<Other>(breakpoints_[i]));
      ys.push_back(scalar_cast<Other>(values_[i]));
    }
    return PLFunction<Other>(std::move(xs), std::move(ys));
  }

  friend bool operator==(const PLFunction& a, const PLFunction& b) {
    return a.breakpoints_ == b.breakpoints_ && a.values_ == b.values_;
  }

 private:
  std::vector<Scalar> breakpoints_;
  std::vector<Scalar> values_;
};

/// Closed interval [lo, hi].
template <class Scalar>
struct Interval {
  Scalar lo;
  Scalar hi;
};

template <class Scalar>
Interval<Scalar> domain_of(const PLFunction<Scalar>& f) {
  return {f.domain_lo(), f.domain_hi()};
}

template <class Scalar>
Scalar eval(const PLFunction<Scalar>& f, const Scalar& x) {
  return f(x);
}

template <class Scalar>
void require_same_domain(const PLFunction<Scalar>& f, const PLFunction<Scalar>& g) {
  if (!f.same_domain(g)) {
    throw std::domain_error("domain mismatch: [" + std::to_string(to_double(f.domain_lo())) + ", " +
                            std::to_string(to_double(f.domain_hi())) + "] vs [" +
                            std::to_string(to_double(g.domain_lo())) + ", " +
                            std::to_string(to_double(g.domain_hi())) + "]");
  }
}

/// Sorted union of two breakpoint sets. In float mode points closer than
/// the merge epsilon collapse onto the first one seen.
template <class Scalar>
std::vector<Scalar> merge_breakpoints(std::span<const Scalar> a, std::span<const Scalar> b) {
  std::vector<Scalar> merged;
  merged.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(merged));
  const Scalar eps = ScalarTraits<Scalar>::merge_epsilon();
  std::vector<Scalar> out;
  out.reserve(merged.size());
  for (const Scalar& x : merged) {
    if (out.empty() || Scalar(x - out.back()) > eps) out.push_back(x);
  }
  // Keep the exact right endpoint even if a nearby point absorbed it.
  if (!(out.back() == merged.back())) out.back() = merged.back();
  return out;
}

template <class Scalar>
std::vector<Scalar> refined_breakpoints(const PLFunction<Scalar>& f, const PLFunction<Scalar>& g) {
  require_same_domain(f, g);
  return merge_breakpoints<Scalar>(f.breakpoints(), g.breakpoints());
}

/// Exact integral (trapezoid rule is exact on each linear piece).
template <class Scalar>
Scalar integrate(const PLFunction<Scalar>& f) {
  auto xs = f.breakpoints();
  auto ys = f.values();
  Scalar sum(0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    sum += (xs[i + 1] - xs[i]) * (ys[i] + ys[i + 1]);
  }
  return Scalar(sum / Scalar(2));
}

/// Mean value (1/(b-a)) * integral.
template <class Scalar>
Scalar mean(const PLFunction<Scalar>& f) {
  return Scalar(integrate(f) / (f.domain_hi() - f.domain_lo()));
}

/// Exact integral of f*g over the common domain. On each refined piece the
/// product is quadratic and Simpson's rule reduces to
/// (b-a)/6 * (2 f1 g1 + f1 g2 + f2 g1 + 2 f2 g2).
template <class Scalar>
Scalar integrate_product(const PLFunction<Scalar>& f, const PLFunction<Scalar>& g) {
  const auto xs = refined_breakpoints(f, g);
  Scalar sum(0);
  Scalar f1 = f(xs.front());
  Scalar g1 = g(xs.front());
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Scalar f2 = f(xs[i + 1]);
    const Scalar g2 = g(xs[i + 1]);
    sum += (xs[i + 1] - xs[i]) * (Scalar(2) * f1 * g1 + f1 * g2 + f2 * g1 + Scalar(2) * f2 * g2);
    f1 = f2;
    g1 = g2;
  }
  return Scalar(sum / Scalar(6));
}

/// x -> f(lo + hi - x).
template <class Scalar>
PLFunction<Scalar> reflect(const PLFunction<Scalar>& f) {
  const Scalar shift = f.domain_lo() + f.domain_hi();
  std::vector<Scalar> xs, ys;
  xs.reserve(f.size());
  ys.reserve(f.size());
  auto bx = f.breakpoints();
  auto by = f.values();
  for (std::size_t i = f.size(); i-- > 0;) {
    xs.push_back(Scalar(shift - bx[i]));
    ys.push_back(by[i]);
  }
  // Endpoints must map exactly onto the domain even under rounding.
  xs.front() = f.domain_lo();
  xs.back() = f.domain_hi();
  return PLFunction<Scalar>(std::move(xs), std::move(ys));
}

/// a*f + b*g on the union of both breakpoint sets.
template <class Scalar>
PLFunction<Scalar> linear_combine(const Scalar& a, const PLFunction<Scalar>& f, const Scalar& b,
                                  const PLFunction<Scalar>& g) {
  auto xs = refined_breakpoints(f, g);
  std::vector<Scalar> ys;
  ys.reserve(xs.size());
  for (const Scalar& x : xs) ys.push_back(Scalar(a * f(x) + b * g(x)));
  return PLFunction<Scalar>(std::move(xs), std::move(ys));
}

/// (f(x) + f(lo + hi - x)) / 2.
template <class Scalar>
PLFunction<Scalar> symmetrize(const PLFunction<Scalar>& f) {
  const Scalar half = Scalar(1) / Scalar(2);
  return linear_combine(half, f, half, reflect(f));
}

/// c * f.
template <class Scalar>
PLFunction<Scalar> scale(const Scalar& c, const PLFunction<Scalar>& f) {
  std::vector<Scalar> ys;
  ys.reserve(f.size());
  for (const Scalar& v : f.values()) ys.push_back(Scalar(c * v));
  return PLFunction<Scalar>({f.breakpoints().begin(), f.breakpoints().end()}, std::move(ys));
}

template <class Scalar>
PLFunction<Scalar> negate(const PLFunction<Scalar>& f) {
  return scale(Scalar(-1), f);
}

/// f + c.
template <class Scalar>
PLFunction<Scalar> shift(const PLFunction<Scalar>& f, const Scalar& c) {
  std::vector<Scalar> ys;
  ys.reserve(f.size());
  for (const Scalar& v : f.values()) ys.push_back(Scalar(v + c));
  return PLFunction<Scalar>({f.breakpoints().begin(), f.breakpoints().end()}, std::move(ys));
}

/// f restricted to [lo, hi]; lo and hi become breakpoints.
template <class Scalar>
PLFunction<Scalar> restrict_to(const PLFunction<Scalar>& f, const Scalar& lo, const Scalar& hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("restrict_to: empty or inverted interval [" + std::to_string(to_double(lo)) +
                                ", " + std::to_string(to_double(hi)) + "]");
  }
  if (!f.contains(lo) || !f.contains(hi)) {
    throw std::domain_error("restrict_to: interval [" + std::to_string(to_double(lo)) + ", " +
                            std::to_string(to_double(hi)) + "] not inside the domain");
  }
  std::vector<Scalar> xs{lo};
  std::vector<Scalar> ys{f(lo)};
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Scalar& x = f.breakpoints()[i];
    if (lo < x && x < hi) {
      xs.push_back(x);
      ys.push_back(f.values()[i]);
    }
  }
  xs.push_back(hi);
  ys.push_back(f(hi));
  return PLFunction<Scalar>(std::move(xs), std::move(ys));
}

template <class Scalar>
PLFunction<Scalar> restrict_to(const PLFunction<Scalar>& f, const Interval<Scalar>& on) {
  return restrict_to(f, on.lo, on.hi);
}

/// max |f|; attained at a breakpoint.
template <class Scalar>
Scalar sup_norm(const PLFunction<Scalar>& f) {
  Scalar m(0);
  for (const Scalar& v : f.values()) {
    const Scalar a = scalar_abs(v);
    if (a > m) m = a;
  }
  return m;
}

}  // namespace plineq
