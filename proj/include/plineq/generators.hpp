#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "plineq/classes.hpp"
#include "plineq/pl_function.hpp"
#include "plineq/random.hpp"

namespace plineq {

enum class GridKind { uniform, random };

struct GenConfig {
  std::uint64_t seed = 0;
  int n_breakpoints = 17;
  double value_scale = 1.0;
  GridKind grid = GridKind::uniform;
  // Domain endpoints; must be dyadic so mirrored grids stay exact.
  double domain_lo = 0.0;
  double domain_hi = 1.0;

  void validate() const;
  GenConfig with_seed(std::uint64_t s) const {
    GenConfig c = *this;
    c.seed = s;
    return c;
  }
};

namespace detail {

/// n strictly increasing dyadic points from lo to hi.
std::vector<double> make_grid(Rng& rng, GridKind kind, int n, double lo, double hi);

/// Grid on [lo, (lo+hi)/2] with ceil(n/2) + (n even) points, so that its
/// mirror image has n points (n+1 when n is even) and contains the midpoint.
std::vector<double> make_half_grid(Rng& rng, GridKind kind, int n, double lo, double hi);

/// Mirrors half-domain data about the midpoint. Breakpoint lists are
/// reflected as lo+hi-x, value lists are copied.
std::vector<double> mirror_points(const std::vector<double>& half, double lo, double hi);

template <class Scalar>
std::vector<Scalar> to_scalars(const std::vector<double>& xs) {
  std::vector<Scalar> out;
  out.reserve(xs.size());
  for (double x : xs) out.push_back(ScalarTraits<Scalar>::from_double(x));
  return out;
}

template <class Scalar>
std::vector<Scalar> mirror_values(const std::vector<Scalar>& half) {
  std::vector<Scalar> out(half);
  for (std::size_t i = half.size() - 1; i-- > 0;) out.push_back(half[i]);
  return out;
}

/// Values of the PL function with the given start value and per-piece slopes.
template <class Scalar>
std::vector<Scalar> integrate_slopes(const std::vector<Scalar>& xs, const Scalar& start,
                                     const std::vector<Scalar>& slopes) {
  std::vector<Scalar> ys{start};
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) ys.push_back(Scalar(ys.back() + slopes[i] * (xs[i + 1] - xs[i])));
  return ys;
}

template <class Scalar>
std::vector<Scalar> sorted_draws(Rng& rng, std::size_t n, double lo, double hi, double scale) {
  std::vector<double> d(n);
  for (auto& v : d) v = quantize(scale * rng.dyadic(lo, hi));
  std::sort(d.begin(), d.end());
  return to_scalars<Scalar>(d);
}

}  // namespace detail

/// Convex PL function: sorted slope draws integrated from a random start value.
template <class Scalar>
PLFunction<Scalar> gen_convex(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  auto xs = detail::to_scalars<Scalar>(detail::make_grid(rng, cfg.grid, cfg.n_breakpoints, cfg.domain_lo, cfg.domain_hi));
  auto slopes = detail::sorted_draws<Scalar>(rng, xs.size() - 1, -1.0, 1.0, cfg.value_scale);
  // Sorted draws on a symmetric range are nearly always V-shaped; a third
  // of the draws are tilted to be non-decreasing, a third non-increasing.
  const auto shape = rng.below(3);
  if (shape > 0) {
    const Scalar tilt = shape == 1 ? Scalar(-slopes.front()) : Scalar(-slopes.back());
    for (auto& s : slopes) s += tilt;
  }
  const Scalar start = ScalarTraits<Scalar>::from_double(quantize(cfg.value_scale * rng.dyadic(-1.0, 1.0)));
  auto ys = detail::integrate_slopes(xs, start, slopes);
  return PLFunction<Scalar>(std::move(xs), std::move(ys));
}

template <class Scalar>
PLFunction<Scalar> gen_concave(const GenConfig& cfg) {
  return negate(gen_convex<Scalar>(cfg));
}

/// Symmetric weight, nonnegative and non-decreasing on the left half.
template <class Scalar>
PLFunction<Scalar> gen_ls_weight(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const auto half = detail::make_half_grid(rng, cfg.grid, cfg.n_breakpoints, cfg.domain_lo, cfg.domain_hi);
  std::vector<Scalar> ys;
  Scalar level = ScalarTraits<Scalar>::from_double(quantize(cfg.value_scale * rng.dyadic(0.0, 1.0)));
  ys.push_back(level);
  for (std::size_t i = 1; i < half.size(); ++i) {
    level += ScalarTraits<Scalar>::from_double(quantize(cfg.value_scale * rng.dyadic(0.0, 1.0)));
    ys.push_back(level);
  }
  return PLFunction<Scalar>(detail::to_scalars<Scalar>(detail::mirror_points(half, cfg.domain_lo, cfg.domain_hi)),
                            detail::mirror_values(ys));
}

/// min(x - lo, hi - x): the tent weight used as a fixed reference.
template <class Scalar>
PLFunction<Scalar> tent_weight(const Scalar& lo = Scalar(0), const Scalar& hi = Scalar(1)) {
  const Scalar mid = (lo + hi) / Scalar(2);
  return PLFunction<Scalar>({lo, mid, hi}, {Scalar(0), Scalar(mid - lo), Scalar(0)});
}

/// 4 min(x, 1 - x): the extremal admissible q.
template <class Scalar>
PLFunction<Scalar> q0() {
  return PLFunction<Scalar>({Scalar(0), Scalar(1) / Scalar(2), Scalar(1)}, {Scalar(0), Scalar(2), Scalar(0)});
}

/// Scales a nonnegative, not identically zero function to unit integral.
template <class Scalar>
PLFunction<Scalar> normalize_integral(const PLFunction<Scalar>& f) {
  const Scalar total = integrate(f);
  if (!(total > Scalar(0))) throw std::invalid_argument("normalize_integral: integral is not positive");
  std::vector<Scalar> ys;
  for (const Scalar& v : f.values()) ys.push_back(Scalar(v / total));
  return PLFunction<Scalar>({f.breakpoints().begin(), f.breakpoints().end()}, std::move(ys));
}

/// Symmetric q, convex on the left half, q(lo) = 0, unit integral.
/// Draws whose slopes all vanish are redrawn.
template <class Scalar>
PLFunction<Scalar> gen_admissible_q(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  const auto half = detail::make_half_grid(rng, cfg.grid, cfg.n_breakpoints, cfg.domain_lo, cfg.domain_hi);
  const auto hx = detail::to_scalars<Scalar>(half);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const auto slopes = detail::sorted_draws<Scalar>(rng, hx.size() - 1, 0.0, 1.0, 1.0);
    if (slopes.back() == Scalar(0)) continue;
    const auto ys = detail::integrate_slopes(hx, Scalar(0), slopes);
    PLFunction<Scalar> raw(detail::to_scalars<Scalar>(detail::mirror_points(half, cfg.domain_lo, cfg.domain_hi)),
                           detail::mirror_values(ys));
    return normalize_integral(raw);
  }
  throw std::runtime_error("gen_admissible_q: no usable draw after 64 attempts");
}

/// Concave phi with phi(lo) + phi(hi) >= 0; violating draws are shifted up.
template <class Scalar>
PLFunction<Scalar> gen_concave_admissible_phi(const GenConfig& cfg) {
  auto phi = gen_concave<Scalar>(cfg);
  const Scalar ends = phi.values().front() + phi.values().back();
  if (ends < Scalar(0)) {
    Rng rng(derive_seed(cfg.seed, 1));
    const Scalar extra = ScalarTraits<Scalar>::from_double(quantize(cfg.value_scale * rng.dyadic(0.0, 0.25)));
    phi = shift(phi, Scalar(-ends / Scalar(2) + extra));
  }
  return phi;
}

/// Sorted random values in the requested direction.
template <class Scalar>
PLFunction<Scalar> gen_monotone(const GenConfig& cfg, Monotonicity direction) {
  cfg.validate();
  Rng rng(cfg.seed);
  auto xs = detail::to_scalars<Scalar>(detail::make_grid(rng, cfg.grid, cfg.n_breakpoints, cfg.domain_lo, cfg.domain_hi));
  auto ys = detail::sorted_draws<Scalar>(rng, xs.size(), -1.0, 1.0, cfg.value_scale);
  if (direction == Monotonicity::nonincreasing) std::reverse(ys.begin(), ys.end());
  return PLFunction<Scalar>(std::move(xs), std::move(ys));
}

/// Unconstrained PL function with values in [-scale, scale].
template <class Scalar>
PLFunction<Scalar> gen_free(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  auto xs = detail::to_scalars<Scalar>(detail::make_grid(rng, cfg.grid, cfg.n_breakpoints, cfg.domain_lo, cfg.domain_hi));
  std::vector<Scalar> ys;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    ys.push_back(ScalarTraits<Scalar>::from_double(quantize(cfg.value_scale * rng.dyadic(-1.0, 1.0))));
  }
  return PLFunction<Scalar>(std::move(xs), std::move(ys));
}

/// M+ member built from a sign split: values are <= 0 before a random
/// breakpoint and >= 0 from it on, balanced to zero mean, then offset.
/// Below-mean points thus all precede above-mean points.
template <class Scalar>
PLFunction<Scalar> gen_m_plus(const GenConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  auto xs = detail::to_scalars<Scalar>(detail::make_grid(rng, cfg.grid, cfg.n_breakpoints, cfg.domain_lo, cfg.domain_hi));
  const std::size_t n = xs.size();
  const std::size_t split = 1 + static_cast<std::size_t>(rng.below(n - 1));
  std::vector<Scalar> mags;
  for (std::size_t i = 0; i < n; ++i) mags.push_back(ScalarTraits<Scalar>::from_double(rng.dyadic(0.0, 1.0)));

  // Trapezoid weights make the integral linear in the values.
  std::vector<Scalar> weight(n, Scalar(0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Scalar h = (xs[i + 1] - xs[i]) / Scalar(2);
    weight[i] += h;
    weight[i + 1] += h;
  }
  Scalar neg_mass(0), pos_mass(0);
  for (std::size_t i = 0; i < n; ++i) (i < split ? neg_mass : pos_mass) += weight[i] * mags[i];

  std::vector<Scalar> ys(n, Scalar(0));
  if (neg_mass > Scalar(0) && pos_mass > Scalar(0)) {
    for (std::size_t i = 0; i < n; ++i) ys[i] = i < split ? Scalar(-pos_mass * mags[i]) : Scalar(neg_mass * mags[i]);
    Scalar peak(0);
    for (const auto& v : ys) peak = std::max(peak, scalar_abs(v));
    const Scalar target = ScalarTraits<Scalar>::from_double(cfg.value_scale);
    for (auto& v : ys) v = Scalar(v * target / peak);
  }
  const Scalar offset = ScalarTraits<Scalar>::from_double(quantize(cfg.value_scale * rng.dyadic(-1.0, 1.0)));
  for (auto& v : ys) v += offset;
  return PLFunction<Scalar>(std::move(xs), std::move(ys));
}

/// Convex h with zero mean and h(lo) <= 0. A convex draw is centred, and
/// if its left value is still positive a zero-mean linear term tilts it down.
template <class Scalar>
PLFunction<Scalar> gen_implicit_m_plus(const GenConfig& cfg) {
  auto h = gen_convex<Scalar>(cfg);
  h = shift(h, Scalar(-mean(h)));
  const Scalar left = h.values().front();
  if (left > Scalar(0)) {
    Rng rng(derive_seed(cfg.seed, 2));
    const Scalar lo = h.domain_lo(), hi = h.domain_hi();
    const Scalar mid = (lo + hi) / Scalar(2);
    const Scalar tilt = Scalar(Scalar(2) * left / (hi - lo)) +
                        ScalarTraits<Scalar>::from_double(quantize(cfg.value_scale * rng.dyadic(0.0, 1.0)));
    std::vector<Scalar> ys;
    for (std::size_t i = 0; i < h.size(); ++i) ys.push_back(Scalar(h.values()[i] + tilt * (h.breakpoints()[i] - mid)));
    h = PLFunction<Scalar>({h.breakpoints().begin(), h.breakpoints().end()}, std::move(ys));
  }
  return h;
}

}  // namespace plineq
