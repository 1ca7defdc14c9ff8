#include "plineq/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "plineq/random.hpp"

namespace plineq {

namespace {

constexpr int kParamBits = 16;
constexpr double kSupNormCap = 8.0;

double clamp_param(double t) { return quantize(std::clamp(t, -1.0, 1.0), kParamBits); }

bool active(const SearchProblem& pb, std::string_view h) { return !pb.dropped_hypotheses.contains(std::string(h)); }

/// Reads parameters in order. In counting mode (empty span) every read
/// yields 0.5 and only the number of reads matters.
template <class Scalar>
class ParamReader {
 public:
  explicit ParamReader(std::span<const double> params) : params_(params) {}

  Scalar next() {
    const double t = params_.empty() ? 0.5 : clamp_param(params_[used_]);
    ++used_;
    return ScalarTraits<Scalar>::from_double(t);
  }
  Scalar next_abs() { return scalar_abs(next()); }
  Scalar next_signed(bool nonnegative) { return nonnegative ? next_abs() : next(); }
  double next_raw() {
    const double t = params_.empty() ? 0.5 : clamp_param(params_[used_]);
    ++used_;
    return t;
  }
  std::size_t used() const { return used_; }

 private:
  std::span<const double> params_;
  std::size_t used_ = 0;
};

std::vector<double> half_grid(int n) {
  const int m = n / 2 + 1;
  std::vector<double> xs;
  for (int i = 0; i < m; ++i) xs.push_back(i == m - 1 ? 0.5 : quantize(0.5 * i / (m - 1)));
  return xs;
}

std::vector<double> mirrored_grid(int n) {
  auto half = half_grid(n);
  auto out = half;
  for (std::size_t i = half.size() - 1; i-- > 0;) out.push_back(1.0 - half[i]);
  return out;
}

template <class Scalar>
std::vector<Scalar> scalars(const std::vector<double>& xs) {
  std::vector<Scalar> out;
  for (double x : xs) out.push_back(ScalarTraits<Scalar>::from_double(x));
  return out;
}

template <class Scalar>
std::vector<Scalar> nondecreasing_values(ParamReader<Scalar>& in, std::size_t n, bool nonnegative_start) {
  std::vector<Scalar> ys{in.next_signed(nonnegative_start)};
  while (ys.size() < n) ys.push_back(Scalar(ys.back() + in.next_abs()));
  return ys;
}

template <class Scalar>
std::vector<Scalar> free_values(ParamReader<Scalar>& in, std::size_t n, bool nonnegative) {
  std::vector<Scalar> ys;
  while (ys.size() < n) ys.push_back(in.next_signed(nonnegative));
  return ys;
}

/// Convex values on xs: start value, first slope, then slope increments.
template <class Scalar>
std::vector<Scalar> convex_values(ParamReader<Scalar>& in, const std::vector<Scalar>& xs, const Scalar& start,
                                  bool nonnegative_slopes) {
  std::vector<Scalar> ys{start};
  Scalar slope = in.next_signed(nonnegative_slopes);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (i > 0) slope += in.next_abs();
    ys.push_back(Scalar(ys.back() + slope * (xs[i + 1] - xs[i])));
  }
  return ys;
}

template <class Scalar>
std::vector<Scalar> mirror(const std::vector<Scalar>& half) {
  std::vector<Scalar> out(half);
  for (std::size_t i = half.size() - 1; i-- > 0;) out.push_back(half[i]);
  return out;
}

template <class Scalar>
PLFunction<Scalar> cap_sup_norm(const PLFunction<Scalar>& f) {
  const Scalar cap = ScalarTraits<Scalar>::from_double(kSupNormCap);
  const Scalar s = sup_norm(f);
  if (s > cap) return scale(Scalar(cap / s), f);
  return f;
}

/// Symmetric-grid weight p governed by p_symmetric / p_nondecreasing_half
/// / p_nonnegative (the last only when the inequality states it).
template <class Scalar>
PLFunction<Scalar> build_weight(const SearchProblem& pb, ParamReader<Scalar>& in, bool nonneg_is_hypothesis) {
  const auto half = half_grid(pb.n_breakpoints);
  const bool sym = active(pb, hyp::p_symmetric);
  const bool mono = active(pb, hyp::p_nondecreasing_half);
  const bool nonneg = nonneg_is_hypothesis && active(pb, hyp::p_nonnegative);
  auto left = mono ? nondecreasing_values(in, half.size(), nonneg) : free_values(in, half.size(), nonneg);
  std::vector<Scalar> ys;
  if (sym) {
    ys = mirror(left);
  } else {
    ys = left;
    auto right = free_values(in, half.size() - 1, nonneg);
    ys.insert(ys.end(), right.begin(), right.end());
  }
  return cap_sup_norm(PLFunction<Scalar>(scalars<Scalar>(mirrored_grid(pb.n_breakpoints)), std::move(ys)));
}

template <class Scalar>
std::optional<PLFunction<Scalar>> build_q(const SearchProblem& pb, ParamReader<Scalar>& in) {
  const auto half = scalars<Scalar>(half_grid(pb.n_breakpoints));
  const bool sym = active(pb, hyp::q_symmetric);
  const bool nonneg = active(pb, hyp::q_nonnegative);
  const bool convex = active(pb, hyp::q_convex_half);
  const bool zero = active(pb, hyp::q_zero_at_0);
  const bool unit = active(pb, hyp::q_unit_integral);

  const Scalar start = zero ? Scalar(0) : in.next_signed(nonneg);
  std::vector<Scalar> left;
  if (convex) {
    left = convex_values(in, half, start, nonneg);
  } else {
    left.push_back(start);
    auto rest = free_values(in, half.size() - 1, nonneg);
    left.insert(left.end(), rest.begin(), rest.end());
  }
  std::vector<Scalar> ys;
  if (sym) {
    ys = mirror(left);
  } else {
    ys = left;
    auto right = free_values(in, half.size() - 1, nonneg);
    ys.insert(ys.end(), right.begin(), right.end());
  }
  PLFunction<Scalar> q(scalars<Scalar>(mirrored_grid(pb.n_breakpoints)), std::move(ys));
  if (!unit) return cap_sup_norm(q);
  const Scalar total = integrate(q);
  if (!(total > Scalar(0))) return std::nullopt;
  return scale(Scalar(Scalar(1) / total), q);
}

/// phi on the symmetric grid: convex for Levin-Steckin, concave for the
/// Clausing family.
template <class Scalar>
std::optional<PLFunction<Scalar>> build_phi(const SearchProblem& pb, ParamReader<Scalar>& in) {
  const auto xs = scalars<Scalar>(mirrored_grid(pb.n_breakpoints));
  std::vector<Scalar> ys;
  if (pb.inequality == InequalityKind::levin_steckin) {
    if (active(pb, hyp::phi_convex)) {
      ys = convex_values(in, xs, in.next(), false);
    } else {
      ys = free_values(in, xs.size(), false);
    }
    return cap_sup_norm(PLFunction<Scalar>(xs, std::move(ys)));
  }

  if (active(pb, hyp::phi_concave)) {
    const Scalar start = in.next();
    ys = convex_values(in, xs, start, false);
    for (auto& y : ys) y = Scalar(-y);
  } else {
    ys = free_values(in, xs.size(), false);
  }
  PLFunction<Scalar> phi(xs, std::move(ys));
  if (pb.inequality == InequalityKind::clausing_classic) {
    if (active(pb, hyp::phi_positive)) {
      Scalar lowest = phi.values().front();
      for (const auto& v : phi.values()) lowest = v < lowest ? v : lowest;
      if (lowest < Scalar(0)) phi = shift(phi, Scalar(-lowest));
      if (!(integrate(phi) > Scalar(0))) return std::nullopt;
    }
  } else if (active(pb, hyp::phi_endpoint_sum)) {
    const Scalar ends = phi.values().front() + phi.values().back();
    if (ends < Scalar(0)) phi = shift(phi, Scalar(-ends / Scalar(2)));
  }
  return cap_sup_norm(phi);
}

/// Grid with searchable positions: gaps 1/16 + |t|, normalized to [0, 1].
template <class Scalar>
std::optional<std::vector<Scalar>> free_grid(int n, ParamReader<Scalar>& in) {
  std::vector<double> gaps;
  for (int i = 0; i + 1 < n; ++i) gaps.push_back(0.0625 + std::fabs(in.next_raw()));
  const double total = std::accumulate(gaps.begin(), gaps.end(), 0.0);
  std::vector<double> xs{0.0};
  double run = 0.0;
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    run += gaps[i];
    xs.push_back(quantize(run / total));
  }
  xs.push_back(1.0);
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (!(xs[i] < xs[i + 1])) return std::nullopt;
  }
  return scalars<Scalar>(xs);
}

/// M+ member from a sign split, as in gen_m_plus but parameter driven.
template <class Scalar>
PLFunction<Scalar> build_m_plus(const std::vector<Scalar>& xs, ParamReader<Scalar>& in) {
  const std::size_t n = xs.size();
  const double split_param = in.next_raw();
  std::size_t split = 1 + static_cast<std::size_t>(std::floor((split_param + 1.0) / 2.0 * static_cast<double>(n - 1)));
  split = std::clamp<std::size_t>(split, 1, n - 1);
  std::vector<Scalar> mags;
  for (std::size_t i = 0; i < n; ++i) mags.push_back(in.next_abs());
  const Scalar offset = in.next();

  std::vector<Scalar> weight(n, Scalar(0));
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const Scalar h = (xs[i + 1] - xs[i]) / Scalar(2);
    weight[i] += h;
    weight[i + 1] += h;
  }
  Scalar neg(0), pos(0);
  for (std::size_t i = 0; i < n; ++i) (i < split ? neg : pos) += weight[i] * mags[i];
  std::vector<Scalar> ys(n, offset);
  if (neg > Scalar(0) && pos > Scalar(0)) {
    for (std::size_t i = 0; i < n; ++i) ys[i] = Scalar(offset + (i < split ? Scalar(-pos * mags[i]) : Scalar(neg * mags[i])));
  }
  return cap_sup_norm(PLFunction<Scalar>(xs, std::move(ys)));
}

template <class Scalar>
std::optional<Case<Scalar>> project(const SearchProblem& pb, std::span<const double> params, std::size_t* used) {
  ParamReader<Scalar> in(params);
  Case<Scalar> c{pb.inequality, std::nullopt, {}};
  bool feasible = true;
  auto put = [&](const char* slot, std::optional<PLFunction<Scalar>> f) {
    if (f) {
      c.functions.emplace(slot, std::move(*f));
    } else {
      feasible = false;
    }
  };

  switch (pb.inequality) {
    case InequalityKind::levin_steckin:
      put("p", build_weight(pb, in, false));
      put("phi", build_phi(pb, in));
      break;
    case InequalityKind::clausing_general:
      put("p", build_weight(pb, in, true));
      put("q", build_q(pb, in));
      put("phi", build_phi(pb, in));
      break;
    case InequalityKind::clausing_classic:
      put("p", build_weight(pb, in, true));
      put("phi", build_phi(pb, in));
      break;
    case InequalityKind::q0_sharpness:
      put("p", build_weight(pb, in, true));
      put("q", build_q(pb, in));
      break;
    case InequalityKind::chebyshev:
    case InequalityKind::chebyshev_m: {
      auto xs = free_grid(pb.n_breakpoints, in);
      const bool m_kind = pb.inequality == InequalityKind::chebyshev_m;
      const bool f_ok = active(pb, m_kind ? hyp::f_m_class : hyp::f_monotone);
      const bool g_ok = active(pb, hyp::g_monotone);
      // Read a fixed grid's worth of parameters even if positions collapsed.
      const auto grid = xs ? *xs : scalars<Scalar>(mirrored_grid(pb.n_breakpoints));
      PLFunction<Scalar> f = m_kind && f_ok ? build_m_plus(grid, in)
                                            : PLFunction<Scalar>(grid, f_ok ? nondecreasing_values(in, grid.size(), false)
                                                                            : free_values(in, grid.size(), false));
      PLFunction<Scalar> g(grid, g_ok ? nondecreasing_values(in, grid.size(), false) : free_values(in, grid.size(), false));
      f = cap_sup_norm(f);
      g = cap_sup_norm(g);
      if (m_kind) {
        c.variant = pb.variant;
        const bool f_minus = pb.variant == ChebyshevMVariant::minus_nondecreasing ||
                             pb.variant == ChebyshevMVariant::minus_nonincreasing;
        const bool g_down = pb.variant == ChebyshevMVariant::minus_nonincreasing ||
                            pb.variant == ChebyshevMVariant::plus_nonincreasing;
        if (f_minus) f = negate(f);
        if (g_down) g = negate(g);
      }
      put("f", std::move(f));
      put("g", std::move(g));
      if (!xs) feasible = false;
      break;
    }
    case InequalityKind::ls_symmetric:
    case InequalityKind::hermite_hadamard:
      throw std::invalid_argument(std::string(to_string(pb.inequality)) + " has no search projection");
  }
  if (used) *used = in.used();
  if (!feasible) return std::nullopt;
  return c;
}

struct Evaluation {
  double margin;
  bool feasible;
};

Evaluation evaluate_float(const SearchProblem& pb, std::span<const double> params) {
  auto c = project_float(pb, params);
  if (!c) return {std::numeric_limits<double>::infinity(), false};
  return {evaluate(*c).margin, true};
}

std::string join(const std::set<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return "{" + out + "}";
}

}  // namespace

void SearchProblem::validate() const {
  if (budget == 0) throw std::invalid_argument("search budget must be positive");
  if (n_breakpoints < 3) throw std::invalid_argument("search needs n_breakpoints >= 3");
  const auto& allowed = searchable_hypotheses(inequality);
  if (allowed.empty()) {
    throw std::invalid_argument(std::string(to_string(inequality)) + " has no search projection");
  }
  std::set<std::string> unknown;
  for (const auto& h : dropped_hypotheses) {
    if (std::find(allowed.begin(), allowed.end(), h) == allowed.end()) unknown.insert(h);
  }
  if (!unknown.empty()) {
    throw std::invalid_argument("hypotheses " + join(unknown) + " are not part of " +
                                std::string(to_string(inequality)));
  }
}

const std::vector<std::string>& searchable_hypotheses(InequalityKind k) {
  static const std::vector<std::string> ls{std::string(hyp::p_symmetric), std::string(hyp::p_nondecreasing_half),
                                           std::string(hyp::phi_convex)};
  static const std::vector<std::string> clausing{
      std::string(hyp::p_symmetric),     std::string(hyp::p_nondecreasing_half), std::string(hyp::p_nonnegative),
      std::string(hyp::q_symmetric),     std::string(hyp::q_nonnegative),        std::string(hyp::q_convex_half),
      std::string(hyp::q_zero_at_0),     std::string(hyp::q_unit_integral),      std::string(hyp::phi_concave),
      std::string(hyp::phi_endpoint_sum)};
  static const std::vector<std::string> classic{std::string(hyp::p_symmetric), std::string(hyp::p_nondecreasing_half),
                                                std::string(hyp::p_nonnegative), std::string(hyp::phi_concave),
                                                std::string(hyp::phi_positive)};
  static const std::vector<std::string> sharp{
      std::string(hyp::p_symmetric),   std::string(hyp::p_nondecreasing_half), std::string(hyp::p_nonnegative),
      std::string(hyp::q_symmetric),   std::string(hyp::q_nonnegative),        std::string(hyp::q_convex_half),
      std::string(hyp::q_zero_at_0),   std::string(hyp::q_unit_integral)};
  static const std::vector<std::string> cheb{std::string(hyp::f_monotone), std::string(hyp::g_monotone)};
  static const std::vector<std::string> cheb_m{std::string(hyp::f_m_class), std::string(hyp::g_monotone)};
  static const std::vector<std::string> none;
  switch (k) {
    case InequalityKind::levin_steckin: return ls;
    case InequalityKind::clausing_general: return clausing;
    case InequalityKind::clausing_classic: return classic;
    case InequalityKind::q0_sharpness: return sharp;
    case InequalityKind::chebyshev: return cheb;
    case InequalityKind::chebyshev_m: return cheb_m;
    case InequalityKind::ls_symmetric:
    case InequalityKind::hermite_hadamard: return none;
  }
  return none;
}

std::size_t parameter_count(const SearchProblem& problem) {
  problem.validate();
  std::size_t used = 0;
  project<double>(problem, {}, &used);
  return used;
}

std::optional<Case<double>> project_float(const SearchProblem& problem, std::span<const double> params) {
  return project<double>(problem, params, nullptr);
}

std::optional<Case<Rational>> project_exact(const SearchProblem& problem, std::span<const double> params) {
  return project<Rational>(problem, params, nullptr);
}

SearchResult minimize_margin(const SearchProblem& problem) {
  problem.validate();
  const std::size_t dim = parameter_count(problem);
  Rng rng(problem.seed);
  SearchResult result;
  result.problem = problem;
  result.best_margin = std::numeric_limits<double>::infinity();

  std::uint64_t it = 0;
  const std::uint64_t budget = problem.budget;
  auto evaluate_at = [&](const std::vector<double>& theta) {
    ++it;
    const double m = evaluate_float(problem, theta).margin;
    if (m < result.best_margin) {
      result.best_margin = m;
      result.best_parameters = theta;
      result.trace.push_back({it, m});
    }
    return m;
  };
  auto random_point = [&] {
    std::vector<double> theta(dim);
    for (auto& t : theta) t = clamp_param(2.0 * rng.uniform01() - 1.0);
    return theta;
  };

  // Multistart: keep the best few random points as descent seeds.
  const std::uint64_t starts = std::clamp<std::uint64_t>(budget / 5, 1, 64);
  std::vector<std::pair<double, std::vector<double>>> elite;
  for (std::uint64_t s = 0; s < starts && it < budget; ++s) {
    auto theta = random_point();
    const double m = evaluate_at(theta);
    elite.emplace_back(m, std::move(theta));
  }
  std::stable_sort(elite.begin(), elite.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  if (elite.size() > 4) elite.resize(4);
  if (!std::isfinite(result.best_margin)) {
    throw std::runtime_error("projection infeasible for " + std::string(to_string(problem.inequality)) +
                             " with dropped " + join(problem.dropped_hypotheses));
  }

  // Coordinate descent from each seed in turn; when a descent stalls the
  // next one restarts from a jittered copy of the global best.
  std::size_t next_seed = 0;
  while (it < budget) {
    std::vector<double> theta;
    double current;
    if (next_seed < elite.size()) {
      theta = elite[next_seed].second;
      current = elite[next_seed].first;
      ++next_seed;
    } else {
      theta = result.best_parameters;
      for (auto& t : theta) t = clamp_param(t + 0.25 * (2.0 * rng.uniform01() - 1.0));
      current = evaluate_at(theta);
    }
    std::vector<std::size_t> order(dim);
    std::iota(order.begin(), order.end(), 0);
    for (double step = 0.5; step >= 0x1p-12 && it < budget;) {
      bool improved = false;
      for (std::size_t k = dim; k > 1; --k) std::swap(order[k - 1], order[rng.below(k)]);
      for (std::size_t i : order) {
        for (double dir : {1.0, -1.0}) {
          if (it >= budget) break;
          auto cand = theta;
          cand[i] = clamp_param(theta[i] + dir * step);
          if (cand[i] == theta[i]) continue;
          const double m = evaluate_at(cand);
          if (m < current) {
            current = m;
            theta = std::move(cand);
            improved = true;
            break;
          }
        }
      }
      if (!improved) step /= 2;
    }
  }
  result.iterations_used = it;

  // Confirm in exact arithmetic.
  result.best_inputs = project_exact(problem, result.best_parameters);
  if (result.best_inputs) {
    const auto verdict = evaluate(*result.best_inputs);
    result.exact_margin = verdict.margin;
    result.active_hypotheses_hold = true;
    for (const auto& h : verdict.hypotheses) {
      if (!h.holds && !problem.dropped_hypotheses.contains(h.name)) result.active_hypotheses_hold = false;
    }
    result.violated = result.best_margin < -result.tolerance && verdict.margin < Rational(0) &&
                      result.active_hypotheses_hold;
  }
  return result;
}

std::map<std::string, SearchResult> hypothesis_necessity_suite(std::uint64_t budget, std::uint64_t seed,
                                                               int n_breakpoints, unsigned workers) {
  if (budget < 1000) throw std::invalid_argument("necessity suite needs a budget of at least 1000");
  std::vector<std::pair<std::string, SearchProblem>> jobs;
  for (InequalityKind kind : {InequalityKind::levin_steckin, InequalityKind::clausing_general}) {
    std::vector<std::string> drops{""};
    for (const auto& h : searchable_hypotheses(kind)) drops.push_back(h);
    for (const auto& h : drops) {
      SearchProblem pb;
      pb.inequality = kind;
      if (!h.empty()) pb.dropped_hypotheses.insert(h);
      pb.n_breakpoints = n_breakpoints;
      pb.budget = budget;
      pb.seed = derive_seed(seed, jobs.size());
      jobs.emplace_back(std::string(to_string(kind)) + "/" + (h.empty() ? "none" : h), std::move(pb));
    }
  }

  std::vector<SearchResult> results(jobs.size());
  workers = std::max(1u, workers);
  std::vector<std::future<void>> pending;
  for (unsigned w = 0; w < workers; ++w) {
    pending.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < jobs.size(); i += workers) results[i] = minimize_margin(jobs[i].second);
    }));
  }
  for (auto& f : pending) f.get();

  std::map<std::string, SearchResult> out;
  for (std::size_t i = 0; i < jobs.size(); ++i) out.emplace(jobs[i].first, std::move(results[i]));
  return out;
}

AuditResult audit_candidates(const SearchProblem& problem, std::uint64_t count) {
  problem.validate();
  const std::size_t dim = parameter_count(problem);
  Rng rng(problem.seed);
  AuditResult audit;
  std::vector<double> theta(dim);
  for (std::uint64_t i = 0; i < count; ++i) {
    for (auto& t : theta) t = clamp_param(2.0 * rng.uniform01() - 1.0);
    ++audit.candidates;
    auto c = project_exact(problem, theta);
    if (!c) continue;
    ++audit.feasible;
    const auto v = evaluate(*c);
    for (const auto& h : v.hypotheses) {
      if (!h.holds && !problem.dropped_hypotheses.contains(h.name)) {
        ++audit.hypothesis_failures;
        break;
      }
    }
    if (v.margin < Rational(0)) ++audit.negative_margins;
    if (!audit.min_margin || v.margin < *audit.min_margin) {
      audit.min_margin = v.margin;
      audit.worst_case = std::move(c);
    }
  }
  return audit;
}

}  // namespace plineq
