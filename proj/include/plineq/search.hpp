#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "plineq/inequalities.hpp"

namespace plineq {

/// One adversarial search: minimize the margin of `inequality` over PL
/// inputs that satisfy every hypothesis except the dropped ones.
///
/// Inputs are produced from a free parameter vector by a construction map
/// (see `project`), so active hypotheses hold by construction and dropped
/// ones are left unconstrained.
struct SearchProblem {
  InequalityKind inequality = InequalityKind::levin_steckin;
  std::set<std::string> dropped_hypotheses;
  int n_breakpoints = 9;
  std::uint64_t budget = 10000;
  std::uint64_t seed = 0;
  /// Only read for chebyshev_m.
  ChebyshevMVariant variant = ChebyshevMVariant::plus_nondecreasing;

  /// Throws std::invalid_argument on an unusable problem, naming the
  /// offending hypotheses.
  void validate() const;
};

struct TracePoint {
  std::uint64_t iteration;
  double margin;
};

struct SearchResult {
  SearchProblem problem;
  /// Minimum float-mode margin over all evaluated candidates.
  double best_margin = 0.0;
  /// Best candidate rebuilt in exact arithmetic from the same parameters.
  std::optional<Case<Rational>> best_inputs;
  std::vector<double> best_parameters;
  /// Exact margin of `best_inputs`.
  std::optional<Rational> exact_margin;
  /// Every non-dropped hypothesis holds exactly for `best_inputs`.
  bool active_hypotheses_hold = false;
  std::uint64_t iterations_used = 0;
  /// best_margin < -tolerance and confirmed negative in exact arithmetic.
  bool violated = false;
  double tolerance = 1e-9;
  std::vector<TracePoint> trace;
};

/// Hypotheses that may be dropped for each inequality. Empty for checkers
/// without a search projection (ls_symmetric, hermite_hadamard).
const std::vector<std::string>& searchable_hypotheses(InequalityKind k);

std::size_t parameter_count(const SearchProblem& problem);

/// Construction map from parameters (each clamped to [-1, 1] and rounded
/// to a 2^-16 grid) to inputs. nullopt when the parameters hit an
/// infeasible corner, e.g. a q whose integral vanishes before normalizing.
std::optional<Case<double>> project_float(const SearchProblem& problem, std::span<const double> params);
std::optional<Case<Rational>> project_exact(const SearchProblem& problem, std::span<const double> params);

/// Random multistart followed by coordinate descent on the parameters.
/// Deterministic for a fixed problem.
SearchResult minimize_margin(const SearchProblem& problem);

/// Runs minimize_margin once per hypothesis of Levin-Steckin and of the
/// generalized Clausing inequality with exactly that hypothesis dropped,
/// plus one baseline per inequality with nothing dropped. Keys are
/// "<inequality>/<hypothesis>" and "<inequality>/none".
std::map<std::string, SearchResult> hypothesis_necessity_suite(std::uint64_t budget, std::uint64_t seed,
                                                               int n_breakpoints = 9, unsigned workers = 1);

struct AuditResult {
  std::uint64_t candidates = 0;
  std::uint64_t feasible = 0;
  std::uint64_t negative_margins = 0;
  std::uint64_t hypothesis_failures = 0;
  std::optional<Rational> min_margin;
  std::optional<Case<Rational>> worst_case;
};

/// Evaluates `count` random candidates of the problem in exact arithmetic.
AuditResult audit_candidates(const SearchProblem& problem, std::uint64_t count);

}  // namespace plineq
