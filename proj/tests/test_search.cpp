#include <gtest/gtest.h>

#include "plineq/random.hpp"
#include "plineq/search.hpp"

using namespace plineq;

namespace {

std::vector<double> random_params(std::size_t dim, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<double> theta(dim);
  for (auto& t : theta) t = 2.0 * rng.uniform01() - 1.0;
  return theta;
}

SearchProblem problem(InequalityKind k, std::set<std::string> dropped = {}, std::uint64_t budget = 2000) {
  SearchProblem p;
  p.inequality = k;
  p.dropped_hypotheses = std::move(dropped);
  p.budget = budget;
  p.seed = 17;
  return p;
}

const std::vector<InequalityKind> kSearchable{InequalityKind::chebyshev,        InequalityKind::chebyshev_m,
                                              InequalityKind::levin_steckin,    InequalityKind::clausing_general,
                                              InequalityKind::clausing_classic, InequalityKind::q0_sharpness};

}  // namespace

TEST(SearchProblem, Validation) {
  auto p = problem(InequalityKind::levin_steckin);
  EXPECT_NO_THROW(p.validate());
  p.budget = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  EXPECT_THROW(minimize_margin(p), std::invalid_argument);
  p = problem(InequalityKind::levin_steckin, {"q_zero_at_0", "bogus"});
  try {
    p.validate();
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("q_zero_at_0"), std::string::npos);
  }
  EXPECT_THROW(problem(InequalityKind::ls_symmetric).validate(), std::invalid_argument);
  EXPECT_THROW(problem(InequalityKind::hermite_hadamard).validate(), std::invalid_argument);
  p = problem(InequalityKind::levin_steckin);
  p.n_breakpoints = 2;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Projection, ActiveHypothesesHoldByConstruction) {
  for (auto kind : kSearchable) {
    auto pb = problem(kind);
    if (kind == InequalityKind::chebyshev_m) pb.variant = ChebyshevMVariant::minus_nondecreasing;
    const std::size_t dim = parameter_count(pb);
    ASSERT_GT(dim, 0u);
    int feasible = 0;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
      const auto c = project_exact(pb, random_params(dim, seed));
      if (!c) continue;
      ++feasible;
      const auto v = evaluate(*c);
      ASSERT_TRUE(v.hypotheses_hold()) << to_string(kind) << " seed " << seed << " failed "
                                       << v.failed_hypotheses().front();
      ASSERT_GE(v.margin, 0) << to_string(kind) << " seed " << seed;
      ASSERT_LE(sup_norm(c->functions.begin()->second), 8);
    }
    EXPECT_GT(feasible, 900) << to_string(kind);
  }
}

TEST(Projection, FloatMatchesExact) {
  for (auto kind : kSearchable) {
    const auto pb = problem(kind);
    const std::size_t dim = parameter_count(pb);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      const auto theta = random_params(dim, seed);
      const auto f = project_float(pb, theta);
      const auto e = project_exact(pb, theta);
      ASSERT_EQ(f.has_value(), e.has_value());
      if (!f) continue;
      EXPECT_NEAR(evaluate(*f).margin, evaluate(*e).margin.get_d(), 1e-9);
    }
  }
}

TEST(Projection, DroppedHypothesisCanFail) {
  const std::vector<std::pair<InequalityKind, std::string>> drops{
      {InequalityKind::levin_steckin, "p_symmetric"},
      {InequalityKind::levin_steckin, "p_nondecreasing_half"},
      {InequalityKind::levin_steckin, "phi_convex"},
      {InequalityKind::clausing_general, "phi_endpoint_sum"},
      {InequalityKind::clausing_general, "q_zero_at_0"},
      {InequalityKind::clausing_general, "q_convex_half"},
      {InequalityKind::chebyshev, "g_monotone"},
      {InequalityKind::chebyshev_m, "f_m_class"},
  };
  for (const auto& [kind, hyp_name] : drops) {
    const auto pb = problem(kind, {hyp_name});
    const std::size_t dim = parameter_count(pb);
    int failed = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto c = project_exact(pb, random_params(dim, seed));
      if (!c) continue;
      const auto v = evaluate(*c);
      const auto bad = v.failed_hypotheses();
      for (const auto& b : bad) ASSERT_EQ(b, hyp_name);
      failed += !bad.empty();
    }
    EXPECT_GT(failed, 0) << to_string(kind) << "/" << hyp_name;
  }
}

TEST(Projection, RejectsUnprojectableKinds) {
  auto pb = problem(InequalityKind::levin_steckin);
  pb.inequality = InequalityKind::ls_symmetric;
  EXPECT_THROW(project_exact(pb, std::vector<double>(8, 0.0)), std::invalid_argument);
}

TEST(Minimize, DeterministicForFixedProblem) {
  const auto pb = problem(InequalityKind::levin_steckin, {"p_symmetric"}, 1500);
  const auto a = minimize_margin(pb);
  const auto b = minimize_margin(pb);
  EXPECT_EQ(a.best_margin, b.best_margin);
  EXPECT_EQ(a.best_parameters, b.best_parameters);
  EXPECT_EQ(a.exact_margin, b.exact_margin);
  EXPECT_EQ(a.iterations_used, b.iterations_used);
  EXPECT_LE(a.iterations_used, 1500u);
}

TEST(Minimize, NoViolationWithAllHypotheses) {
  for (auto kind : {InequalityKind::levin_steckin, InequalityKind::clausing_general}) {
    const auto r = minimize_margin(problem(kind, {}, 3000));
    EXPECT_FALSE(r.violated) << to_string(kind);
    EXPECT_GE(r.best_margin, -1e-9);
    ASSERT_TRUE(r.exact_margin.has_value());
    EXPECT_GE(*r.exact_margin, 0);
    EXPECT_TRUE(r.active_hypotheses_hold);
  }
}

TEST(Minimize, FindsLsSymmetryViolation) {
  const auto r = minimize_margin(problem(InequalityKind::levin_steckin, {"p_symmetric"}, 10000));
  EXPECT_TRUE(r.violated);
  ASSERT_TRUE(r.best_inputs.has_value());
  const auto v = evaluate(*r.best_inputs);
  EXPECT_EQ(v.margin, *r.exact_margin);
  EXPECT_LT(v.margin, 0);
  EXPECT_EQ(v.failed_hypotheses(), std::vector<std::string>{"p_symmetric"});
}

TEST(Minimize, FindsClausingEndpointViolation) {
  const auto r = minimize_margin(problem(InequalityKind::clausing_general, {"phi_endpoint_sum"}, 10000));
  EXPECT_TRUE(r.violated);
  ASSERT_TRUE(r.best_inputs.has_value());
  EXPECT_LT(*r.exact_margin, 0);
  EXPECT_TRUE(r.active_hypotheses_hold);
}

TEST(Minimize, TraceIsDecreasing) {
  const auto r = minimize_margin(problem(InequalityKind::chebyshev, {"g_monotone"}, 2000));
  ASSERT_FALSE(r.trace.empty());
  for (std::size_t i = 1; i < r.trace.size(); ++i) {
    EXPECT_LT(r.trace[i].margin, r.trace[i - 1].margin);
    EXPECT_GT(r.trace[i].iteration, r.trace[i - 1].iteration);
  }
  EXPECT_EQ(r.trace.back().margin, r.best_margin);
  EXPECT_TRUE(r.violated);
}

TEST(Suite, RejectsSmallBudget) { EXPECT_THROW(hypothesis_necessity_suite(999, 0), std::invalid_argument); }

TEST(Audit, AllActiveHasNoNegativeMargins) {
  for (auto kind : kSearchable) {
    const auto a = audit_candidates(problem(kind), 300);
    EXPECT_EQ(a.candidates, 300u);
    EXPECT_EQ(a.negative_margins, 0u) << to_string(kind);
    EXPECT_EQ(a.hypothesis_failures, 0u) << to_string(kind);
    ASSERT_TRUE(a.min_margin.has_value());
    EXPECT_GE(*a.min_margin, 0);
  }
}
