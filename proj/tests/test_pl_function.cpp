#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plineq/generators.hpp"
#include "plineq/pl_function.hpp"

using namespace plineq;

namespace {

using Q = Rational;
using PLQ = PLFunction<Q>;

Q r(long n, long d = 1) { return Q(n, d); }

PLQ tent() { return PLQ({r(0), r(1, 2), r(1)}, {r(0), r(1, 2), r(0)}); }

}  // namespace

template <class T>
class PLTyped : public ::testing::Test {};
using ScalarTypes = ::testing::Types<double, Rational>;
TYPED_TEST_SUITE(PLTyped, ScalarTypes);

TYPED_TEST(PLTyped, EvaluatesIdentityAndQ0) {
  using S = TypeParam;
  const auto id = PLFunction<S>::identity();
  EXPECT_EQ(id(S(1) / S(4)), S(1) / S(4));
  const auto q = q0<S>();
  EXPECT_EQ(q(S(1) / S(2)), S(2));
  EXPECT_EQ(q(S(1) / S(4)), S(1));
  EXPECT_EQ(q(S(0)), S(0));
  EXPECT_EQ(q(S(1)), S(0));
}

TYPED_TEST(PLTyped, IntegralsOfFixtures) {
  using S = TypeParam;
  EXPECT_EQ(integrate(PLFunction<S>::identity()), S(1) / S(2));
  EXPECT_EQ(integrate(q0<S>()), S(1));
  EXPECT_EQ(integrate(tent_weight<S>()), S(1) / S(4));
}

TYPED_TEST(PLTyped, ProductIntegrals) {
  using S = TypeParam;
  const auto id = PLFunction<S>::identity();
  const PLFunction<S> flip({S(0), S(1)}, {S(1), S(0)});
  if constexpr (ScalarTraits<S>::is_exact) {
    EXPECT_EQ(integrate_product(id, id), S(1) / S(3));
    EXPECT_EQ(integrate_product(id, flip), S(1) / S(6));
  } else {
    EXPECT_NEAR(integrate_product(id, id), 1.0 / 3, 1e-15);
    EXPECT_NEAR(integrate_product(id, flip), 1.0 / 6, 1e-15);
  }
}

TEST(PLFunction, ProductWithOneIsIntegral) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = gen_free<Q>(GenConfig{}.with_seed(seed));
    EXPECT_EQ(integrate_product(f, PLQ::constant(r(1))), integrate(f));
    EXPECT_EQ(integrate_product(PLQ::constant(r(1)), f), integrate(f));
  }
}

TEST(PLFunction, ProductIsSymmetricAndBilinear) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenConfig cfg;
    cfg.grid = GridKind::random;
    const auto f = gen_free<Q>(cfg.with_seed(seed));
    const auto g = gen_free<Q>(cfg.with_seed(seed + 1000));
    const auto h = gen_free<Q>(cfg.with_seed(seed + 2000));
    EXPECT_EQ(integrate_product(f, g), integrate_product(g, f));
    const auto combo = linear_combine(r(3), g, r(-2, 5), h);
    EXPECT_EQ(integrate_product(f, combo), r(3) * integrate_product(f, g) - r(2, 5) * integrate_product(f, h));
  }
}

TEST(PLFunction, ProductMatchesSimpsonInFloat) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GenConfig cfg;
    cfg.grid = GridKind::random;
    const auto f = gen_free<double>(cfg.with_seed(seed));
    const auto g = gen_free<double>(cfg.with_seed(seed + 7));
    const long double ref = oracle::simpson_product(f, g, 2000);
    EXPECT_NEAR(integrate_product(f, g), static_cast<double>(ref), 1e-12);
  }
}

TEST(PLFunction, EvaluationAtBreakpointsIsExact) {
  const auto f = gen_free<double>(GenConfig{}.with_seed(3));
  for (std::size_t i = 0; i < f.size(); ++i) EXPECT_EQ(f(f.breakpoints()[i]), f.values()[i]);
}

TEST(PLFunction, OutsideDomainThrows) {
  const auto f = PLQ::identity();
  EXPECT_THROW(f(r(-1, 100)), std::domain_error);
  EXPECT_THROW(f(r(101, 100)), std::domain_error);
  EXPECT_THROW(PLFunction<double>::identity()(1.5), std::domain_error);
}

TEST(PLFunction, ConstructorRejectsBadInput) {
  EXPECT_THROW(PLQ({r(0)}, {r(0)}), std::invalid_argument);
  EXPECT_THROW(PLQ({r(0), r(1)}, {r(0)}), std::invalid_argument);
  EXPECT_THROW(PLQ({r(0), r(0), r(1)}, {r(0), r(1), r(2)}), std::invalid_argument);
  EXPECT_THROW(PLQ({r(1), r(0)}, {r(0), r(1)}), std::invalid_argument);
  EXPECT_THROW(PLFunction<double>({0.0, 1.0}, {0.0, std::nan("")}), std::invalid_argument);
  EXPECT_THROW(PLFunction<double>({0.0, INFINITY}, {0.0, 1.0}), std::invalid_argument);
}

TEST(PLFunction, DomainMismatchThrows) {
  const auto f = PLQ::identity();
  const auto g = PLQ::identity(r(0), r(2));
  EXPECT_THROW(integrate_product(f, g), std::domain_error);
  EXPECT_THROW(linear_combine(r(1), f, r(1), g), std::domain_error);
}

TEST(PLFunction, ReflectFixtures) {
  const auto id = reflect(PLQ::identity());
  EXPECT_EQ(id, PLQ({r(0), r(1)}, {r(1), r(0)}));
  EXPECT_EQ(reflect(q0<Q>()), q0<Q>());
  const PLQ skew({r(0), r(3, 10), r(1)}, {r(0), r(1), r(0)});
  EXPECT_EQ(reflect(skew), PLQ({r(0), r(7, 10), r(1)}, {r(0), r(1), r(0)}));
  EXPECT_EQ(reflect(reflect(skew)), skew);
}

TEST(PLFunction, ReflectOnOffsetDomain) {
  const PLQ f({r(2), r(5, 2), r(4)}, {r(1), r(3), r(0)});
  const auto g = reflect(f);
  EXPECT_EQ(g.domain_lo(), r(2));
  EXPECT_EQ(g.domain_hi(), r(4));
  EXPECT_EQ(g(r(7, 2)), r(3));
  EXPECT_EQ(integrate(g), integrate(f));
}

TEST(PLFunction, SymmetrizeFixtures) {
  EXPECT_EQ(symmetrize(PLQ::identity()), PLQ::constant(r(1, 2)));
  const auto q = symmetrize(q0<Q>());
  for (const auto& x : q.breakpoints()) EXPECT_EQ(q(x), q0<Q>()(x));
  const PLQ skew({r(0), r(3, 10), r(1)}, {r(0), r(1), r(0)});
  const auto s = symmetrize(skew);
  EXPECT_EQ(integrate(s), integrate(skew));
  for (const auto& x : s.breakpoints()) EXPECT_EQ(s(x), s(r(1) - x));
}

TEST(PLFunction, SymmetrizeIsIdempotentInFloat) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto s = symmetrize(gen_free<double>(GenConfig{}.with_seed(seed)));
    const auto t = symmetrize(s);
    for (const auto& x : t.breakpoints()) EXPECT_NEAR(t(x), s(x), 1e-15);
  }
}

TEST(PLFunction, LinearCombineFixtures) {
  const auto f = gen_free<Q>(GenConfig{}.with_seed(11));
  const auto zero = linear_combine(r(1), f, r(-1), f);
  for (const auto& v : zero.values()) EXPECT_EQ(v, 0);
  const auto two_x = linear_combine(r(2), PLQ::identity(), r(0), f);
  for (const auto& x : two_x.breakpoints()) EXPECT_EQ(two_x(x), r(2) * x);

  // K q0 - phi with K = 1/6 and phi the chords of x(1-x).
  const auto phi = oracle::chords([](const Q& x) { return Q(x * (1 - x)); }, 9);
  const auto d = linear_combine(r(1, 6), q0<Q>(), r(-1), phi);
  for (const auto& x : d.breakpoints()) {
    const Q q0x = x <= r(1, 2) ? Q(4 * x) : Q(4 * (1 - x));
    EXPECT_EQ(d(x), r(1, 6) * q0x - x * (1 - x));
  }
}

TEST(PLFunction, RestrictFixtures) {
  const auto left = restrict_to(q0<Q>(), r(0), r(1, 2));
  EXPECT_EQ(left, PLQ({r(0), r(1, 2)}, {r(0), r(2)}));
  EXPECT_EQ(restrict_to(PLQ::identity(), r(1, 4), r(3, 4))(r(1, 2)), r(1, 2));
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    GenConfig cfg;
    cfg.grid = GridKind::random;
    const auto f = gen_free<Q>(cfg.with_seed(seed));
    EXPECT_EQ(integrate(restrict_to(f, r(0), r(1, 2))) + integrate(restrict_to(f, r(1, 2), r(1))), integrate(f));
  }
}

TEST(PLFunction, RestrictRejectsBadIntervals) {
  const auto f = PLQ::identity();
  EXPECT_THROW(restrict_to(f, r(1, 2), r(1, 2)), std::invalid_argument);
  EXPECT_THROW(restrict_to(f, r(3, 4), r(1, 4)), std::invalid_argument);
  EXPECT_THROW(restrict_to(f, r(-1), r(1, 2)), std::domain_error);
}

TEST(PLFunction, MergeDedupesWithinEpsilonInFloat) {
  const std::vector<double> a{0.0, 0.5, 1.0};
  const std::vector<double> b{0.0, 0.5 + 1e-17, 0.75, 1.0};
  const auto m = merge_breakpoints<double>(a, b);
  EXPECT_EQ(m, (std::vector<double>{0.0, 0.5, 0.75, 1.0}));
}

TEST(PLFunction, MergeKeepsDistinctRationals) {
  const std::vector<Q> a{r(0), r(1, 3), r(1)};
  const std::vector<Q> b{r(0), r(1, 3) + r(1, 1000000000), r(1)};
  EXPECT_EQ(merge_breakpoints<Q>(a, b).size(), 4u);
}

TEST(PLFunction, CastRoundTripsDyadics) {
  const auto f = gen_free<double>(GenConfig{}.with_seed(5));
  EXPECT_EQ(f.cast<Q>().cast<double>(), f);
  EXPECT_EQ(gen_free<Q>(GenConfig{}.with_seed(5)), f.cast<Q>());
}

TEST(PLFunction, SampleAndSupNorm) {
  const auto f = PLQ::sample([](const Q& x) { return Q(x * x - 1); }, 5);
  EXPECT_EQ(f.size(), 5u);
  EXPECT_EQ(f(r(1, 4)), r(-15, 16));
  EXPECT_EQ(sup_norm(f), r(1));
  EXPECT_THROW(PLQ::sample([](const Q& x) { return x; }, 1), std::invalid_argument);
}

TEST(PLFunction, MeanShiftScale) {
  const PLQ f({r(2), r(4)}, {r(1), r(3)});
  EXPECT_EQ(mean(f), r(2));
  EXPECT_EQ(mean(shift(f, r(5))), r(7));
  EXPECT_EQ(integrate(scale(r(-3), f)), r(-12));
  EXPECT_EQ(negate(negate(f)), f);
}
