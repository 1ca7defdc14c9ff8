#include <gtest/gtest.h>

#include "oracles.hpp"
#include "plineq/generators.hpp"
#include "plineq/inequalities.hpp"

using namespace plineq;

namespace {

using Q = Rational;
using PLQ = PLFunction<Q>;

Q r(long n, long d = 1) { return Q(n, d); }

const Interval<Q> kLeftHalf{r(0), r(1, 2)};

std::vector<GenConfig> configs() {
  std::vector<GenConfig> out;
  for (int n : {3, 4, 9, 17, 32}) {
    for (auto grid : {GridKind::uniform, GridKind::random}) {
      GenConfig c;
      c.n_breakpoints = n;
      c.grid = grid;
      out.push_back(c);
    }
  }
  return out;
}

}  // namespace

TEST(GenConfig, Validation) {
  GenConfig c;
  EXPECT_NO_THROW(c.validate());
  c.n_breakpoints = 2;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = GenConfig{};
  c.value_scale = -1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = GenConfig{};
  c.value_scale = INFINITY;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = GenConfig{};
  c.domain_hi = 0.0;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c = GenConfig{};
  c.domain_hi = 0.3;  // not dyadic
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Random, DerivedSeedsDiffer) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t s = 0; s < 100; ++s) seen.insert(derive_seed(42, s));
  EXPECT_EQ(seen.size(), 100u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(0, 1));
}

TEST(Random, DyadicDrawsAreQuantizedAndInRange) {
  Rng rng(9);
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.dyadic(-1.0, 1.0);
    EXPECT_GE(x, -1.0);
    EXPECT_LE(x, 1.0);
    EXPECT_EQ(x, quantize(x));
    EXPECT_LT(rng.below(7), 7u);
  }
}

TEST(Generators, ConvexHoldsAndDeterministic) {
  for (const auto& base : configs()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto f = gen_convex<Q>(base.with_seed(seed));
      ASSERT_TRUE(is_convex(f).holds);
      ASSERT_EQ(f.size(), static_cast<std::size_t>(base.n_breakpoints));
      EXPECT_TRUE(is_concave(gen_concave<Q>(base.with_seed(seed))).holds);
    }
  }
  EXPECT_EQ(gen_convex<Q>(GenConfig{}.with_seed(7)), gen_convex<Q>(GenConfig{}.with_seed(7)));
  EXPECT_NE(gen_convex<Q>(GenConfig{}.with_seed(7)), gen_convex<Q>(GenConfig{}.with_seed(8)));
}

TEST(Generators, ZeroScaleGivesAffine) {
  GenConfig c;
  c.value_scale = 0.0;
  const auto f = gen_convex<Q>(c.with_seed(3));
  EXPECT_TRUE(is_convex(f).holds);
  EXPECT_TRUE(is_concave(f).holds);
  const auto p = gen_ls_weight<Q>(c.with_seed(3));
  EXPECT_TRUE(is_monotone_on(p, Monotonicity::nondecreasing).holds);
  EXPECT_TRUE(is_monotone_on(p, Monotonicity::nonincreasing).holds);
}

TEST(Generators, FloatAndRationalAgree) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    GenConfig c;
    c.grid = GridKind::random;
    c = c.with_seed(seed);
    EXPECT_EQ(gen_convex<double>(c).cast<Q>(), gen_convex<Q>(c));
    EXPECT_EQ(gen_ls_weight<double>(c).cast<Q>(), gen_ls_weight<Q>(c));
    EXPECT_EQ(gen_monotone<double>(c, Monotonicity::nonincreasing).cast<Q>(),
              gen_monotone<Q>(c, Monotonicity::nonincreasing));
    EXPECT_EQ(gen_m_plus<double>(c).cast<Q>().cast<double>(), gen_m_plus<double>(c));
  }
}

TEST(Generators, LsWeightHypotheses) {
  for (const auto& base : configs()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto p = gen_ls_weight<Q>(base.with_seed(seed));
      ASSERT_TRUE(is_symmetric(p).holds);
      ASSERT_TRUE(is_monotone_on(p, kLeftHalf, Monotonicity::nondecreasing).holds);
      ASSERT_TRUE(is_nonnegative(p).holds);
      const std::size_t n = static_cast<std::size_t>(base.n_breakpoints);
      EXPECT_EQ(p.size(), n % 2 ? n : n + 1);
    }
  }
}

TEST(Generators, TentWeightIsMinDistance) {
  const auto p = tent_weight<Q>();
  EXPECT_EQ(p, PLQ({r(0), r(1, 2), r(1)}, {r(0), r(1, 2), r(0)}));
  EXPECT_EQ(integrate(p), r(1, 4));
  EXPECT_EQ(scale(r(1, 4), q0<Q>()), p);
}

TEST(Generators, AdmissibleQHypotheses) {
  for (const auto& base : configs()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto q = gen_admissible_q<Q>(base.with_seed(seed));
      ASSERT_TRUE(is_symmetric(q).holds);
      ASSERT_TRUE(is_convex(q, kLeftHalf).holds);
      ASSERT_TRUE(is_nonnegative(q).holds);
      ASSERT_EQ(q(r(0)), 0);
      ASSERT_EQ(integrate(q), 1);
    }
  }
}

TEST(Generators, SingleHalfPieceGivesQ0) {
  GenConfig c;
  c.n_breakpoints = 3;
  for (std::uint64_t seed = 0; seed < 20; ++seed) EXPECT_EQ(gen_admissible_q<Q>(c.with_seed(seed)), q0<Q>());
}

TEST(Generators, TwelveXSquaredChordsAreAdmissible) {
  const auto half = oracle::chords([](const Q& x) { return Q(12 * x * x); }, 17, r(0), r(1, 2));
  std::vector<Q> xs(half.breakpoints().begin(), half.breakpoints().end());
  std::vector<Q> ys(half.values().begin(), half.values().end());
  for (std::size_t i = xs.size() - 1; i-- > 0;) {
    xs.push_back(r(1) - xs[i]);
    ys.push_back(ys[i]);
  }
  const auto q = normalize_integral(PLQ(xs, ys));
  EXPECT_TRUE(is_symmetric(q).holds);
  EXPECT_TRUE(is_convex(q, kLeftHalf).holds);
  EXPECT_EQ(q(r(0)), 0);
  EXPECT_EQ(integrate(q), 1);
}

TEST(Generators, NormalizeRejectsNonPositiveIntegral) {
  EXPECT_THROW(normalize_integral(PLQ::constant(r(0))), std::invalid_argument);
  EXPECT_THROW(normalize_integral(PLQ::constant(r(-1))), std::invalid_argument);
}

TEST(Generators, ConcaveAdmissiblePhi) {
  for (const auto& base : configs()) {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto phi = gen_concave_admissible_phi<Q>(base.with_seed(seed));
      ASSERT_TRUE(is_concave(phi).holds);
      ASSERT_GE(phi(r(0)) + phi(r(1)), 0);
    }
  }
  const auto smooth = oracle::chords([](const Q& x) { return Q(x * (1 - x)); }, 33);
  EXPECT_TRUE(is_concave(smooth).holds);
  EXPECT_TRUE(is_nonnegative(smooth).holds);
}

TEST(Generators, MonotoneAndMClass) {
  for (const auto& base : configs()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto up = gen_monotone<Q>(base.with_seed(seed), Monotonicity::nondecreasing);
      const auto down = gen_monotone<Q>(base.with_seed(seed), Monotonicity::nonincreasing);
      ASSERT_TRUE(is_monotone_on(up, Monotonicity::nondecreasing).holds);
      ASSERT_TRUE(is_monotone_on(down, Monotonicity::nonincreasing).holds);
      ASSERT_TRUE(classify_m(up, MClass::plus).in_class);
      ASSERT_TRUE(classify_m(down, MClass::minus).in_class);
    }
  }
}

TEST(Generators, MPlusMembers) {
  for (const auto& base : configs()) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      ASSERT_TRUE(classify_m(gen_m_plus<Q>(base.with_seed(seed)), MClass::plus).in_class);
      ASSERT_TRUE(classify_m(gen_implicit_m_plus<Q>(base.with_seed(seed)), MClass::plus).in_class);
    }
  }
}

TEST(Generators, ImplicitMPlusShape) {
  GenConfig c;
  c.domain_hi = 0.5;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto h = gen_implicit_m_plus<Q>(c.with_seed(seed));
    ASSERT_TRUE(is_convex(h).holds);
    ASSERT_LE(h(r(0)), 0);
    ASSERT_EQ(integrate(h), 0);
  }
}

TEST(Generators, SlopeSignsCovered) {
  // Convex draws include increasing, decreasing and V-shaped functions.
  int up = 0, down = 0, valley = 0;
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const auto f = gen_convex<Q>(GenConfig{}.with_seed(seed));
    const bool first_neg = f.values()[1] < f.values()[0];
    const bool last_pos = f.values()[f.size() - 1] > f.values()[f.size() - 2];
    if (first_neg && last_pos) ++valley;
    else if (first_neg) ++down;
    else ++up;
  }
  EXPECT_GT(up, 10);
  EXPECT_GT(down, 10);
  EXPECT_GT(valley, 10);
}

TEST(Generators, FreeFunctionsOftenLeaveMPlus) {
  int outside = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    outside += !classify_m(gen_free<Q>(GenConfig{}.with_seed(seed)), MClass::plus).in_class;
  }
  EXPECT_GT(outside, 100);
}

TEST(Generators, OffsetDomain) {
  GenConfig c;
  c.domain_lo = -2.0;
  c.domain_hi = 2.0;
  const auto p = gen_ls_weight<Q>(c.with_seed(1));
  EXPECT_EQ(p.domain_lo(), r(-2));
  EXPECT_EQ(p.domain_hi(), r(2));
  EXPECT_TRUE(is_symmetric(p).holds);
  EXPECT_TRUE(is_convex(gen_convex<Q>(c.with_seed(2))).holds);
}
