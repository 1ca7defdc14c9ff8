#include <gtest/gtest.h>

#include "plineq/generators.hpp"
#include "plineq/serialize.hpp"

using namespace plineq;

namespace {

using Q = Rational;
using PLQ = PLFunction<Q>;

Q r(long n, long d = 1) { return Q(n, d); }

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Rational, ParsesForms) {
  EXPECT_EQ(parse_rational("3/4"), r(3, 4));
  EXPECT_EQ(parse_rational("-6/8"), r(-3, 4));
  EXPECT_EQ(parse_rational("7"), r(7));
  EXPECT_EQ(parse_rational("0.125"), r(1, 8));
  EXPECT_EQ(parse_rational("-1.5e-2"), r(-3, 200));
  EXPECT_EQ(parse_rational("2E3"), r(2000));
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
  EXPECT_THROW(parse_rational("abc"), std::invalid_argument);
  EXPECT_THROW(parse_rational(""), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/2/3"), std::invalid_argument);
}

TEST(Rational, ExactStrings) {
  EXPECT_EQ(to_exact_string(r(-3, 4)), "-3/4");
  EXPECT_EQ(to_exact_string(r(5)), "5");
  EXPECT_EQ(to_exact_string(0.375), "3/8");
  EXPECT_EQ(parse_rational(to_exact_string(0.1)), Q(0.1));
}

TEST(Rational, FromJsonNumbersAndStrings) {
  EXPECT_EQ(rational_from_json(Json(0.5), "x"), r(1, 2));
  EXPECT_EQ(rational_from_json(Json(-3), "x"), r(-3));
  EXPECT_EQ(rational_from_json(Json("1/3"), "x"), r(1, 3));
  const auto msg = error_of([] { rational_from_json(Json(true), "a.b[2]"); });
  EXPECT_NE(msg.find("a.b[2]"), std::string::npos);
}

TEST(PLJson, RoundTripRational) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto f = gen_free<Q>(GenConfig{}.with_seed(seed));
    const auto j = to_json(f);
    EXPECT_EQ(pl_function_from_json<Q>(j), f);
    EXPECT_EQ(pl_function_from_json<Q>(parse_json_text(j.dump(), "t")), f);
  }
  const auto j = to_json(q0<Q>());
  EXPECT_EQ(j.dump(), R"({"domain":["0","1"],"breakpoints":["0","1/2","1"],"values":["0","2","0"]})");
}

TEST(PLJson, RoundTripFloatIsExact) {
  const PLFunction<double> f({0.0, 0.1, 1.0}, {1.0 / 3, -2.5, 1e-300});
  EXPECT_EQ(pl_function_from_json<double>(to_json(f)), f);
}

TEST(PLJson, FieldDiagnostics) {
  auto j = to_json(q0<Q>());
  j["values"][1] = "x/y";
  EXPECT_NE(error_of([&] { pl_function_from_json<Q>(j, "case.functions.q"); }).find("case.functions.q.values[1]"),
            std::string::npos);
  j = to_json(q0<Q>());
  j.erase("breakpoints");
  EXPECT_NE(error_of([&] { pl_function_from_json<Q>(j, "f"); }).find("f.breakpoints"), std::string::npos);
  j = to_json(q0<Q>());
  j["domain"] = Json::array({"0", "2"});
  EXPECT_THROW(pl_function_from_json<Q>(j), ParseError);
  j = to_json(q0<Q>());
  j["breakpoints"][1] = "0";
  EXPECT_THROW(pl_function_from_json<Q>(j), ParseError);
}

TEST(JsonText, SyntaxErrorsCarryLineAndColumn) {
  const auto msg = error_of([] { parse_json_text("{\n  \"a\": 1,\n  \"b\": [1, 2\n}", "bad.json"); });
  EXPECT_EQ(msg.rfind("bad.json:4:", 0), 0u) << msg;
  EXPECT_THROW(read_json_file("/nonexistent/x.json"), std::runtime_error);
}

TEST(CaseJson, RoundTripAndVerdict) {
  Case<Q> c{InequalityKind::chebyshev_m, ChebyshevMVariant::plus_nonincreasing, {}};
  c.functions.emplace("f", gen_m_plus<Q>(GenConfig{}.with_seed(1)));
  c.functions.emplace("g", gen_monotone<Q>(GenConfig{}.with_seed(2), Monotonicity::nonincreasing));
  const auto j = to_json(c);
  const auto back = case_from_json<Q>(j);
  EXPECT_EQ(back.kind, c.kind);
  EXPECT_EQ(back.variant, c.variant);
  EXPECT_EQ(back.functions, c.functions);
  const auto v = evaluate(back);
  const auto vj = to_json(v);
  EXPECT_EQ(vj["inequality"], "chebyshev_m");
  EXPECT_EQ(vj["variant"], "plus_nonincreasing");
  EXPECT_EQ(parse_rational(vj["margin"].get<std::string>()), v.margin);
  EXPECT_EQ(vj["hypotheses"].size(), 2u);
  EXPECT_EQ(vj["hypotheses"][0]["evidence"]["class"], "M_plus");
}

TEST(CaseJson, Errors) {
  EXPECT_THROW(case_from_json<Q>(Json::array()), ParseError);
  Json j = {{"inequality", "levin_steckin"}, {"functions", {{"p", to_json(q0<Q>())}}}};
  EXPECT_NE(error_of([&] { case_from_json<Q>(j); }).find("case.functions.phi"), std::string::npos);
  j["inequality"] = "unknown";
  EXPECT_NE(error_of([&] { case_from_json<Q>(j); }).find("unknown inequality"), std::string::npos);
  j = {{"inequality", "chebyshev_m"}, {"variant", "sideways"}, {"functions", Json::object()}};
  EXPECT_THROW(case_from_json<Q>(j), ParseError);
}

TEST(VerdictJson, StableFieldOrder) {
  Case<Q> c{InequalityKind::q0_sharpness, std::nullopt, {}};
  c.functions.emplace("p", q0<Q>());
  c.functions.emplace("q", q0<Q>());
  const auto j = to_json(evaluate(c));
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"inequality", "lhs", "rhs", "margin", "margin_approx", "holds", "tolerance",
                                            "hypotheses_hold", "hypotheses", "details"}));
  EXPECT_EQ(to_json(evaluate(c)).dump(), j.dump());
}
