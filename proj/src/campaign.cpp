#include "plineq/campaign.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <set>

#include "plineq/random.hpp"
#include "plineq/search.hpp"

namespace plineq {

namespace {

constexpr std::size_t kMaxFailingCasesPerInequality = 20;

template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::future<void>> pending;
  for (unsigned w = 0; w < workers; ++w) {
    pending.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    }));
  }
  for (auto& f : pending) f.get();
}

std::vector<InequalityKind> all_inequalities() {
  return {InequalityKind::chebyshev,        InequalityKind::chebyshev_m,      InequalityKind::levin_steckin,
          InequalityKind::ls_symmetric,     InequalityKind::clausing_general, InequalityKind::clausing_classic,
          InequalityKind::hermite_hadamard, InequalityKind::q0_sharpness};
}

template <class Scalar>
Scalar tolerance_for(const Campaign& c) {
  if (c.tolerance) return ScalarTraits<Scalar>::from_rational(*c.tolerance);
  return ScalarTraits<Scalar>::verdict_tolerance();
}

/// Hypothesis-satisfying inputs for one trial.
template <class Scalar>
Case<Scalar> make_trial_case(InequalityKind kind, const GenConfig& base, std::uint64_t trial_seed, std::uint64_t trial) {
  auto cfg = [&](std::uint64_t slot) { return base.with_seed(derive_seed(trial_seed, slot)); };
  Case<Scalar> c{kind, std::nullopt, {}};
  switch (kind) {
    case InequalityKind::chebyshev: {
      const auto fdir = trial % 2 == 0 ? Monotonicity::nondecreasing : Monotonicity::nonincreasing;
      const bool same = trial % 4 < 2;
      const auto gdir = same ? fdir
                             : (fdir == Monotonicity::nondecreasing ? Monotonicity::nonincreasing
                                                                    : Monotonicity::nondecreasing);
      c.functions.emplace("f", gen_monotone<Scalar>(cfg(0), fdir));
      c.functions.emplace("g", gen_monotone<Scalar>(cfg(1), gdir));
      break;
    }
    case InequalityKind::chebyshev_m: {
      const auto variant = static_cast<ChebyshevMVariant>(trial % 4);
      const bool f_minus =
          variant == ChebyshevMVariant::minus_nondecreasing || variant == ChebyshevMVariant::minus_nonincreasing;
      const bool g_up =
          variant == ChebyshevMVariant::plus_nondecreasing || variant == ChebyshevMVariant::minus_nondecreasing;
      PLFunction<Scalar> f = [&] {
        switch (trial / 4 % 3) {
          case 0: return gen_m_plus<Scalar>(cfg(0));
          case 1: return gen_implicit_m_plus<Scalar>(cfg(0));
          default: return gen_monotone<Scalar>(cfg(0), Monotonicity::nondecreasing);
        }
      }();
      c.variant = variant;
      c.functions.emplace("f", f_minus ? negate(f) : f);
      c.functions.emplace("g", gen_monotone<Scalar>(cfg(1), g_up ? Monotonicity::nondecreasing : Monotonicity::nonincreasing));
      break;
    }
    case InequalityKind::levin_steckin:
      c.functions.emplace("p", gen_ls_weight<Scalar>(cfg(0)));
      c.functions.emplace("phi", gen_convex<Scalar>(cfg(1)));
      break;
    case InequalityKind::ls_symmetric:
      c.functions.emplace("p", gen_ls_weight<Scalar>(cfg(0)));
      c.functions.emplace("phi", symmetrize(gen_convex<Scalar>(cfg(1))));
      break;
    case InequalityKind::clausing_general:
      c.functions.emplace("p", gen_ls_weight<Scalar>(cfg(0)));
      c.functions.emplace("q", gen_admissible_q<Scalar>(cfg(1)));
      c.functions.emplace("phi", gen_concave_admissible_phi<Scalar>(cfg(2)));
      break;
    case InequalityKind::clausing_classic: {
      auto phi = gen_concave_admissible_phi<Scalar>(cfg(2));
      Scalar lowest = phi.values().front();
      for (const auto& v : phi.values()) lowest = v < lowest ? v : lowest;
      if (lowest < Scalar(0)) phi = shift(phi, Scalar(-lowest));
      if (!(integrate(phi) > Scalar(0))) phi = shift(phi, Scalar(1));
      c.functions.emplace("p", gen_ls_weight<Scalar>(cfg(0)));
      c.functions.emplace("phi", std::move(phi));
      break;
    }
    case InequalityKind::hermite_hadamard:
      c.functions.emplace("f", gen_concave<Scalar>(cfg(0)));
      break;
    case InequalityKind::q0_sharpness:
      c.functions.emplace("p", gen_ls_weight<Scalar>(cfg(0)));
      c.functions.emplace("q", gen_admissible_q<Scalar>(cfg(1)));
      break;
  }
  return c;
}

template <class Scalar>
Json case_entry(const Case<Scalar>& c, const InequalityVerdict<Scalar>& v, std::string_view role, std::uint64_t trial,
                Arithmetic arithmetic) {
  Json e = to_json(c);
  e["role"] = std::string(role);
  e["trial"] = trial;
  e["arithmetic"] = std::string(to_string(arithmetic));
  e["margin"] = scalar_to_json(v.margin);
  e["margin_approx"] = to_double(v.margin);
  return e;
}

template <class Scalar>
void verify_typed(const Campaign& campaign, unsigned workers, RunReport& report) {
  const Scalar tol = tolerance_for<Scalar>(campaign);
  const auto kinds = campaign.inequalities.empty() ? all_inequalities() : campaign.inequalities;
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    const InequalityKind kind = kinds[k];
    const std::uint64_t stream = derive_seed(campaign.seed, static_cast<std::uint64_t>(kind));
    std::vector<InequalityVerdict<Scalar>> verdicts(campaign.trials, InequalityVerdict<Scalar>{kind});
    parallel_for(campaign.trials, workers, [&](std::size_t t) {
      const auto c = make_trial_case<Scalar>(kind, campaign.generator, derive_seed(stream, t), t);
      verdicts[t] = evaluate(c, tol);
    });

    // Ordered reduction by trial index.
    InequalityAggregate agg{kind};
    std::vector<std::size_t> failing;
    for (std::size_t t = 0; t < verdicts.size(); ++t) {
      const auto& v = verdicts[t];
      ++agg.trials;
      if (v.holds) {
        ++agg.passes;
      } else {
        ++agg.failures;
        if (failing.size() < kMaxFailingCasesPerInequality) failing.push_back(t);
      }
      if (!v.hypotheses_hold()) ++agg.inadmissible;
      const Rational m = ScalarTraits<Scalar>::to_rational(v.margin);
      if (!agg.min_margin || m < *agg.min_margin) {
        agg.min_margin = m;
        agg.min_margin_trial = t;
      }
    }
    auto add_case = [&](std::size_t t, std::string_view role) {
      const auto c = make_trial_case<Scalar>(kind, campaign.generator, derive_seed(stream, t), t);
      report.cases.push_back(case_entry(c, verdicts[t], role, t, campaign.arithmetic));
    };
    if (agg.trials > 0) add_case(agg.min_margin_trial, "min_margin");
    for (auto t : failing) add_case(t, "failure");
    if (agg.failures > 0 || agg.inadmissible > 0) report.exit_code = 1;
    report.aggregates.push_back(agg);
  }
}

template <class Scalar>
void sharpness_typed(const Campaign& campaign, unsigned workers, RunReport& report) {
  const Scalar tol = tolerance_for<Scalar>(campaign);
  const std::uint64_t stream = derive_seed(campaign.seed, 0x5a);
  const std::uint64_t nq = campaign.trials;
  const std::uint64_t np = campaign.weights;
  auto weight = [&](std::uint64_t i) { return gen_ls_weight<Scalar>(campaign.generator.with_seed(derive_seed(stream, 2 * i))); };
  auto q_for = [&](std::uint64_t i, std::uint64_t j) {
    return gen_admissible_q<Scalar>(campaign.generator.with_seed(derive_seed(derive_seed(stream, 2 * i + 1), j)));
  };

  std::vector<InequalityVerdict<Scalar>> verdicts(np * nq, InequalityVerdict<Scalar>{InequalityKind::q0_sharpness});
  parallel_for(np * nq, workers, [&](std::size_t idx) {
    verdicts[idx] = check_q0_sharpness(weight(idx / nq), q_for(idx / nq, idx % nq), tol);
  });

  InequalityAggregate agg{InequalityKind::q0_sharpness};
  std::vector<std::size_t> failing;
  for (std::size_t idx = 0; idx < verdicts.size(); ++idx) {
    const auto& v = verdicts[idx];
    ++agg.trials;
    v.holds ? ++agg.passes : ++agg.failures;
    if (!v.holds && failing.size() < kMaxFailingCasesPerInequality) failing.push_back(idx);
    if (!v.hypotheses_hold()) ++agg.inadmissible;
    const Rational m = ScalarTraits<Scalar>::to_rational(v.margin);
    if (!agg.min_margin || m < *agg.min_margin) {
      agg.min_margin = m;
      agg.min_margin_trial = idx;
    }
  }
  auto add_case = [&](std::size_t idx, std::string_view role) {
    Case<Scalar> c{InequalityKind::q0_sharpness, std::nullopt, {}};
    c.functions.emplace("p", weight(idx / nq));
    c.functions.emplace("q", q_for(idx / nq, idx % nq));
    report.cases.push_back(case_entry(c, verdicts[idx], role, idx, campaign.arithmetic));
  };
  if (agg.trials > 0) add_case(agg.min_margin_trial, "min_margin");
  for (auto idx : failing) add_case(idx, "failure");

  // q = q0 must give equality for every weight.
  Json equality = Json::array();
  bool all_exact = true;
  for (std::uint64_t i = 0; i < np; ++i) {
    const auto v = check_q0_sharpness(weight(i), q0<Scalar>(), tol);
    const bool exact = ScalarTraits<Scalar>::is_exact ? v.margin == Scalar(0) : !(scalar_abs(v.margin) > tol);
    all_exact = all_exact && exact;
    equality.push_back({{"weight", i}, {"margin", scalar_to_json(v.margin)}, {"zero", exact}});
  }
  report.sections["q0_equality"] = {{"cases", np}, {"all_zero", all_exact}, {"margins", std::move(equality)}};
  if (agg.failures > 0 || agg.inadmissible > 0 || !all_exact) report.exit_code = 1;
  report.aggregates.push_back(agg);
}

template <class Fn>
RunReport timed(const Campaign& campaign, Fn&& body) {
  campaign.validate();
  const auto start = std::chrono::steady_clock::now();
  RunReport report;
  report.campaign = campaign;
  body(report);
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

const std::set<std::string>& expected_violations() {
  static const std::set<std::string> keys{"levin_steckin/p_symmetric", "levin_steckin/p_nondecreasing_half",
                                          "clausing_general/phi_endpoint_sum"};
  return keys;
}

}  // namespace

std::string_view to_string(CampaignMode m) {
  switch (m) {
    case CampaignMode::verify: return "verify";
    case CampaignMode::falsify: return "falsify";
    case CampaignMode::replay: return "replay";
    case CampaignMode::sharpness: return "sharpness";
  }
  return "unknown";
}

std::string_view to_string(Arithmetic a) { return a == Arithmetic::rational ? "rational" : "float"; }

std::optional<CampaignMode> parse_mode(std::string_view s) {
  for (auto m : {CampaignMode::verify, CampaignMode::falsify, CampaignMode::replay, CampaignMode::sharpness}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

std::optional<Arithmetic> parse_arithmetic(std::string_view s) {
  if (s == "rational") return Arithmetic::rational;
  if (s == "float") return Arithmetic::floating;
  return std::nullopt;
}

void Campaign::validate() const {
  generator.validate();
  if (mode == CampaignMode::replay && case_path.empty()) throw std::invalid_argument("replay needs a case file");
  if (mode == CampaignMode::falsify && budget < 1000) throw std::invalid_argument("falsify needs budget >= 1000");
  if (mode == CampaignMode::sharpness && weights == 0) throw std::invalid_argument("sharpness needs weights >= 1");
  if (tolerance && *tolerance < 0) throw std::invalid_argument("tolerance must be >= 0");
  if (search_breakpoints < 3) throw std::invalid_argument("search_breakpoints must be >= 3");
}

Campaign campaign_from_json(const Json& j, const std::string& source) {
  if (!j.is_object()) throw ParseError(source + ": campaign must be a JSON object");
  Campaign c;
  auto field = [&](const std::string& key) { return source + "." + key; };
  auto uint_of = [&](const Json& v, const std::string& key) -> std::uint64_t {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
      throw ParseError(field(key) + ": expected a non-negative integer");
    }
    return v.get<std::uint64_t>();
  };
  auto string_of = [&](const Json& v, const std::string& key) {
    if (!v.is_string()) throw ParseError(field(key) + ": expected a string");
    return v.get<std::string>();
  };

  for (const auto& [key, v] : j.items()) {
    if (key == "mode") {
      auto m = parse_mode(string_of(v, key));
      if (!m) throw ParseError(field(key) + ": unknown mode '" + v.get<std::string>() + "'");
      c.mode = *m;
    } else if (key == "inequalities") {
      if (!v.is_array()) throw ParseError(field(key) + ": expected an array");
      for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string k = key + "[" + std::to_string(i) + "]";
        auto kind = parse_inequality(string_of(v[i], k));
        if (!kind) throw ParseError(field(k) + ": unknown inequality '" + v[i].get<std::string>() + "'");
        c.inequalities.push_back(*kind);
      }
    } else if (key == "generator") {
      if (!v.is_object()) throw ParseError(field(key) + ": expected an object");
      for (const auto& [gk, gv] : v.items()) {
        const std::string k = key + "." + gk;
        if (gk == "n_breakpoints") {
          c.generator.n_breakpoints = static_cast<int>(uint_of(gv, k));
        } else if (gk == "value_scale") {
          if (!gv.is_number()) throw ParseError(field(k) + ": expected a number");
          c.generator.value_scale = gv.get<double>();
        } else if (gk == "grid") {
          const auto g = string_of(gv, k);
          if (g == "uniform") {
            c.generator.grid = GridKind::uniform;
          } else if (g == "random") {
            c.generator.grid = GridKind::random;
          } else {
            throw ParseError(field(k) + ": expected 'uniform' or 'random'");
          }
        } else {
          throw ParseError(field(k) + ": unknown field");
        }
      }
    } else if (key == "trials") {
      c.trials = uint_of(v, key);
    } else if (key == "arithmetic") {
      auto a = parse_arithmetic(string_of(v, key));
      if (!a) throw ParseError(field(key) + ": expected 'rational' or 'float'");
      c.arithmetic = *a;
    } else if (key == "tolerance") {
      c.tolerance = rational_from_json(v, field(key));
    } else if (key == "out") {
      c.output_path = string_of(v, key);
    } else if (key == "seed") {
      c.seed = uint_of(v, key);
    } else if (key == "budget") {
      c.budget = uint_of(v, key);
    } else if (key == "search_breakpoints") {
      c.search_breakpoints = static_cast<int>(uint_of(v, key));
    } else if (key == "weights") {
      c.weights = uint_of(v, key);
    } else if (key == "case") {
      c.case_path = string_of(v, key);
    } else {
      throw ParseError(field(key) + ": unknown field");
    }
  }
  return c;
}

Json to_json(const Campaign& c) {
  Json out;
  out["mode"] = std::string(to_string(c.mode));
  Json kinds = Json::array();
  for (auto k : c.inequalities) kinds.push_back(std::string(to_string(k)));
  out["inequalities"] = std::move(kinds);
  out["generator"] = {{"n_breakpoints", c.generator.n_breakpoints},
                      {"value_scale", c.generator.value_scale},
                      {"grid", c.generator.grid == GridKind::uniform ? "uniform" : "random"}};
  out["trials"] = c.trials;
  out["arithmetic"] = std::string(to_string(c.arithmetic));
  out["tolerance"] = c.tolerance ? Json(c.tolerance->get_str()) : Json(nullptr);
  out["out"] = c.output_path;
  out["seed"] = c.seed;
  out["budget"] = c.budget;
  out["search_breakpoints"] = c.search_breakpoints;
  out["weights"] = c.weights;
  out["case"] = c.case_path;
  return out;
}

Json RunReport::to_json() const {
  Json out;
  out["tool"] = "plineq";
  out["report_version"] = 1;
  out["campaign"] = plineq::to_json(campaign);
  Json results = Json::array();
  for (const auto& a : aggregates) {
    Json r;
    r["inequality"] = std::string(to_string(a.inequality));
    r["trials"] = a.trials;
    r["passes"] = a.passes;
    r["failures"] = a.failures;
    r["inadmissible"] = a.inadmissible;
    r["min_margin"] = a.min_margin ? Json(a.min_margin->get_str()) : Json(nullptr);
    r["min_margin_approx"] = a.min_margin ? Json(a.min_margin->get_d()) : Json(nullptr);
    r["min_margin_trial"] = a.min_margin_trial;
    results.push_back(std::move(r));
  }
  out["results"] = std::move(results);
  for (const auto& [k, v] : sections.items()) out[k] = v;
  out["cases"] = cases;
  out["exit_code"] = exit_code;
  out["wall_time_seconds"] = wall_time_seconds;
  return out;
}

RunReport run_verify(const Campaign& campaign, unsigned workers) {
  return timed(campaign, [&](RunReport& report) {
    if (campaign.arithmetic == Arithmetic::rational) {
      verify_typed<Rational>(campaign, workers, report);
    } else {
      verify_typed<double>(campaign, workers, report);
    }
  });
}

RunReport run_sharpness(const Campaign& campaign, unsigned workers) {
  return timed(campaign, [&](RunReport& report) {
    if (campaign.arithmetic == Arithmetic::rational) {
      sharpness_typed<Rational>(campaign, workers, report);
    } else {
      sharpness_typed<double>(campaign, workers, report);
    }
  });
}

RunReport run_falsify(const Campaign& campaign, unsigned workers) {
  return timed(campaign, [&](RunReport& report) {
    std::set<std::string> wanted;
    for (auto k : campaign.inequalities) wanted.insert(std::string(to_string(k)));
    const auto suite = hypothesis_necessity_suite(campaign.budget, campaign.seed, campaign.search_breakpoints, workers);

    Json table = Json::array();
    Json expectations = Json::array();
    for (const auto& [key, r] : suite) {
      const std::string ineq(to_string(r.problem.inequality));
      if (!wanted.empty() && !wanted.contains(ineq)) continue;
      const std::string dropped = r.problem.dropped_hypotheses.empty() ? "none" : *r.problem.dropped_hypotheses.begin();
      Json e;
      e["key"] = key;
      e["inequality"] = ineq;
      e["dropped"] = dropped;
      e["status"] = r.violated ? "FOUND-VIOLATION" : "NO-VIOLATION-FOUND";
      e["best_margin"] = r.best_margin;
      e["exact_margin"] = r.exact_margin ? Json(r.exact_margin->get_str()) : Json(nullptr);
      e["active_hypotheses_hold"] = r.active_hypotheses_hold;
      e["iterations_used"] = r.iterations_used;
      Json trace = Json::array();
      for (const auto& tp : r.trace) trace.push_back({tp.iteration, tp.margin});
      e["trace"] = std::move(trace);
      if (r.violated && r.best_inputs) {
        Json w = to_json(*r.best_inputs);
        w["arithmetic"] = "rational";
        w["margin"] = r.exact_margin->get_str();
        e["witness"] = std::move(w);
        report.cases.push_back(e["witness"]);
      }
      table.push_back(std::move(e));

      std::optional<bool> expect_violation;
      if (dropped == "none") expect_violation = false;
      if (expected_violations().contains(key)) expect_violation = true;
      if (expect_violation) {
        const bool met = r.violated == *expect_violation;
        expectations.push_back({{"key", key}, {"expect", *expect_violation ? "FOUND-VIOLATION" : "NO-VIOLATION-FOUND"},
                                {"met", met}});
        if (!met) report.exit_code = 1;
      }
    }
    report.sections["necessity"] = std::move(table);
    report.sections["expectations"] = std::move(expectations);
  });
}

RunReport run_campaign(const Campaign& campaign, unsigned workers) {
  switch (campaign.mode) {
    case CampaignMode::verify: return run_verify(campaign, workers);
    case CampaignMode::falsify: return run_falsify(campaign, workers);
    case CampaignMode::sharpness: return run_sharpness(campaign, workers);
    case CampaignMode::replay: break;
  }
  throw std::invalid_argument("replay mode does not produce a run report; use run_replay");
}

ReplayOutcome run_replay(const std::string& case_file) {
  const Json j = read_json_file(case_file);
  const auto c = case_from_json<Rational>(j, case_file);
  ReplayOutcome out{evaluate(c, Rational(0))};
  if (j.contains("margin")) {
    out.recorded_margin = rational_from_json(j["margin"], case_file + ".margin");
    out.recorded_arithmetic = j.contains("arithmetic") && j["arithmetic"].is_string() ? j["arithmetic"].get<std::string>()
                                                                                       : "rational";
    if (out.recorded_arithmetic == "float") {
      const double got = out.verdict.margin.get_d();
      const double want = out.recorded_margin->get_d();
      out.reproduced = std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want));
    } else {
      out.reproduced = out.verdict.margin == *out.recorded_margin;
    }
  }
  return out;
}

Json ReplayOutcome::to_json() const {
  Json out;
  out["verdict"] = plineq::to_json(verdict);
  out["recorded_margin"] = recorded_margin ? Json(recorded_margin->get_str()) : Json(nullptr);
  out["recorded_arithmetic"] = recorded_arithmetic;
  out["reproduced"] = reproduced;
  return out;
}

void write_report(const RunReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write report to '" + path + "'");
  out << report.to_json().dump(2) << '\n';
  if (!out) throw std::runtime_error("failed while writing report to '" + path + "'");
}

unsigned default_workers() {
  if (const char* env = std::getenv("PLINEQ_WORKERS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

}  // namespace plineq
