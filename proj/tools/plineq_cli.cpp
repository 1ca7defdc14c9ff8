// plineq: verification campaigns, hypothesis-necessity searches and case replay.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "plineq/campaign.hpp"

namespace {

constexpr int kUsageError = 2;

struct Overrides {
  std::string campaign_path;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> arithmetic;
  std::optional<std::string> tolerance;
  std::optional<std::string> out;
  std::optional<std::string> case_path;
  std::optional<std::uint64_t> budget;
  std::optional<unsigned> workers;
};

plineq::Campaign build_campaign(const Overrides& o) {
  plineq::Campaign c;
  if (!o.campaign_path.empty()) {
    c = plineq::campaign_from_json(plineq::read_json_file(o.campaign_path), o.campaign_path);
  }
  if (o.mode) {
    auto m = plineq::parse_mode(*o.mode);
    if (!m) throw std::invalid_argument("--mode: unknown mode '" + *o.mode + "'");
    c.mode = *m;
  }
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = *o.seed;
  if (o.arithmetic) c.arithmetic = *plineq::parse_arithmetic(*o.arithmetic);
  if (o.tolerance) c.tolerance = plineq::parse_rational(*o.tolerance);
  if (o.out) c.output_path = *o.out;
  if (o.case_path) c.case_path = *o.case_path;
  if (o.budget) c.budget = *o.budget;
  return c;
}

void print_summary(const plineq::RunReport& report) {
  for (const auto& a : report.aggregates) {
    std::cerr << plineq::to_string(a.inequality) << ": " << a.passes << "/" << a.trials << " passed";
    if (a.min_margin) std::cerr << ", min margin " << a.min_margin->get_str() << " (trial " << a.min_margin_trial << ")";
    std::cerr << '\n';
  }
  if (report.sections.contains("necessity")) {
    for (const auto& e : report.sections["necessity"]) {
      std::cerr << e["key"].get<std::string>() << ": " << e["status"].get<std::string>() << '\n';
    }
  }
  if (report.sections.contains("q0_equality")) {
    std::cerr << "q0 equality: " << (report.sections["q0_equality"]["all_zero"].get<bool>() ? "exact" : "NOT exact")
              << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks of integral inequalities over piecewise-linear functions"};
  Overrides o;
  app.add_option("--campaign", o.campaign_path, "Campaign file (JSON)")->check(CLI::ExistingFile);
  app.add_option("--mode", o.mode, "verify | falsify | replay | sharpness")
      ->check(CLI::IsMember({"verify", "falsify", "replay", "sharpness"}));
  app.add_option("--trials", o.trials, "Trials per inequality");
  app.add_option("--seed", o.seed, "Master seed");
  app.add_option("--arithmetic", o.arithmetic, "rational | float")->check(CLI::IsMember({"rational", "float"}));
  app.add_option("--tolerance", o.tolerance, "Verdict tolerance, e.g. 0 or 1/1000000000");
  app.add_option("--out", o.out, "Report path (default: stdout)");
  app.add_option("--case", o.case_path, "Serialized case for replay");
  app.add_option("--budget", o.budget, "Search iterations per hypothesis (falsify)");
  app.add_option("--workers", o.workers, "Worker threads (default: $PLINEQ_WORKERS or 1)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  plineq::Campaign campaign;
  try {
    campaign = build_campaign(o);
    campaign.validate();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  const unsigned workers = o.workers.value_or(plineq::default_workers());

  try {
    if (campaign.mode == plineq::CampaignMode::replay) {
      const auto outcome = plineq::run_replay(campaign.case_path);
      std::cout << outcome.to_json().dump(2) << '\n';
      if (!outcome.reproduced) std::cerr << "recorded margin was not reproduced\n";
      return outcome.reproduced ? 0 : 1;
    }
    const auto report = plineq::run_campaign(campaign, workers);
    if (campaign.output_path.empty()) {
      std::cout << report.to_json().dump(2) << '\n';
    } else {
      plineq::write_report(report, campaign.output_path);
    }
    print_summary(report);
    return report.exit_code;
  } catch (const plineq::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
}
