// relchan: batch scenarios for covariant channels on the vacuum plus
// one-particle sector. Exit status: 0 all checks passed, 1 a check failed,
// 2 configuration error, 3 I/O error.

#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "relchan/relchan.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "csv";
  std::string lg_case;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "scenario configuration (JSON)");
  sub->add_option("--seed", f.seed, "overrides the configured seed");
  sub->add_option("--out", f.out, "output directory");
  sub->add_option("--format", f.format, "report format")->check(CLI::IsMember({"csv", "json"}));
}

int execute(relchan::ScenarioKind kind, const Flags& f) {
  using namespace relchan;
  ScenarioConfig config;
  RunOptions opt;
  try {
    if (!f.config.empty()) config = load_config(f.config);
    if (f.seed) config.seed = *f.seed;
    if (!f.lg_case.empty()) {
      opt.lg_case = parse_case(f.lg_case);
      if (!opt.lg_case) throw ConfigError("--case must be one of I, II, III, IV");
    }
  } catch (const ConfigError& e) {
    std::cerr << "relchan: " << e.what() << "\n";
    return kExitConfigError;
  }

  ScenarioResult result;
  try {
    result = run(kind, config, opt);
  } catch (const ConfigError& e) {
    std::cerr << "relchan: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const Error& e) {
    std::cerr << "relchan: " << to_string(kind) << " failed: " << e.what() << "\n";
    return kExitCheckFailed;
  }

  try {
    const auto dir = resolve_output_dir(f.out.empty() ? std::nullopt : std::optional<std::string>(f.out), config);
    const auto files = emit_report(result, f.format == "json" ? ReportFormat::json : ReportFormat::csv, dir);
    for (const auto& p : files) std::cout << "wrote " << p << "\n";
  } catch (const IoError& e) {
    std::cerr << "relchan: " << e.what() << "\n";
    return kExitIoError;
  }
  std::cout << to_string(kind) << ": " << result.summary << "\n"
            << (result.passed ? "all checks passed" : "CHECK FAILED") << "\n";
  return result.passed ? kExitPass : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  using relchan::ScenarioKind;
  CLI::App app{"Poincare-covariant channels on the vacuum plus one-particle sector"};
  app.require_subcommand(1);

  Flags flags;
  std::optional<ScenarioKind> chosen;
  auto sub = [&](ScenarioKind k, const std::string& help) {
    CLI::App* s = app.add_subcommand(relchan::to_string(k), help);
    add_common(s, flags);
    s->callback([&chosen, k] { chosen = k; });
    return s;
  };
  sub(ScenarioKind::verify_covariance, "two-path covariance residuals over random group elements");
  CLI::App* kraus = sub(ScenarioKind::solve_kraus, "little-group constraint solve for one case of the table");
  kraus->add_option("--case", flags.lg_case, "I, II, III or IV")->check(CLI::IsMember({"I", "II", "III", "IV"}));
  sub(ScenarioKind::char_fn, "characteristic function samples, Bochner check and moments");
  sub(ScenarioKind::conservation, "four-momentum and Lorentz characteristic-function identities");
  sub(ScenarioKind::check_algebra, "structure constants, Jacobi identity and foliation brackets");
  sub(ScenarioKind::choi, "Choi matrix and Kraus completeness");
  sub(ScenarioKind::dilation_demo, "Kraus sets from system-environment unitaries");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : relchan::kExitConfigError;
  }
  return execute(*chosen, flags);
}
