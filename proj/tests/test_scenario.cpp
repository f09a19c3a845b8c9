#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <utility>

#include "relchan/scenario.hpp"

using namespace relchan;

namespace {

std::string scenario_path(const std::string& name) { return std::string(RELCHAN_SCENARIO_DIR) + "/" + name; }

const NamedTable& table_named(const ScenarioResult& r, const std::string& name) {
  for (const auto& t : r.tables)
    if (t.name == name) return t;
  throw std::runtime_error("no table " + name);
}

std::size_t column(const CsvTable& t, const std::string& name) {
  for (std::size_t i = 0; i < t.header().size(); ++i)
    if (t.header()[i] == name) return i;
  throw std::runtime_error("no column " + name);
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("relchan_scenario_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST(Config, DefaultsFromEmptyObject) {
  const ScenarioConfig c = parse_config(json::object());
  EXPECT_EQ(c.mass, 1.0);
  EXPECT_EQ(c.seed, 1u);
  EXPECT_FALSE(c.trials.has_value());
  EXPECT_EQ(c.foliation.n[0], 1.0);
}

TEST(Config, UnknownKeysRejected) {
  EXPECT_THROW(parse_config(json::parse(R"({"mas": 1.0})")), ConfigError);
  EXPECT_THROW(parse_config(json::parse(R"({"kernel": {"family": "constant", "width": 2}})")), ConfigError);
  EXPECT_THROW(parse_config(json::parse(R"({"atoms": {"ring": {"count": 4, "radius": 0.5, "axis": "z"}}})")),
               ConfigError);
}

TEST(Config, BadValuesRejected) {
  for (const char* text : {R"({"mass": -1})", R"({"mass": "1"})", R"({"seed": -3})", R"({"trials": 0})",
                           R"({"trials": 2.5})", R"({"case": "V"})", R"({"kernel": {"family": "gaussian"}})",
                           R"({"kernel": {"lambda": -1}})", R"({"foliation": {"n": [1, 0.5, 0, 0]}})",
                           R"({"foliation": {"n": [1, 0, 0]}})", R"({"atoms": {}})",
                           R"({"atoms": {"list": [[0, 0, 0]], "ring": {"count": 2}}})", R"([1, 2])"})
    EXPECT_THROW(parse_config(json::parse(text)), ConfigError) << text;
}

TEST(Config, LoadErrorsAreConfigErrors) {
  EXPECT_THROW(load_config(scenario_path("does_not_exist.json")), ConfigError);
  const auto dir = scratch("load");
  std::filesystem::create_directories(dir);
  write_file((dir / "broken.json").string(), "{\"mass\": 1.0,");
  EXPECT_THROW(load_config((dir / "broken.json").string()), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST(Config, InvalidParamsAreConfigErrors) {
  // delta0 = -(beta + 2 Re gamma + |gamma|^2) < 0
  const ScenarioConfig c = parse_config(json::parse(R"({"beta": 0.5, "gamma_re": 0.1})"));
  EXPECT_THROW(run(ScenarioKind::verify_covariance, c), ConfigError);
  const ScenarioConfig dup = parse_config(json::parse(R"({"atoms": {"list": [[0.1, 0, 0], [0.1, 0, 0]]}})"));
  EXPECT_THROW(run(ScenarioKind::choi, dup), ConfigError);
}

TEST(Config, AtomSpecifications) {
  const auto ring = build_basis(parse_config(json::parse(R"({"atoms": {"ring": {"count": 6, "radius": 0.7,
      "plane": "yz", "include_rest": true}}})")));
  EXPECT_EQ(ring.size(), 7u);
  EXPECT_GE(ring.rest_atom(), 0);
  for (std::size_t i = 0; i < ring.size(); ++i) EXPECT_EQ(ring[i].spatial()(0), 0.0);
  const auto chain = build_basis(parse_config(json::parse(R"({"mass": 1.3, "atoms": {"boost_chain":
      {"seed": [0.3, -0.2, 0.1], "rapidity": 0.3, "length": 5}}})")));
  EXPECT_EQ(chain.size(), 5u);
  EXPECT_EQ(chain.mass(), 1.3);
  const auto list = build_basis(parse_config(json::parse(R"({"atoms": {"list": [[0.1, 0.2, 0.3]]}})")));
  EXPECT_EQ(list.size(), 1u);
}

TEST(Run, EveryScenarioFilePasses) {
  const std::vector<std::pair<std::string, ScenarioKind>> files{
      {"covariance_identity.json", ScenarioKind::verify_covariance},
      {"covariance_dissipative.json", ScenarioKind::verify_covariance},
      {"conservation.json", ScenarioKind::conservation},
      {"conservation_unitary.json", ScenarioKind::conservation},
      {"char_fn.json", ScenarioKind::char_fn},
      {"choi.json", ScenarioKind::choi},
      {"dilation.json", ScenarioKind::dilation_demo}};
  for (const auto& [file, kind] : files) {
    const ScenarioResult r = run(kind, load_config(scenario_path(file)));
    EXPECT_TRUE(r.passed) << file << ": " << r.summary;
    EXPECT_FALSE(r.tables.empty()) << file;
  }
  const ScenarioConfig kraus = load_config(scenario_path("solve_kraus.json"));
  for (Case c : {Case::I, Case::II, Case::III, Case::IV})
    EXPECT_TRUE(run(ScenarioKind::solve_kraus, kraus, {c}).passed) << to_string(c);
  EXPECT_TRUE(run(ScenarioKind::check_algebra, ScenarioConfig{}).passed);
}

TEST(Run, IdentityCovarianceHasHundredAndOneRows) {
  const ScenarioResult r = run(ScenarioKind::verify_covariance, load_config(scenario_path("covariance_identity.json")));
  const CsvTable& t = table_named(r, "residuals").table;
  ASSERT_EQ(t.rows().size(), 101u);
  EXPECT_EQ(t.rows().back()[0].text, "max");
  const std::size_t col = column(t, "residual");
  for (const auto& row : t.rows()) EXPECT_LT(*row[col].number, 1e-10);
}

TEST(Run, SolveKrausCaseTwo) {
  ScenarioConfig c = load_config(scenario_path("solve_kraus.json"));
  const ScenarioResult r = run(ScenarioKind::solve_kraus, c, {Case::II});
  ASSERT_TRUE(r.document.has_value());
  EXPECT_EQ(r.document->at("observed_dimension").get<int>(), 0);
  EXPECT_EQ(r.document->at("expected_dimension").get<int>(), 0);
  EXPECT_EQ(r.document->at("seed").get<std::uint64_t>(), 2024u);
  // the case comes from the options, the configuration, or not at all
  EXPECT_THROW(run(ScenarioKind::solve_kraus, c), ConfigError);
  c.lg_case = Case::IV;
  EXPECT_EQ(run(ScenarioKind::solve_kraus, c).document->at("observed_dimension").get<int>(), 2);
}

TEST(Run, ConservationDefectMatchesFormula) {
  const ScenarioResult r = run(ScenarioKind::conservation, load_config(scenario_path("conservation.json")));
  ASSERT_TRUE(r.passed);
  const CsvTable& t = table_named(r, "momentum").table;
  const std::size_t dre = column(t, "defect_re"), dim = column(t, "defect_im");
  const std::size_t fre = column(t, "formula_defect_re"), fim = column(t, "formula_defect_im");
  double largest = 0.0;
  for (const auto& row : t.rows()) {
    EXPECT_NEAR(*row[dre].number, *row[fre].number, 1e-10);
    EXPECT_NEAR(*row[dim].number, *row[fim].number, 1e-10);
    largest = std::max(largest, std::abs(*row[dre].number));
  }
  EXPECT_GT(largest, 1e-3);  // beta = 0.1 produces a visible defect
  EXPECT_THROW(table_named(r, "lorentz"), std::runtime_error);
}

TEST(Run, UnitaryConservationHasLorentzTable) {
  const ScenarioResult r = run(ScenarioKind::conservation, load_config(scenario_path("conservation_unitary.json")));
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(table_named(r, "lorentz").table.rows().size(), 9u);
}

TEST(Run, Deterministic) {
  const ScenarioConfig c = load_config(scenario_path("covariance_dissipative.json"));
  const auto a = scratch("det_a"), b = scratch("det_b");
  const auto fa = emit_report(run(ScenarioKind::verify_covariance, c), ReportFormat::csv, a.string());
  const auto fb = emit_report(run(ScenarioKind::verify_covariance, c), ReportFormat::csv, b.string());
  ASSERT_EQ(fa.size(), fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i) EXPECT_EQ(read_file(fa[i]), read_file(fb[i]));
  ScenarioConfig other = c;
  other.seed = c.seed + 1;
  EXPECT_NE(table_named(run(ScenarioKind::verify_covariance, other), "residuals").table.str(), read_file(fa[0]));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST(Report, FileNamesAndJsonRoundTrip) {
  const auto dir = scratch("report");
  const ScenarioResult r = run(ScenarioKind::solve_kraus, load_config(scenario_path("solve_kraus.json")), {Case::IV});
  const auto files = emit_report(r, ReportFormat::json, dir.string());
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(std::filesystem::path(files[0]).filename(), "solve-kraus_summary.json");
  EXPECT_EQ(std::filesystem::path(files[1]).filename(), "solve-kraus.json");
  const json doc = json::parse(read_file(files[1]));
  EXPECT_EQ(doc, *r.document);
  const json table = json::parse(read_file(files[0]));
  EXPECT_EQ(table.at("rows")[0].at("observed_dimension").get<int>(), 2);
  std::filesystem::remove_all(dir);
}

TEST(Report, CsvUsesLf) {
  const auto dir = scratch("lf");
  const auto files = emit_report(run(ScenarioKind::choi, load_config(scenario_path("choi.json"))), ReportFormat::csv,
                                 dir.string());
  for (const auto& f : files) EXPECT_EQ(read_file(f).find('\r'), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(Report, UnwritableDirectoryIsIoError) {
  const auto dir = scratch("blocked");
  std::filesystem::create_directories(dir);
  write_file((dir / "file").string(), "x");
  const ScenarioResult r = run(ScenarioKind::check_algebra, ScenarioConfig{});
  EXPECT_THROW(emit_report(r, ReportFormat::csv, (dir / "file" / "sub").string()), IoError);
  std::filesystem::remove_all(dir);
}

TEST(OutputDir, Precedence) {
  ScenarioConfig c;
  ::unsetenv(kOutDirEnv);
  EXPECT_EQ(resolve_output_dir(std::nullopt, c), ".");
  c.output_dir = "from_config";
  EXPECT_EQ(resolve_output_dir(std::nullopt, c), "from_config");
  ::setenv(kOutDirEnv, "from_env", 1);
  EXPECT_EQ(resolve_output_dir(std::nullopt, c), "from_env");
  EXPECT_EQ(resolve_output_dir(std::string("from_flag"), c), "from_flag");
  ::unsetenv(kOutDirEnv);
}

TEST(ExitCodes, Values) {
  EXPECT_EQ(kExitPass, 0);
  EXPECT_EQ(kExitCheckFailed, 1);
  EXPECT_EQ(kExitConfigError, 2);
  EXPECT_EQ(kExitIoError, 3);
}
