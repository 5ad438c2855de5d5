#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "horolab/harness/run.hpp"

using namespace horolab::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const auto p = fs::temp_directory_path() / ("horolab_test_harness_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const fs::path& p) { return json::parse(slurp(p)); }

std::vector<std::string> diagnostics_of(const json& doc) {
  try {
    parse_config(doc);
  } catch (const ConfigError& e) {
    return e.diagnostics;
  }
  return {};
}

}  // namespace

TEST(Config, RejectsUnknownKindsAndKeys) {
  EXPECT_THROW(parse_config(json{{"kind", "nope"}}), ConfigError);
  EXPECT_THROW(parse_config(json::array()), ConfigError);
  auto d = diagnostics_of({{"kind", "escape"}, {"ladder", {1, 2}}, {"colour", "blue"}});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NE(d[0].find("colour"), std::string::npos);
}

TEST(Config, SeedMandatoryForStochasticKinds) {
  auto d = diagnostics_of({{"kind", "equidistribution"}});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NE(d[0].find("seed"), std::string::npos);
  EXPECT_NO_THROW(parse_config({{"kind", "escape"}}));
  EXPECT_FALSE(diagnostics_of({{"kind", "equidistribution"}, {"seed", -1}}).empty());
}

TEST(Config, TypeErrorsAndMissingRequiredKeys) {
  auto d = diagnostics_of({{"kind", "identity-suite"}, {"n_values", "1,2"}});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NE(d[0].find("array"), std::string::npos);
  d = diagnostics_of({{"kind", "qfixed-limit"}});
  EXPECT_EQ(d.size(), 2u);  // cases and closed_form
}

TEST(Config, DefaultsAreFilledIn) {
  const auto cfg = parse_config({{"kind", "escape"}});
  EXPECT_EQ(cfg.doc["tolerance"].get<double>(), 1e-12);
  EXPECT_EQ(cfg.criterion(), "AC9");
  EXPECT_FALSE(cfg.has_seed);
}

TEST(Config, SchemaCoversEveryKind) {
  const auto schema = config_schema();
  for (const auto& k : experiment_kinds()) {
    ASSERT_TRUE(schema.contains(k)) << k;
    EXPECT_TRUE(schema[k]["keys"].contains("kind"));
  }
  EXPECT_TRUE(schema["equidistribution"]["keys"]["seed"]["required"].get<bool>());
}

TEST(Run, IdentitySuiteN2Passes) {
  const auto dir = scratch("identity");
  const auto res = run(parse_config({{"kind", "identity-suite"}, {"n_values", {2}}}), {dir.string(), {}, 0});
  EXPECT_EQ(res.exit_code, kPass);
  const auto summary = read_json(dir / "summary.json");
  ASSERT_TRUE(summary.contains("AC1"));
  EXPECT_TRUE(summary["AC1"]["pass"].get<bool>());
  const auto manifest = read_json(dir / "manifest.json");
  EXPECT_EQ(manifest["kind"], "identity-suite");
  EXPECT_EQ(manifest["config"]["n_values"], json({2}));
  EXPECT_FALSE(manifest["version"].get<std::string>().empty());
  EXPECT_TRUE(fs::exists(dir / "identities.csv"));
}

TEST(Run, CorruptedPredicateFailsWithInstance) {
  const auto dir = scratch("corrupt");
  const auto cfg = parse_config(
      {{"kind", "basic-lemma-fuzz"}, {"seed", 7}, {"n_values", {1}}, {"instances", 10}, {"corrupt_sk", true}});
  const auto res = run(cfg, {dir.string(), {}, 0});
  EXPECT_EQ(res.exit_code, kCheckFailure);
  ASSERT_TRUE(fs::exists(dir / "failures.json"));
  const auto failures = read_json(dir / "failures.json");
  ASSERT_FALSE(failures.empty());
  EXPECT_TRUE(failures[0].contains("v"));
  EXPECT_TRUE(failures[0].contains("x"));
  EXPECT_TRUE(failures[0]["report"].contains("S_k"));
  EXPECT_FALSE(read_json(dir / "summary.json")["AC2"]["pass"].get<bool>());
}

TEST(Run, EquidistributionIsByteIdenticalOnRerun) {
  const auto cfg = parse_config({{"kind", "equidistribution"}, {"seed", 42}});
  const auto a = scratch("equi_a"), b = scratch("equi_b");
  ASSERT_EQ(run(cfg, {a.string(), {}, 0}).exit_code, kPass);
  ASSERT_EQ(run(cfg, {b.string(), {}, 0}).exit_code, kPass);
  for (const auto* name : {"ks.csv", "quantiles.csv", "manifest.json"}) EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  EXPECT_EQ(read_json(a / "summary.json")["AC8"]["checks"][0]["detail"],
            read_json(b / "summary.json")["AC8"]["checks"][0]["detail"]);
}

TEST(Run, SeedOverrideChangesSamples) {
  const auto cfg = parse_config({{"kind", "equidistribution"}, {"seed", 42}, {"samples", 500}});
  const auto a = scratch("seed_a"), b = scratch("seed_b");
  run(cfg, {a.string(), {}, 0});
  run(cfg, {b.string(), 43, 0});
  EXPECT_EQ(read_json(b / "manifest.json")["seed"], 43);
  EXPECT_NE(slurp(a / "quantiles.csv"), slurp(b / "quantiles.csv"));
}

TEST(Run, BudgetExceededExitCode) {
  const auto dir = scratch("budget");
  const auto res = run(parse_config({{"kind", "identity-suite"}, {"n_values", {3}}, {"max_seconds", 1e-9}}),
                       {dir.string(), {}, 0});
  EXPECT_TRUE(res.budget_exceeded);
  EXPECT_EQ(res.exit_code, kBudgetExceeded);
}

TEST(Run, JobsDoNotChangeOutput) {
  const auto cfg = parse_config({{"kind", "dirichlet-scan"},
                                 {"seed", 3},
                                 {"equivalence_queries", 20},
                                 {"completeness_queries", 20},
                                 {"monotone_queries", 20},
                                 {"scan_max_k", 4},
                                 {"scan_grid", 30}});
  const auto a = scratch("jobs_a"), b = scratch("jobs_b");
  run(cfg, {a.string(), {}, 1});
  run(cfg, {b.string(), {}, 2});
  for (const auto* name : {"scan.csv", "scan_fractions.csv", "dirichlet_queries.csv", "rbar.csv"})
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
}

TEST(Report, EmptyDirectoryGivesHint) {
  const auto dir = scratch("empty");
  fs::create_directories(dir);
  try {
    report(dir.string());
    FAIL() << "expected ReportError";
  } catch (const ReportError& e) {
    EXPECT_NE(std::string(e.what()).find("Hint"), std::string::npos);
  }
}

TEST(Report, IdentityDigestListsSevenIdentities) {
  const auto dir = scratch("digest");
  run(parse_config({{"kind", "identity-suite"}}), {dir.string(), {}, 0});
  const auto text = report(dir.string());
  for (char id = 'a'; id <= 'g'; ++id)
    EXPECT_NE(text.find(std::string("identity (") + id + ")"), std::string::npos) << id;
  EXPECT_NE(text.find("4/4 pass"), std::string::npos);
  EXPECT_EQ(text.find("FAIL"), std::string::npos);
}

TEST(Report, FailuresSortFirst) {
  const auto dir = scratch("mixed");
  run(parse_config({{"kind", "basic-lemma-fuzz"}, {"seed", 7}, {"n_values", {1}}, {"instances", 10}, {"corrupt_sk", true}}),
      {dir.string(), {}, 0});
  const auto text = report(dir.string());
  const auto first_fail = text.find("  FAIL  ");
  const auto first_ok = text.find("  ok    ");
  ASSERT_NE(first_fail, std::string::npos);
  ASSERT_NE(first_ok, std::string::npos);
  EXPECT_LT(first_fail, first_ok);
}

TEST(Presets, OnePresetPerCriterionAndAllValid) {
  const auto presets = list_presets(default_preset_dir());
  ASSERT_FALSE(presets.empty());
  std::multiset<std::string> criteria;
  for (const auto& p : presets) {
    EXPECT_NE(p.kind, "invalid") << p.name << ": " << p.description;
    if (!p.criterion.empty()) criteria.insert(p.criterion);
  }
  for (int ac = 1; ac <= 10; ++ac) EXPECT_EQ(criteria.count("AC" + std::to_string(ac)), 1u) << ac;
}

TEST(Cli, ExitCodes) {
  const std::string cli = HOROLAB_CLI;
  const auto dir = scratch("cli");
  fs::create_directories(dir);
  std::ofstream(dir / "bad.json") << R"({"kind": "escape", "bogus": 1})";
  std::ofstream(dir / "ok.json") << R"({"kind": "escape"})";
  auto status = [&](const std::string& args) {
    const int raw = std::system((cli + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };
  EXPECT_EQ(status("run --config " + (dir / "bad.json").string() + " --out " + (dir / "a").string()), kConfigError);
  EXPECT_EQ(status("run --config " + (dir / "missing.json").string() + " --out " + (dir / "a").string()), kConfigError);
  EXPECT_EQ(status("run --config " + (dir / "ok.json").string() + " --out " + (dir / "b").string()), kPass);
  EXPECT_EQ(status("report " + (dir / "b").string()), 0);
  EXPECT_NE(status("report " + (dir / "nothing").string()), 0);
  EXPECT_EQ(status("list-presets"), 0);
}
