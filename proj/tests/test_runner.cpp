#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qhyper/errors.hpp"
#include "qhyper/runner.hpp"

namespace qhyper {
namespace {

RunConfig config_for(Command command, std::vector<std::string> ids = {}) {
  RunConfig c;
  c.command = command;
  c.ids = std::move(ids);
  return c;
}

int run_cli(const std::string& args) {
  const int status = std::system((std::string(QVERIFY_PATH) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Runner, VerifyExample) {
  auto c = config_for(Command::kVerify, {"jackson_8phi7"});
  c.trials = 20;
  c.seed = 42;
  c.n_max = 6;
  const auto result = run(c);
  EXPECT_EQ(result.exit_code, 0);
  const auto& item = result.report["items"][0];
  EXPECT_EQ(item["status"], "PASS");
  EXPECT_EQ(item["succeeded"], 20);
  EXPECT_EQ(item["trials"], 20);
  EXPECT_EQ(item["max_indices"]["n"], 6);
}

TEST(Runner, CertifyAndSeriesExamples) {
  auto c = config_for(Command::kCertify, {"all"});
  c.n_max = 5;
  c.trials = 10;
  c.seed = 7;
  const auto certified = run(c);
  EXPECT_EQ(certified.exit_code, 0);
  EXPECT_EQ(certified.report["items"].size(), 7u);

  auto s = config_for(Command::kSeries, {"jacobi_triple"});
  s.order = 60;
  s.trials = 5;
  s.seed = 3;
  EXPECT_EQ(run(s).exit_code, 0);
}

TEST(Runner, AllEnumeratesEveryItem) {
  auto c = config_for(Command::kAll);
  c.trials = 3;
  const auto result = run(c);
  EXPECT_EQ(result.exit_code, 0);
  std::map<std::string, int> kinds;
  for (const auto& item : result.report["items"]) ++kinds[item["kind"].get<std::string>()];
  EXPECT_EQ(kinds["identity"], 18);
  EXPECT_EQ(kinds["proof"], 7);
  EXPECT_EQ(kinds["series"], 6);
  EXPECT_EQ(result.report["summary"]["items"], 31);
  EXPECT_EQ(result.report["summary"]["passed"], 31);
}

TEST(Runner, ReportShape) {
  auto c = config_for(Command::kVerify, {"watson_transform"});
  c.trials = 2;
  const auto result = run(c);
  const auto& r = result.report;
  std::vector<std::string> top;
  for (const auto& [key, value] : r.items()) top.push_back(key);
  EXPECT_EQ(top, (std::vector<std::string>{"config", "items", "summary"}));
  for (const char* key : {"command", "ids", "trials", "seed", "n_max", "m_max", "r_max", "order", "height"}) {
    EXPECT_TRUE(r["config"].contains(key)) << key;
  }
  for (const char* key : {"kind", "id", "status", "trials", "succeeded", "failed", "rejected", "resamples",
                          "max_indices", "first_failure", "elapsed_ms"}) {
    EXPECT_TRUE(r["items"][0].contains(key)) << key;
  }
  EXPECT_TRUE(r["items"][0]["first_failure"].is_null());
  for (const char* key : {"items", "passed", "failed", "retry_exhausted", "status", "elapsed_ms"}) {
    EXPECT_TRUE(r["summary"].contains(key)) << key;
  }
}

TEST(Runner, FailureIsReportedWithExactPoint) {
  auto c = config_for(Command::kVerify, {"cr_prop_2"});
  c.registry.cr_prop_2_as_printed = true;
  c.r_max = 3;
  c.trials = 20;
  const auto result = run(c);
  EXPECT_EQ(result.exit_code, 1);
  const auto& item = result.report["items"][0];
  EXPECT_EQ(item["status"], "FAIL");
  const auto& failure = item["first_failure"];
  ASSERT_FALSE(failure.is_null());
  EXPECT_EQ(failure["point"]["indices"]["r"].get<long>() % 2, 1);
  for (const auto& [name, value] : failure["point"]["symbols"].items()) {
    const auto text = value.get<std::string>();
    EXPECT_EQ(text.find('.'), std::string::npos) << name;
    EXPECT_EQ(QRational::parse(text).str(), text);
  }
  EXPECT_NE(failure["lhs"], failure["rhs"]);
  EXPECT_NE(render(result, ReportFormat::kText).find("FAIL"), std::string::npos);
}

TEST(Runner, ConfigurationErrors) {
  EXPECT_THROW(run(config_for(Command::kVerify, {"no_such_identity"})), ConfigError);
  EXPECT_THROW(run(config_for(Command::kCertify, {"no_such_proof"})), ConfigError);
  EXPECT_THROW(run(config_for(Command::kSeries, {"no_such_series"})), ConfigError);
  auto c = config_for(Command::kVerify, {"schlosser_cr"});
  c.r_max = 9;
  EXPECT_THROW(run(c), ConfigError);
  c.r_max.reset();
  c.trials = 0;
  EXPECT_THROW(run(c), ConfigError);
  auto cert = config_for(Command::kCertify, {"jackson"});
  cert.n_max = 9;
  EXPECT_THROW(run(cert), ConfigError);
  EXPECT_THROW(parse_command("prove"), ConfigError);
}

TEST(Runner, DeterministicModuloTimings) {
  auto c = config_for(Command::kAll);
  c.trials = 2;
  c.seed = 5;
  const auto a = without_timings(run(c).report).dump();
  const auto b = without_timings(run(c).report).dump();
  EXPECT_EQ(a, b);
  auto mutated = config_for(Command::kVerify, {"cr_prop_2"});
  mutated.registry.cr_prop_2_as_printed = true;
  mutated.r_max = 3;
  mutated.seed = 11;
  EXPECT_EQ(without_timings(run(mutated).report).dump(), without_timings(run(mutated).report).dump());
}

TEST(Runner, EnvironmentOverrides) {
  RunConfig c = config_for(Command::kSeries, {"ab00"});
  setenv("QVERIFY_SEED", "77", 1);
  setenv("QVERIFY_TRIALS", "2", 1);
  apply_environment(c);
  EXPECT_EQ(c.seed.value(), 77u);
  EXPECT_EQ(c.trials.value(), 2);
  RunConfig explicit_flags = config_for(Command::kSeries);
  explicit_flags.seed = 1;
  apply_environment(explicit_flags);
  EXPECT_EQ(explicit_flags.seed.value(), 1u);
  setenv("QVERIFY_TRIALS", "many", 1);
  RunConfig bad = config_for(Command::kSeries);
  EXPECT_THROW(apply_environment(bad), ConfigError);
  unsetenv("QVERIFY_SEED");
  unsetenv("QVERIFY_TRIALS");
}

TEST(Runner, ProgressGoesToTheSideStream) {
  auto c = config_for(Command::kVerify, {"schlosser_cr"});
  c.trials = 4;
  std::ostringstream progress;
  const auto result = run(c, &progress);
  EXPECT_NE(progress.str().find("schlosser_cr: trial"), std::string::npos);
  EXPECT_EQ(render(result, ReportFormat::kJson).find("trial 1/"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli("verify --id jackson_8phi7 --trials 20 --seed 42 --n-max 6"), 0);
  EXPECT_EQ(run_cli("certify --proof all --n-max 5 --trials 10 --seed 7"), 0);
  EXPECT_EQ(run_cli("series --id jacobi_triple --order 60 --trials 5 --seed 3"), 0);
  EXPECT_EQ(run_cli("verify --id cr_prop_2 --cr2-as-printed --r-max 3"), 1);
  EXPECT_EQ(run_cli("verify --id no_such_identity"), 2);
  EXPECT_EQ(run_cli("verify --trials abc"), 2);
  EXPECT_EQ(run_cli("frobnicate"), 2);
  EXPECT_EQ(run_cli("verify --id schlosser_cr --r-max 7"), 2);
}

TEST(Cli, JsonReportToFile) {
  const std::string path = ::testing::TempDir() + "qverify_report.json";
  ASSERT_EQ(run_cli("series --id ab11 --trials 2 --format json --out " + path), 0);
  std::ifstream in(path);
  const auto report = nlohmann::ordered_json::parse(in);
  EXPECT_EQ(report["items"][0]["id"], "ab11");
  EXPECT_EQ(report["summary"]["status"], "PASS");
}

}  // namespace
}  // namespace qhyper
