#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli/commands.hpp"
#include "cli/options.hpp"

namespace fs = std::filesystem;
using namespace fastdiff::cli;

namespace {

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("fastdiff_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "fastdiff");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    const ParseResult pr = parse_args(static_cast<int>(argv.size()), argv.data());
    if (!pr.config) return pr.exit_code;
    out_.str("");
    err_.str("");
    return run(*pr.config, out_, err_);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

}  // namespace

TEST_F(CliTest, SolveWritesProfileCsv) {
  EXPECT_EQ(invoke({"solve", "--n", "3", "--m", "0.2", "--alpha", "2.5", "--beta", "1", "--eta",
                    "1", "--r-max", "100", "--out", path("p.csv"), "--log-out", path("l.csv")}),
            kExitOk);
  const std::string csv = slurp(path("p.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "r,v,dv");
  const std::string log = slurp(path("l.csv"));
  EXPECT_EQ(log.substr(0, log.find('\n')), "s,w,ws");
  // Every field round-trips through %.17g.
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);
  int checked = 0;
  while (std::getline(lines, line) && checked < 50) {
    std::istringstream fields(line);
    for (std::string f; std::getline(fields, f, ',');) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.17g", std::strtod(f.c_str(), nullptr));
      EXPECT_EQ(f, buf);
    }
    ++checked;
  }
}

TEST_F(CliTest, DecayReportContents) {
  ASSERT_EQ(invoke({"decay", "--n", "4", "--m", "0.333333333333", "--alpha", "3", "--beta", "1",
                    "--eta", "1", "--s-end", "40", "--json", path("r.json")}),
            kExitOk);
  const auto j = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_NEAR(j["decay"]["expected"].get<double>(), 6.0, 1e-9);
  EXPECT_LT(j["decay"]["rel_error_vs_expected"].get<double>(), 0.01);
  for (const char* k : {"k", "rho1", "a0", "b0", "b1", "b2"}) EXPECT_TRUE(j["derived"].contains(k)) << k;
  EXPECT_EQ(j["config"]["command"], "decay");
  EXPECT_EQ(j["config"]["n"], 4);
  EXPECT_FALSE(j.contains("pde"));
}

TEST_F(CliTest, ExistenceViolationExitsTwoWithReport) {
  EXPECT_EQ(invoke({"solve", "--n", "3", "--m", "0.2", "--alpha", "6", "--beta", "1", "--eta", "1",
                    "--json", path("e.json")}),
            kExitHypothesis);
  const auto j = nlohmann::json::parse(slurp(path("e.json")));
  EXPECT_EQ(j["diagnostics"]["error"]["kind"], "HypothesisViolation");
  EXPECT_FALSE(err_.str().empty());
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(invoke({"solve", "--bogus"}), kExitUsage);
  EXPECT_EQ(invoke({}), kExitUsage);
  EXPECT_EQ(invoke({"--help"}), kExitOk);
  EXPECT_EQ(invoke({"solve", "--n", "2"}), kExitHypothesis);  // invalid parameters
  EXPECT_EQ(invoke({"pde-check", "--alpha", "2.0"}), kExitHypothesis);
  EXPECT_EQ(invoke({"decay", "--alpha", "2.0", "--kind", "log"}), kExitHypothesis);
  EXPECT_EQ(invoke({"solve", "--out", path("no/such/../../x.csv")}), kExitOk);
  EXPECT_EQ(invoke({"solve", "--out", "/proc/forbidden/x.csv"}), kExitIo);
}

TEST_F(CliTest, StrictVerifyFailsOnNarrowBound) {
  EXPECT_EQ(invoke({"verify"}), kExitOk);
  EXPECT_EQ(invoke({"verify", "--strict", "--json", path("v.json")}), kExitNumerical);
  const auto j = nlohmann::json::parse(slurp(path("v.json")));
  EXPECT_FALSE(j["invariants"]["overall"].get<bool>());
}

TEST_F(CliTest, ConfigFileAndOverride) {
  {
    std::ofstream cfg(path("c.ini"));
    cfg << "n = 4\nm = 0.25\nalpha = 1.5\ntol = 1e-9\n";
  }
  std::vector<std::string> args{"fastdiff", "solve", "--config", path("c.ini"), "--alpha", "1"};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  const auto pr = parse_args(static_cast<int>(argv.size()), argv.data());
  ASSERT_TRUE(pr.config);
  EXPECT_EQ(pr.config->params.n, 4);
  EXPECT_EQ(pr.config->params.m, 0.25);
  EXPECT_EQ(pr.config->params.alpha, 1.0);
  EXPECT_EQ(pr.config->tol, 1e-9);
}

TEST_F(CliTest, ListsAndRegime) {
  std::vector<std::string> args{"fastdiff", "pde-check", "--regime", "backward", "--T", "3",
                                "--radii", "0.5,1", "--times", "1,1.5"};
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  const auto pr = parse_args(static_cast<int>(argv.size()), argv.data());
  ASSERT_TRUE(pr.config);
  EXPECT_EQ(pr.config->command, Command::PdeCheck);
  EXPECT_EQ(pr.config->regime, fastdiff::Regime::Backward);
  EXPECT_EQ(pr.config->radii, (std::vector<double>{0.5, 1}));
  EXPECT_EQ(pr.config->T, 3.0);
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  for (const char* tag : {"a", "b"})
    ASSERT_EQ(invoke({"decay", "--alpha", "0.5", "--json", path(std::string(tag) + ".json"),
                      "--trace-out", path(std::string(tag) + ".csv")}),
              kExitOk);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(CliTest, SweepOrderedAndThreadIndependent) {
  const std::vector<std::string> base{"sweep", "--n-list", "3,4", "--m-list", "0.1,0.2",
                                      "--alpha-list", "-1,1", "--beta-list", "1"};
  auto a = base, b = base;
  a.insert(a.end(), {"--jobs", "1", "--out", path("s1.csv"), "--json", path("s1.json")});
  b.insert(b.end(), {"--jobs", "4", "--out", path("s4.csv"), "--json", path("s4.json")});
  ASSERT_EQ(invoke(a), kExitOk);
  ASSERT_EQ(invoke(b), kExitOk);
  EXPECT_EQ(slurp(path("s1.csv")), slurp(path("s4.csv")));
  EXPECT_EQ(slurp(path("s1.json")), slurp(path("s4.json")));
  const auto j = nlohmann::json::parse(slurp(path("s1.json")));
  const auto& rows = j["diagnostics"]["rows"];
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i]["index"], i);
  EXPECT_EQ(rows[0]["n"], 3);
  EXPECT_EQ(rows[7]["n"], 4);
}

TEST_F(CliTest, OutputDirectoryFromEnvironment) {
  ::setenv("FASTDIFF_OUTPUT_DIR", dir_.c_str(), 1);
  const int rc = invoke({"solve", "--out", "rel.csv"});
  ::unsetenv("FASTDIFF_OUTPUT_DIR");
  EXPECT_EQ(rc, kExitOk);
  EXPECT_TRUE(fs::exists(dir_ / "rel.csv"));
}

TEST_F(CliTest, LimitAndPdeSections) {
  ASSERT_EQ(invoke({"limit", "--alpha", "1", "--beta", "1", "--m-list", "0.2,0.1,0.05",
                    "--json", path("l.json")}),
            kExitOk);
  auto j = nlohmann::json::parse(slurp(path("l.json")));
  EXPECT_EQ(j["limit"]["convergence"]["sup_errors"].size(), 3u);
  ASSERT_EQ(invoke({"pde-check", "--perturb", "0.01", "--json", path("p.json")}), kExitOk);
  j = nlohmann::json::parse(slurp(path("p.json")));
  EXPECT_EQ(j["pde"]["regime"], "eternal");
  EXPECT_GT(j["pde"]["sensitivity_ratio"].get<double>(), 100.0);
}
