#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "mecsim/errors.hpp"
#include "mecsim/generator.hpp"
#include "mecsim/scenario_io.hpp"
#include "mecsim_cli/commands.hpp"
#include "support/builders.hpp"
#include "support/fixtures.hpp"

namespace mecsim::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("mecsim_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write(const std::string& name, const std::string& text) {
    std::ofstream(dir_ / name) << text;
    return dir_ / name;
  }

  int run(const Invocation& inv) { return cmd_run(inv, out_, err_); }
  int compare(const Invocation& inv) { return cmd_compare(inv, out_, err_); }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

Scenario static_scenario(std::size_t slots) {
  testing::SlotBuilder b;
  b.bs_capacity = {5, 6, 4};
  b.cloud_capacity = {3, 3, 3};
  b.service_size = {2, 1.5};
  b.demand = {1, 2};
  b.latency = {{0, 2, 1.5}, {2, 0, 0.5}, {1.5, 0.5, 0}};
  b.coverage = {{0, 1}, {1, 2}};
  b.slots = slots;
  return b.build();
}

TEST_F(Cli, GenerateWritesScenarioDeterministically) {
  const fs::path cfg = testing::data_path("line_config.json");
  Invocation inv;
  inv.config = cfg;
  inv.out = dir_ / "a.json";
  EXPECT_EQ(cmd_generate(inv, out_, err_), kExitOk) << err_.str();
  inv.out = dir_ / "b.json";
  EXPECT_EQ(cmd_generate(inv, out_, err_), kExitOk);
  EXPECT_EQ(slurp(dir_ / "a.json"), slurp(dir_ / "b.json"));
  EXPECT_NE(out_.str().find("M=3 N=2 tau=12 seed=11"), std::string::npos) << out_.str();
}

TEST_F(Cli, GenerateMissingSeedIsConfigError) {
  Invocation inv;
  inv.config = write("c.json", R"({"generator": {"num_users": 2}})");
  inv.out = dir_ / "s.json";
  EXPECT_EQ(cmd_generate(inv, out_, err_), kExitConfig);
  EXPECT_NE(err_.str().find("generator.seed"), std::string::npos) << err_.str();
  EXPECT_FALSE(fs::exists(dir_ / "s.json"));
}

TEST_F(Cli, ConfigFieldDiagnostics) {
  Invocation inv;
  inv.config = write("c.json", R"({"solver": {"max_iterations": "many"}})");
  inv.scenario = testing::data_path("walkthrough.json");
  EXPECT_EQ(run(inv), kExitConfig);
  EXPECT_NE(err_.str().find("solver.max_iterations"), std::string::npos) << err_.str();

  inv.config = write("d.json", R"({"controler": {}})");
  EXPECT_EQ(run(inv), kExitConfig);
  EXPECT_NE(err_.str().find("controler"), std::string::npos);
}

TEST_F(Cli, CsvHeaderIsFrozen) {
  Invocation inv;
  inv.scenario = testing::data_path("walkthrough.json");
  inv.out = dir_;
  ASSERT_EQ(run(inv), kExitOk) << err_.str();
  const std::string csv = slurp(dir_ / "threshold-beta1.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "slot,policy,beta,migrated,forced,switching,queuing,communication,non_switching,total,"
            "cum_total");
}

TEST_F(Cli, WalkthroughSlotZeroRow) {
  Invocation inv;
  inv.scenario = testing::data_path("walkthrough.json");
  inv.out = dir_;
  inv.policy = "threshold";
  inv.beta = 2.0;
  ASSERT_EQ(run(inv), kExitOk) << err_.str();
  const auto rows = csv_rows(slurp(dir_ / "threshold-beta2.csv"));
  ASSERT_EQ(rows.size(), 3u);
  // queuing 1/(2-1) through BS 0, communication l(0,2) = 1, no switching.
  EXPECT_EQ(rows[1], (std::vector<std::string>{"0", "threshold", "2", "0", "0", "0", "1", "1", "2",
                                               "2", "2"}));
}

TEST_F(Cli, NeverOnStaticScenario) {
  save(static_scenario(4), dir_ / "static.json");
  Invocation inv;
  inv.scenario = dir_ / "static.json";
  inv.policy = "never";
  inv.out = dir_;
  ASSERT_EQ(run(inv), kExitOk) << err_.str();
  const auto rows = csv_rows(slurp(dir_ / "never.csv"));
  ASSERT_EQ(rows.size(), 5u);
  EXPECT_EQ(rows[1][2], "");
  const double slot0 = std::stod(rows[1][9]);
  EXPECT_EQ(std::stod(rows[4][10]), 4 * slot0);
}

TEST_F(Cli, RunIsByteDeterministic) {
  GeneratorConfig g;
  g.seed = 5;
  save(generate(g), dir_ / "s.json");
  Invocation inv;
  inv.scenario = dir_ / "s.json";
  inv.seed = 8;
  inv.out = dir_ / "a";
  ASSERT_EQ(run(inv), kExitOk);
  inv.out = dir_ / "b";
  ASSERT_EQ(run(inv), kExitOk);
  for (const char* f : {"threshold-beta1.csv", "threshold-beta1.summary.json"}) {
    EXPECT_EQ(slurp(dir_ / "a" / f), slurp(dir_ / "b" / f)) << f;
  }
}

TEST_F(Cli, SummaryContents) {
  Invocation inv;
  inv.scenario = testing::data_path("walkthrough.json");
  inv.out = dir_;
  inv.policy = "threshold";
  inv.beta = kInfinity;
  inv.seed = 3;
  inv.max_iters = 50;
  ASSERT_EQ(run(inv), kExitOk);
  const auto doc = nlohmann::json::parse(slurp(dir_ / "threshold-betainf.summary.json"));
  EXPECT_EQ(doc.at("scenario").at("digest"), scenario_digest(load(*inv.scenario)));
  EXPECT_EQ(doc.at("config").at("beta"), "inf");
  EXPECT_EQ(doc.at("config").at("seed"), 3);
  EXPECT_EQ(doc.at("config").at("solver").at("max_iterations"), 50);
  EXPECT_EQ(doc.at("totals").at("total"), 4.0);
  EXPECT_EQ(doc.at("migrations"), 0);
  EXPECT_EQ(doc.at("run_id").get<std::string>().size(), 16u);
  EXPECT_GE(doc.at("solver").at("solves"), 1);
}

TEST_F(Cli, ExitCodes) {
  Invocation inv;
  inv.out = dir_;
  inv.scenario = dir_ / "missing.json";
  EXPECT_EQ(run(inv), kExitConfig);

  auto doc = testing::load_json("walkthrough.json");
  doc["cloud_capacity"] = {0.5, 0.5, 0.5};
  inv.scenario = write("infeasible.json", doc.dump());
  EXPECT_EQ(run(inv), kExitInfeasible);

  doc = testing::load_json("walkthrough.json");
  doc["coverage"][1][0] = nlohmann::json::array();
  inv.scenario = write("uncovered.json", doc.dump());
  EXPECT_EQ(run(inv), kExitInfeasible);

  GeneratorConfig g;
  g.num_users = 6;
  g.seed = 1;
  save(generate(g), dir_ / "big.json");
  inv.scenario = dir_ / "big.json";
  inv.policy = "oracle";
  EXPECT_EQ(run(inv), kExitOracleTooLarge);

  inv.policy = "sometimes";
  inv.scenario = testing::data_path("walkthrough.json");
  EXPECT_EQ(run(inv), kExitConfig);
}

TEST_F(Cli, CompareTable) {
  save(static_scenario(3), dir_ / "s.json");
  Invocation inv;
  inv.scenario = dir_ / "s.json";
  inv.betas = std::vector<double>{0, 1, kInfinity};
  inv.out = dir_;
  ASSERT_EQ(compare(inv), kExitOk) << err_.str();
  const auto rows = csv_rows(slurp(dir_ / "comparison.csv"));
  ASSERT_EQ(rows.size(), 7u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"policy", "beta", "total", "migrations", "forced"}));
  for (std::size_t r = 2; r <= 3; ++r) EXPECT_LE(std::stoul(rows[r][3]), std::stoul(rows[r - 1][3]));
  EXPECT_EQ(rows[6][0], "oracle");
  double min_total = kInfinity;
  for (std::size_t r = 1; r < rows.size(); ++r) min_total = std::min(min_total, std::stod(rows[r][2]));
  EXPECT_EQ(std::stod(rows[6][2]), min_total);
  EXPECT_TRUE(fs::exists(dir_ / "threshold-betainf.csv"));
  EXPECT_TRUE(fs::exists(dir_ / "oracle.summary.json"));
}

TEST_F(Cli, CompareEmptyBetaListRunsBaselines) {
  Invocation inv;
  inv.scenario = testing::data_path("walkthrough.json");
  inv.betas = std::vector<double>{};
  inv.out = dir_;
  ASSERT_EQ(compare(inv), kExitOk);
  const auto rows = csv_rows(slurp(dir_ / "comparison.csv"));
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[1][0], "always");
  EXPECT_EQ(rows[2][0], "never");
  EXPECT_EQ(rows[3][0], "oracle");
}

TEST_F(Cli, RunGeneratesScenarioFromConfig) {
  Invocation inv;
  inv.config = testing::data_path("line_config.json");
  inv.out = dir_;
  ASSERT_EQ(run(inv), kExitOk) << err_.str();
  EXPECT_EQ(slurp(dir_ / "scenario.json"), slurp(testing::data_path("generated_line.json")));
}

TEST(BetaText, ParseAndFormat) {
  EXPECT_EQ(parse_beta("inf"), kInfinity);
  EXPECT_EQ(parse_beta("0.5"), 0.5);
  EXPECT_THROW(parse_beta("-1"), ConfigError);
  EXPECT_THROW(parse_beta("2x"), ConfigError);
  EXPECT_EQ(parse_beta_list("0,0.5,inf"), (std::vector<double>{0, 0.5, kInfinity}));
  EXPECT_TRUE(parse_beta_list("").empty());
  EXPECT_EQ(format_beta(kInfinity), "inf");
  EXPECT_EQ(format_beta(0.5), "0.5");
  EXPECT_EQ(format_beta(2.0), "2");
}

}  // namespace
}  // namespace mecsim::cli
