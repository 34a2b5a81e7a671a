#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "fosc/io.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fosc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = fosc::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("fosc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

// Splits the CSV body (after the header comment and the column line) into rows.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  int skipped = 0;
  while (std::getline(in, line)) {
    if (skipped < 2) {
      ++skipped;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

TEST_F(CliTest, SuccessWritesDataAndSidecar) {
  const auto o = run_cli({"tomogram", "--state", "vacuum", "-o", path("t.csv")});
  ASSERT_EQ(o.code, fosc::cli::kSuccess) << o.err;
  const json meta = json::parse(slurp(path("t.csv.meta.json")));
  EXPECT_TRUE(meta["passed"].get<bool>());
  EXPECT_LT(meta["metrics"]["norm_residual"].get<double>(), 1e-6);
  EXPECT_EQ(slurp(path("t.csv")).rfind("# {", 0), 0u);
}

TEST_F(CliTest, ValidationErrorWritesNothing) {
  const auto o = run_cli({"tomogram", "--state", "vacuum", "--mu", "0", "--nu", "0", "-o", path("t.csv")});
  EXPECT_EQ(o.code, fosc::cli::kValidationError);
  EXPECT_FALSE(fs::exists(path("t.csv")));
  EXPECT_FALSE(fs::exists(path("t.csv.meta.json")));
  EXPECT_EQ(run_cli({"thermo", "--lambda", "0.1", "--g", "0.01"}).code, fosc::cli::kValidationError);
  EXPECT_EQ(run_cli({"wigner", "--kind", "kerr"}).code, fosc::cli::kValidationError);
  EXPECT_EQ(run_cli({"no-such-command"}).code, fosc::cli::kValidationError);
}

TEST_F(CliTest, FailedSelfCheckExitsThree) {
  const auto o = run_cli({"wigner", "--kind", "kerr", "--chi", "0.1", "--state", "coherent", "--alpha-re", "1",
                          "--variant", "usual-parity", "--padding", "0", "--q-steps", "5", "--p-steps", "5", "-o",
                          path("w.csv")});
  EXPECT_EQ(o.code, fosc::cli::kToleranceFailure);
  const json meta = json::parse(slurp(path("w.csv.meta.json")));
  EXPECT_FALSE(meta["passed"].get<bool>());
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> args = {"wigner", "--kind", "kerr", "--chi", "0.1", "--state", "coherent",
                                         "--alpha-re", "0.5", "--variant", "usual-parity", "--q-min", "-2",
                                         "--q-max", "2", "--p-min", "-2", "--p-max", "2", "--q-steps", "21",
                                         "--p-steps", "21"};
  auto first = args, second = args;
  first.insert(first.end(), {"-o", path("a.csv")});
  second.insert(second.end(), {"-o", path("b.csv")});
  ASSERT_EQ(run_cli(first).code, 0);
  ASSERT_EQ(run_cli(second).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
  EXPECT_EQ(slurp(path("a.csv.meta.json")), slurp(path("b.csv.meta.json")));
}

TEST_F(CliTest, ThermoWithoutDeformationMatchesUndeformed) {
  const auto o = run_cli({"thermo", "--g", "0", "-o", path("th.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(slurp(path("th.csv")));
  ASSERT_EQ(rows.size(), 16u);
  for (const auto& row : rows) {
    ASSERT_EQ(row.size(), 7u);
    EXPECT_EQ(row[1], row[2]);
    EXPECT_EQ(row[6], "0");
  }
}

TEST_F(CliTest, DensityDocumentRoundTrips) {
  ASSERT_EQ(run_cli({"quantum", "evolve", "--kind", "kerr", "--chi", "0.1", "--state", "coherent", "--alpha-re",
                     "1", "--dim", "30", "--hamiltonian", "kerr", "--kerr-chi", "0.1", "--t", "0.7", "--format",
                     "json", "-o", path("rho.json")})
                .code,
            0);
  const auto rho = fosc::density_from_json(json::parse(slurp(path("rho.json"))));
  EXPECT_EQ(rho.dim(), 30);
  ASSERT_EQ(run_cli({"quantum", "evolve", "--state", "file", "--state-file", path("rho.json"), "--t", "0",
                     "--format", "json", "-o", path("again.json")})
                .code,
            0);
  EXPECT_EQ(slurp(path("rho.json")), slurp(path("again.json")));
}

TEST_F(CliTest, TwoModeDocumentParses) {
  ASSERT_EQ(run_cli({"two-mode", "--kind", "kerr", "--chi", "0.1", "--format", "json", "-o", path("tm.json")}).code,
            0);
  const json doc = json::parse(slurp(path("tm.json")));
  const auto sv = doc["singular_values"].get<std::vector<double>>();
  ASSERT_GE(sv.size(), 2u);
  EXPECT_NEAR(sv[1], 0.03335534929, 1e-9);
  EXPECT_FALSE(doc["separable"].get<bool>());
  EXPECT_EQ(json::parse(doc.dump()), doc);
}

TEST_F(CliTest, ConfigOverridesFlags) {
  {
    std::ofstream cfg(path("cfg.json"));
    cfg << R"({"command": "thermo", "nonlinearity": {"kind": "identity"}, "beta-steps": 3, "g": 0.001})";
  }
  const auto o = run_cli({"thermo", "--beta-steps", "9", "--config", path("cfg.json"), "-o", path("th.csv")});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(csv_rows(slurp(path("th.csv"))).size(), 3u);
  const json meta = json::parse(slurp(path("th.csv.meta.json")));
  EXPECT_EQ(meta["parameters"]["beta-steps"], 3);
}

TEST_F(CliTest, UnknownConfigFieldIsRejected) {
  {
    std::ofstream cfg(path("cfg.json"));
    cfg << R"({"command": "thermo", "betamax": 3})";
  }
  EXPECT_EQ(run_cli({"thermo", "--config", path("cfg.json"), "-o", path("th.csv")}).code,
            fosc::cli::kValidationError);
  EXPECT_FALSE(fs::exists(path("th.csv")));
  {
    std::ofstream cfg(path("wrong.json"));
    cfg << R"({"command": "wigner"})";
  }
  EXPECT_EQ(run_cli({"thermo", "--config", path("wrong.json")}).code, fosc::cli::kValidationError);
}

TEST_F(CliTest, StdoutWhenNoOutputGiven) {
  const auto o = run_cli({"coherent", "--kind", "kerr", "--chi", "0.1", "--alpha-re", "1"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(o.out.rfind("# {", 0), 0u);
  EXPECT_NE(o.err.find("\"eigen_residual\""), std::string::npos);
}

}  // namespace
