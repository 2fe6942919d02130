#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = dla::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("dla_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

  std::filesystem::path dir_;
};

constexpr const char* kXZ = R"({"qubits": 1, "generators": [
  {"pauli_sum": [{"string": "X", "coeff": "1"}]},
  {"pauli_sum": [{"string": "Z", "coeff": "1"}]}]})";

TEST_F(CliTest, AnalyzePauliPair) {
  const auto r = run({"analyze", "--spec", write("xz.json", kXZ)});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["dim_g"], 3);
  EXPECT_EQ(j["dim_gg"], 3);
  EXPECT_EQ(j["dim_center"], 0);
}

TEST_F(CliTest, AnalyzeMaxCutGraph) {
  const auto r = run({"analyze", "--graph", "cycle4", "--family", "maxcut", "--cyclic"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["dim_g"], 11);
  EXPECT_EQ(j["cyclicity"]["common_cycle_length"], 2);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"analyze", "--spec", write("empty.json", R"({"qubits": 1, "generators": []})")}).code,
            dla::cli::kExitMalformed);
  EXPECT_EQ(run({"analyze", "--spec", write("bad.json", "{not json")}).code, dla::cli::kExitMalformed);
  EXPECT_EQ(run({"analyze", "--spec", (dir_ / "missing.json").string()}).code, dla::cli::kExitMalformed);
  EXPECT_EQ(run({"frobnicate"}).code, dla::cli::kExitMalformed);
  EXPECT_EQ(run({"extend", "--base", "pauli-xz", "--mode", "tensor-q", "--chi-spectrum", "1,-1"}).code,
            dla::cli::kExitRejected);
  EXPECT_EQ(run({"analyze", "--graph", "cycle4", "--max-dim", "5"}).code, dla::cli::kExitCapped);
}

TEST_F(CliTest, ExtendModes) {
  auto r = run({"extend", "--base", "pauli-xz", "--mode", "subset", "--subset", "all", "--chi-spectrum", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["generators"].size(), 4u);
  r = run({"extend", "--base", "pauli-xz", "--mode", "naive", "--q", "1", "--chi-spectrum", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["generators"].size(), 2u);
  EXPECT_EQ(j["qubits"], 2);
  // The emitted spec feeds back into analyze.
  const auto path = write("ext.json", r.out);
  r = run({"analyze", "--spec", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["dim_g"], 3);
}

TEST_F(CliTest, VerifyCommands) {
  auto r = run({"verify", "--theorem", "thm1", "--base", "pauli-xz", "--k", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)[0]["status"], "pass");
  r = run({"verify", "--theorem", "thm4", "--sweep", "50", "--seed", "7", "--no-timings"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto list = json::parse(r.out);
  EXPECT_EQ(list.size(), 50u);
  for (const auto& v : list) EXPECT_EQ(v["status"], "pass");
  r = run({"verify", "--theorem", "thm5", "--graph", "cycle4", "--chi-spectrum", "1,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(json::parse(r.out)[0]["residuals"]["center_form"].get<double>(), 1e-8);
}

TEST_F(CliTest, DeterministicWithoutTimings) {
  const std::vector<std::string> args{"verify", "--theorem", "thm3", "--sweep", "3", "--seed", "5", "--no-timings"};
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.find("timings"), std::string::npos);
}

TEST_F(CliTest, GraphAndSpectrum) {
  auto r = run({"graph", "--graph", "K3", "--family", "sn_equivariant"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["generators"].size(), 3u);
  r = run({"spectrum", "--chi-spectrum", "1,2,3", "--stride", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["distinct_eigenvalues"], 3);
  EXPECT_EQ(j["sign_unambiguous"], true);
}

TEST_F(CliTest, OutFlagWritesFile) {
  const auto path = (dir_ / "report.json").string();
  const auto r = run({"analyze", "--base", "pauli-x1-z12", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j["dim_center"], 1);
}

}  // namespace
