#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "polycirc/dsl.hpp"
#include "polycirc/eval.hpp"
#include "polycirc/semiring.hpp"
#include "test_util.hpp"

namespace polycirc {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("polycirc_cli_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    write("f.dsl",
          "let f = copy ; add\n"
          "let mulchain = (mul * id) ; mul\n"
          "let sq = copy ; mul\n"
          "let model = add\n");
    write("succ.csv", "x0,y0\n0,1\n1,2\n2,0\n");
    write("data.csv", "x0,y0\n0,1\n1,0\n");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void write(const std::string& name, const std::string& text) const {
    std::ofstream(dir_ / name, std::ios::binary) << text;
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  Outcome run(std::vector<std::string> args) const {
    args.insert(args.begin(), "polycirc");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
  }

  fs::path dir_;
};

TEST_F(CliTest, EvalPrintsResult) {
  const auto r = run({"eval", "--semiring", "zmod:2", "--circuit", path("f.dsl"), "--name", "f",
                      "--input", "1"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, "0\n");
}

TEST_F(CliTest, SynthTableRoundTrip) {
  auto r = run({"synth", "--semiring", "zp:3", "--table", path("succ.csv"), "--out", path("s.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(read("s.json"));
  EXPECT_EQ(j["semiring"], "zp:3");
  EXPECT_TRUE(j["circuits"].contains("f"));
  r = run({"table", "--semiring", "zp:3", "--circuit", path("s.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, read("succ.csv"));
}

TEST_F(CliTest, VerifyAxiomsReportsJson) {
  const auto r = run({"verify", "axioms", "--semiring", "zmod:3", "--circuit", path("f.dsl"),
                      "--name", "mulchain"});
  EXPECT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j.size(), 4u);
  for (const auto& [law, v] : j.items()) EXPECT_EQ(v["status"], "pass") << law;
}

TEST_F(CliTest, FailingReportExitsOne) {
  const auto r = run({"verify", "extension", "--semiring", "zmod:3", "--ext", "squared-change"});
  EXPECT_EQ(r.code, cli::kExitDomain);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["rdc.additivity_of_change"]["status"], "fail");
  EXPECT_EQ(j["rdc.additivity_of_change"]["counterexample"], nlohmann::json::array({0, 1, 1}));
}

TEST_F(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, cli::kExitUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--circuit", path("f.dsl"), "--name", "f", "--input", "1"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--semiring", "zmod:2", "--circuit", path("f.dsl"), "--input", "1"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"verify", "extension", "--semiring", "zmod:3", "--ext", "nope"}).code,
            cli::kExitUsage);
  EXPECT_EQ(run({"eval", "--format", "xml"}).code, cli::kExitUsage);
}

TEST_F(CliTest, DomainErrorsExitOneWithStructuredMessage) {
  auto r = run({"eval", "--semiring", "zp:4", "--circuit", path("f.dsl"), "--name", "f", "--input", "1"});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "NotPrime");
  r = run({"eval", "--semiring", "zmod:2", "--circuit", path("missing.dsl"), "--input", "1"});
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "IoError");
  r = run({"eval", "--semiring", "zmod:2", "--circuit", path("f.dsl"), "--name", "f", "--input", "1,1"});
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "ShapeMismatch");
}

TEST_F(CliTest, BudgetFlagAndEnvironment) {
  const std::vector<std::string> args = {"table", "--semiring", "zmod:5", "--circuit", path("f.dsl"),
                                         "--name", "mulchain"};
  ::setenv("POLYCIRC_BUDGET", "10", 1);
  auto r = run(args);
  EXPECT_EQ(r.code, cli::kExitDomain);
  EXPECT_EQ(nlohmann::json::parse(r.err)["error"], "BudgetExceeded");
  auto with_flag = args;
  with_flag.insert(with_flag.end(), {"--budget", "125"});
  EXPECT_EQ(run(with_flag).code, cli::kExitOk);
  ::unsetenv("POLYCIRC_BUDGET");
  EXPECT_EQ(run(args).code, cli::kExitOk);
}

// Chain rule at the CLI level: the emitted reverse derivative evaluates like the library one.
TEST_F(CliTest, RdiffThenEval) {
  auto r = run({"rdiff", "--semiring", "zmod:5", "--circuit", path("f.dsl"), "--name", "sq",
                "--out", path("dsq.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  r = run({"eval", "--semiring", "zmod:5", "--circuit", path("dsq.json"), "--input", "3,1"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(r.out, "1\n");  // d(x^2) = 2x = 6 = 1 mod 5
  r = run({"rdiff", "--emit", "dsl", "--circuit", path("f.dsl"), "--name", "sq"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto defs = parse_dsl(r.out);
  ASSERT_EQ(defs.size(), 1u);
  EXPECT_EQ(defs[0].name, "sq");
  EXPECT_EQ(defs[0].circuit.shape(), (Shape{2, 1}));
  r = run({"forward", "--semiring", "zmod:5", "--circuit", path("f.dsl"), "--name", "sq",
           "--out", path("fsq.json")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(run({"eval", "--semiring", "zmod:5", "--circuit", path("fsq.json"), "--input", "3,1"}).out,
            "1\n");
}

TEST_F(CliTest, NormalizeAndCheck) {
  auto r = run({"normalize", "--semiring", "zmod:3", "--circuit", path("f.dsl"), "--name", "sq"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["polys"][0]["text"], "x0^2");
  EXPECT_EQ(j["polys"][0]["terms"][0]["exponents"], nlohmann::json::array({2}));
  r = run({"normalize", "--semiring", "zmod:3", "--circuit", path("f.dsl"), "--name", "sq", "--pretty"});
  EXPECT_EQ(r.out, "y0 = x0^2\n");
  r = run({"check", "--circuit", path("f.dsl")});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_EQ(nlohmann::json::parse(r.out)["mulchain"], "3->1");
}

TEST_F(CliTest, TrainAndDemo) {
  auto r = run({"train", "--semiring", "zmod:2", "--circuit", path("f.dsl"), "--name", "model",
                "--data", path("data.csv"), "--params", "1", "--init", "0"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[0]["accuracy"], 1.0);
  EXPECT_EQ(j[0]["params"], nlohmann::json::array({1}));
  r = run({"demo", "wrap-around", "--semiring", "sat:2"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(nlohmann::json::parse(r.out)["update"], 1);
}

TEST_F(CliTest, OutputIsByteIdenticalAcrossRuns) {
  const std::vector<std::vector<std::string>> invocations = {
      {"rdiff", "--circuit", path("f.dsl"), "--name", "mulchain"},
      {"verify", "presentation", "--semiring", "sat:3"},
      {"verify", "axioms", "--semiring", "zmod:5", "--circuit", path("f.dsl"), "--name", "mulchain"},
      {"train", "--semiring", "zmod:2", "--circuit", path("f.dsl"), "--name", "model", "--data",
       path("data.csv"), "--params", "1", "--epochs", "3", "--shuffle", "--seed", "9"},
  };
  for (const auto& args : invocations) {
    const auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("eval"), std::string::npos);
}

}  // namespace
}  // namespace polycirc
