#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace bnclass;

namespace {

const std::string kModels = BNCLASS_MODELS_DIR;

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "bnclass");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / ("bnclass_test_" + name);
  std::ofstream(path) << text;
  return path.string();
}

}  // namespace

TEST(Cli, NormalFormExample) {
  const auto r = run({"nf", kModels + "/toy3.bnet", "--expr", "x1*x2*x3", "--order", "x3>x2>x1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "x1*x2\n");
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, SteadyStates) {
  const auto table = run({"steady-states", kModels + "/toy3.bnet"});
  EXPECT_EQ(table.code, 0);
  EXPECT_EQ(table.out, "# components: x1 x2 x3\n000\n011\n101\n111\n4 steady states\n");
  const auto json = run({"steady-states", kModels + "/toy3.bnet", "--format", "json"});
  const auto j = nlohmann::json::parse(json.out);
  EXPECT_EQ(j["count"], 4);
  EXPECT_EQ(j["states"][1]["values"], "011");
  const auto limited = run({"steady-states", kModels + "/toy3.bnet", "--limit", "3"});
  EXPECT_EQ(limited.code, 4);
  EXPECT_TRUE(limited.out.empty());
}

TEST(Cli, ClassifyToyModel) {
  const auto pheno = write_temp("toy.pheno", "High : x3\n");
  const auto r = run({"classify", kModels + "/toy3.bnet", "--phenotypes", pheno});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out,
            "Phenotype: High\n"
            "Components | Expression\n"
            "-----------+-----------\n"
            "x3         | x3\n"
            "x1, x2     | x1*x2 + x1 + x2\n"
            "2 minimal classifiers\n");
  const auto json = run({"classify", kModels + "/toy3.bnet", "--phenotypes", pheno, "--format", "json"});
  const auto j = nlohmann::json::parse(json.out);
  ASSERT_TRUE(j.is_array());
  EXPECT_EQ(j[0]["minimal_sets"][1]["components"], nlohmann::json::array({"x1", "x2"}));
  EXPECT_TRUE(j[0]["constant"].is_null());
}

TEST(Cli, ConstantAndFailingPhenotypes) {
  const auto pheno = write_temp("const.pheno", "Always : x3 + x3 + 1\n");
  const auto r = run({"classify", kModels + "/toy3.bnet", "--phenotypes", pheno, "--format", "json"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j[0]["constant"], true);
  EXPECT_TRUE(j[0]["minimal_sets"].empty());

  const auto none = write_temp("none.bnet", "a, !a\n");
  const auto p2 = write_temp("none.pheno", "P : a\n");
  const auto f = run({"classify", none, "--phenotypes", p2});
  EXPECT_EQ(f.code, 5);
  EXPECT_NE(f.err.find("unit ideal"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({"steady-states"}).code, 1);
  EXPECT_EQ(run({"steady-states", "/nonexistent/model.bnet"}).code, 1);
  EXPECT_EQ(run({"steady-states", kModels + "/toy3.bnet", "--format", "xml"}).code, 1);
  EXPECT_EQ(run({"--help"}).code, 0);

  const auto bad = write_temp("bad.bnet", "a, a\nb, a +\n");
  const auto r = run({"steady-states", bad});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 2, column"), std::string::npos) << r.err;
  EXPECT_EQ(run({"nf", kModels + "/toy3.bnet", "--expr", "x1 +", "--order", "x1"}).code, 2);
  EXPECT_EQ(run({"nf", kModels + "/toy3.bnet", "--expr", "x1", "--order", "x9"}).code, 2);

  const auto pheno = write_temp("toy.pheno", "High : x3\n");
  EXPECT_EQ(run({"classify", kModels + "/toy3.bnet", "--phenotypes", pheno, "--phenotype", "Low"}).code, 1);
  EXPECT_EQ(run({"classify", kModels + "/toy3.bnet", "--phenotypes", pheno, "--max-iterations", "1"}).code, 4);
}

TEST(Cli, Verify) {
  const auto pheno = write_temp("verify.pheno", "High : x3\nLow : !x3\n");
  const auto ok = run({"verify", kModels + "/toy3.bnet", "--phenotypes", pheno});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_EQ(ok.out, "High: 2 minimal sets, search agrees with oracle\nLow: 2 minimal sets, search agrees with oracle\n");
  const auto overlap = write_temp("overlap.pheno", "A : x1\nB : x2\n");
  EXPECT_EQ(run({"verify", kModels + "/toy3.bnet", "--phenotypes", overlap}).code, 3);
  EXPECT_EQ(run({"verify", kModels + "/toy3.bnet", "--phenotypes", pheno, "--max-n", "2"}).code, 4);
  // Overlap is only a warning for classify.
  const auto c = run({"classify", kModels + "/toy3.bnet", "--phenotypes", overlap});
  EXPECT_EQ(c.code, 0);
  EXPECT_NE(c.err.find("warning"), std::string::npos);
}

TEST(Cli, OutputIsDeterministic) {
  const auto pheno = write_temp("det.pheno", "High : x3\nMixed : x1 + x2\n");
  for (const char* fmt : {"table", "json"}) {
    const auto a = run({"classify", kModels + "/toy3.bnet", "--phenotypes", pheno, "--format", fmt, "--jobs", "2"});
    const auto b = run({"classify", kModels + "/toy3.bnet", "--phenotypes", pheno, "--format", fmt});
    EXPECT_EQ(a.out, b.out);
  }
}
