#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sgm/cli.hpp"
#include "sgm/io.hpp"

using namespace sgm;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sgm_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  void generate_and_sample(int samples = 20000) {
    ASSERT_EQ(cli({"generate", "--vertices", "10", "--edge-prob", "0.3", "--fill", "0.3", "--seed",
                   "7", "--out", path("c.json"), "--params-out", path("p.json")})
                  .code,
              kExitOk);
    ASSERT_EQ(cli({"sample", "--complex", path("c.json"), "--params", path("p.json"), "--samples",
                   std::to_string(samples), "--seed", "3", "--out", path("s.csv")})
                  .code,
              kExitOk);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateWritesValidComplex) {
  const auto r = cli({"generate", "--vertices", "10", "--edge-prob", "0.3", "--fill", "0.3",
                      "--seed", "7", "--out", path("c.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.err.find("seed: 7"), std::string::npos);

  const Json j = read_json(path("c.json"));
  const auto file = complex_from_json(j);  // validates structure
  EXPECT_EQ(file.complex.n_vertices(), 10);
  ASSERT_TRUE(file.triangle_flags.has_value());
  ASSERT_TRUE(file.ground_truth.has_value());
  EXPECT_EQ(static_cast<int>(file.triangle_flags->size()), file.complex.n_triangles());
  EXPECT_EQ(file.ground_truth->d_v.size(), 10);
  EXPECT_EQ(j.at("meta").at("tool"), kToolName);
  EXPECT_EQ(j.at("meta").at("version"), kToolVersion);
  EXPECT_EQ(j.at("meta").at("config").at("seed"), 7);
}

TEST_F(CliTest, GenerateIsDeterministic) {
  for (const char* name : {"a.json", "b.json"}) {
    ASSERT_EQ(cli({"generate", "--vertices", "12", "--seed", "4", "--out", path(name)}).code,
              kExitOk);
  }
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, DefaultSeedIsReported) {
  const auto r = cli({"generate", "--vertices", "6", "--out", path("c.json")});
  ASSERT_EQ(r.code, kExitOk);
  EXPECT_NE(r.err.find("seed: "), std::string::npos);
}

TEST_F(CliTest, SampleWritesEdgeColumnsAndProvenance) {
  generate_and_sample(100);
  std::ifstream in(path("s.csv"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("e0", 0), 0u);
  EXPECT_EQ(header.find('v'), std::string::npos);
  const Json meta = read_json(path("s.csv") + ".meta.json");
  EXPECT_EQ(meta.at("meta").at("version"), kToolVersion);
  EXPECT_EQ(meta.at("meta").at("config").at("samples"), 100);
}

TEST_F(CliTest, FullSamplesIncludeLatentColumns) {
  generate_and_sample(10);
  ASSERT_EQ(cli({"sample", "--complex", path("c.json"), "--params", path("p.json"), "--samples",
                 "10", "--full", "--out", path("full.csv")})
                .code,
            kExitOk);
  std::ifstream in(path("full.csv"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("v0,", 0), 0u);
  // Edge columns of the full file are the edge-only draws for the same seed.
  EXPECT_EQ(read_edge_samples_csv(path("full.csv")).rows(), 10);
}

TEST_F(CliTest, InferTwiceIsBitIdentical) {
  generate_and_sample();
  for (const char* name : {"r1.json", "r2.json"}) {
    const auto r = cli({"infer", "--complex", path("c.json"), "--data", path("s.csv"), "--out",
                        path(name)});
    ASSERT_EQ(r.code, kExitOk) << r.err;
  }
  EXPECT_EQ(slurp(path("r1.json")), slurp(path("r2.json")));
  const Json j = read_json(path("r1.json"));
  for (const char* key : {"k_hat", "d_V_hat", "d_T_hat", "objective_trace", "converged",
                          "iterations", "active_triangles", "meta"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_TRUE(j.at("active_triangles").contains("0.05"));
}

TEST_F(CliTest, MissingDataIsUsageError) {
  generate_and_sample(100);
  const auto r = cli({"infer", "--complex", path("c.json"), "--out", path("r.json")});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("--data"), std::string::npos) << r.err;
}

TEST_F(CliTest, UnknownFlagAndSubcommandAreUsageErrors) {
  EXPECT_EQ(cli({"generate", "--vertices", "5", "--out", path("c.json"), "--bogus", "1"}).code,
            kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({}).code, kExitUsage);
}

TEST_F(CliTest, RuntimeFailuresExitTwo) {
  const auto r = cli({"infer", "--complex", path("missing.json"), "--data", path("s.csv"),
                      "--out", path("r.json")});
  EXPECT_EQ(r.code, kExitFailure);
  EXPECT_NE(r.err.find("error"), std::string::npos);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = cli({"infer", "--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("--data"), std::string::npos);
}

TEST_F(CliTest, PipelineEndToEnd) {
  generate_and_sample(50000);
  ASSERT_EQ(
      cli({"infer", "--complex", path("c.json"), "--data", path("s.csv"), "--out", path("r.json")})
          .code,
      kExitOk);
  const auto r = cli({"eval", "--result", path("r.json"), "--truth", path("c.json"), "--out",
                      path("m.json")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json m = read_json(path("m.json"));
  EXPECT_LT(m.at("nmse").get<double>(), 0.05);
  EXPECT_DOUBLE_EQ(m.at("f1").at("0.05").get<double>(), 1.0);

  // Same seeds give the same metrics file.
  const std::string first = slurp(path("m.json"));
  generate_and_sample(50000);
  ASSERT_EQ(
      cli({"infer", "--complex", path("c.json"), "--data", path("s.csv"), "--out", path("r.json")})
          .code,
      kExitOk);
  ASSERT_EQ(cli({"eval", "--result", path("r.json"), "--truth", path("c.json"), "--out",
                 path("m.json")})
                .code,
            kExitOk);
  EXPECT_EQ(slurp(path("m.json")), first);
}

TEST_F(CliTest, ExperimentAndPlotData) {
  {
    std::ofstream(path("cfg.json")) << R"({"base_seed": 3, "vertex_counts": [8],
      "fill_fractions": [0.3], "trials": 2, "samples": 2000})";
  }
  const auto r = cli({"experiment", "--config", path("cfg.json"), "--out-dir", path("out")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* f : {"trials.csv", "summary.csv", "report.json"}) {
    EXPECT_TRUE(fs::exists(dir_ / "out" / f)) << f;
  }
  ASSERT_EQ(cli({"plot-data", "--report", path("out"), "--out", path("plot.csv")}).code, kExitOk);
  EXPECT_EQ(slurp(path("plot.csv")), slurp(dir_ / "out" / "summary.csv"));
}

TEST_F(CliTest, ExperimentRequiresSeed) {
  {
    std::ofstream(path("cfg.json")) << R"({"vertex_counts": [8], "trials": 1})";
  }
  EXPECT_EQ(cli({"experiment", "--config", path("cfg.json"), "--out-dir", path("out")}).code,
            kExitFailure);
}

TEST_F(CliTest, BinaryExitCodes) {
  const std::string exe = SGM_CLI_PATH;
  const std::string quiet = " > " + path("log.txt") + " 2>&1";
  EXPECT_EQ(std::system((exe + " generate --vertices 5 --out " + path("c.json") + quiet).c_str()),
            0);
  const int usage = std::system((exe + " infer --complex " + path("c.json") + quiet).c_str());
  ASSERT_TRUE(WIFEXITED(usage));
  EXPECT_EQ(WEXITSTATUS(usage), kExitUsage);
}
