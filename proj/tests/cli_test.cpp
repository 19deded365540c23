#include "sgm/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "sgm/csv.hpp"
#include "sgm/errors.hpp"
#include "sgm/simulation.hpp"

namespace sgm {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    dir_ = fs::temp_directory_path() / (std::string("sgm_cli_") + info->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto path = (dir_ / name).string();
    std::ofstream(path) << text;
    return path;
  }

  fs::path dir_;
};

std::string drop_runtime_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) out += line.substr(0, line.rfind(',')) + "\n";
  return out;
}

TEST_F(CliTest, MatchIdenticalGraphsExtendsSeeds) {
  const std::string edges = "a b\nb a\nb c\nc b\nc d\nd c\nd e\ne d\na e\ne a\nb e\ne b\n";
  const auto g = write("g.txt", edges);
  const auto seeds = write("seeds.txt", "a a\nb b\nc c\n");
  const auto result = run({"match", "--g1", g, "--g2", g, "--seeds", seeds});
  ASSERT_EQ(result.code, 0) << result.err;
  std::istringstream in(result.out);
  const MatchCsv csv = read_match_csv(in);
  ASSERT_EQ(csv.mapping.size(), 5u);
  EXPECT_EQ(csv.disagreements, 0);
  for (const auto& pair : csv.mapping) {
    if (pair.seed) EXPECT_EQ(pair.label1, pair.label2);
  }
}

TEST_F(CliTest, MatchSizeMismatch) {
  const auto g1 = write("g1.txt", "a b\nb c\n");
  const auto g2 = write("g2.txt", "a b\nc d\n");
  const auto result = run({"match", "--g1", g1, "--g2", g2});
  EXPECT_EQ(result.code, 2);
  EXPECT_NE(result.err.find('3'), std::string::npos) << result.err;
  EXPECT_NE(result.err.find('4'), std::string::npos) << result.err;
}

TEST_F(CliTest, MatchParseErrorNamesFileAndLine) {
  const auto g1 = write("g1.txt", "a b\nb c oops\n");
  const auto result = run({"match", "--g1", g1, "--g2", g1});
  EXPECT_EQ(result.code, 2);
  EXPECT_NE(result.err.find(g1 + ":2"), std::string::npos) << result.err;
}

TEST_F(CliTest, MatchBadSeedsAndMissingFlags) {
  const auto g = write("g.txt", "a b\nb c\n");
  EXPECT_EQ(run({"match", "--g1", g, "--g2", g, "--seeds", write("s.txt", "a zz\n")}).code, 2);
  EXPECT_EQ(run({"match", "--g1", g}).code, 2);
  EXPECT_EQ(run({"match", "--g1", g, "--g2", g, "--max-iters", "0"}).code, 2);
  EXPECT_EQ(run({"match", "--g1", g, "--g2", (dir_ / "missing.txt").string()}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
}

TEST_F(CliTest, MatchPreprocessingAndOutFile) {
  // Directed weighted input: symmetrize + binarize turns both into the same simple graph.
  const auto g1 = write("g1.txt", "a b 3\nb c\nc c 2\n");
  const auto g2 = write("g2.txt", "x y\nz y 0.5\ny x\n");
  const auto out = (dir_ / "match.csv").string();
  const auto result =
      run({"match", "--g1", g1, "--g2", g2, "--symmetrize", "--binarize", "--out", out});
  ASSERT_EQ(result.code, 0) << result.err;
  EXPECT_TRUE(result.out.empty());
  std::ifstream in(out);
  const MatchCsv csv = read_match_csv(in);
  EXPECT_EQ(csv.disagreements, 0);
}

TEST_F(CliTest, SimulatePerfectMatching) {
  const auto result = run({"simulate", "--c", "50", "--p", "0.5", "--rho", "0", "--m-values",
                           "0", "--trials", "3", "--jobs", "1"});
  ASSERT_EQ(result.code, 0) << result.err;
  std::istringstream in(result.out);
  const auto records = read_trial_csv(in);
  ASSERT_EQ(records.size(), 3u);
  for (const auto& r : records) EXPECT_EQ(r.match_ratio, 1.0);
  EXPECT_NE(result.err.find("simulate:"), std::string::npos);
}

TEST_F(CliTest, SimulateRejectsBadValues) {
  EXPECT_EQ(run({"simulate", "--trials", "0"}).code, 2);
  EXPECT_EQ(run({"simulate", "--c", "20", "--m-values", "0,20"}).code, 2);
  EXPECT_EQ(run({"simulate", "--rho", "1.5"}).code, 2);
  EXPECT_EQ(run({"simulate", "--m-values", "0:10"}).code, 2);
  EXPECT_EQ(run({"simulate", "--p", "abc"}).code, 2);
  EXPECT_EQ(run({"simulate", "--jobs", "0"}).code, 2);
}

TEST_F(CliTest, SimulateIsReproducible) {
  const std::vector<std::string> args{"simulate", "--c",       "30",  "--rho",    "0.1",
                                      "--rho",    "0.3",       "--m-values", "0:10:5", "--trials",
                                      "2",        "--rng-seed", "9"};
  auto serial = args;
  serial.insert(serial.end(), {"--jobs", "1"});
  auto parallel = args;
  parallel.insert(parallel.end(), {"--jobs", "3"});
  const auto first = run(serial);
  const auto second = run(parallel);
  ASSERT_EQ(first.code, 0);
  ASSERT_EQ(second.code, 0);
  EXPECT_EQ(drop_runtime_column(first.out), drop_runtime_column(second.out));
  std::istringstream in(first.out);
  EXPECT_EQ(read_trial_csv(in).size(), 2u * 2u * 2u);
}

TEST_F(CliTest, EmittedGraphsReproduceMatchRatio) {
  const auto emit = (dir_ / "graphs").string();
  const auto sim = run({"simulate", "--c", "40", "--rho", "0.2", "--m-values", "4", "--trials",
                        "3", "--emit-graphs", emit, "--jobs", "2"});
  ASSERT_EQ(sim.code, 0) << sim.err;
  std::istringstream sim_in(sim.out);
  const auto records = read_trial_csv(sim_in);
  ASSERT_EQ(records.size(), 3u);

  for (const auto& r : records) {
    const auto stem = emit + "/rho0.2_m4_t" + std::to_string(r.trial);
    const auto matched = run({"match", "--g1", stem + "_g1.txt", "--g2", stem + "_g2.txt",
                              "--seeds", stem + "_seeds.txt"});
    ASSERT_EQ(matched.code, 0) << matched.err;
    std::istringstream match_in(matched.out);
    const MatchCsv csv = read_match_csv(match_in);
    const SeedSpec truth = load_seed_list_file(stem + "_truth.txt");
    Correspondence psi(truth.pairs.begin(), truth.pairs.end());
    int correct = 0;
    int nonseeds = 0;
    for (const auto& pair : csv.mapping) {
      if (pair.seed) continue;
      ++nonseeds;
      correct += psi.at(pair.label1) == pair.label2;
    }
    EXPECT_EQ(static_cast<double>(correct) / nonseeds, r.match_ratio);
    EXPECT_EQ(csv.disagreements, r.disagreements);
    EXPECT_EQ(csv.iterations, r.iterations);
  }
}

TEST_F(CliTest, HelpDocumentsColumns) {
  const auto result = run({"simulate", "--help"});
  EXPECT_EQ(result.code, 0);
  EXPECT_NE(result.out.find(kTrialCsvHeader), std::string::npos);
  EXPECT_NE(result.out.find("SGM_JOBS"), std::string::npos);
}

TEST(ParseIndexList, Forms) {
  EXPECT_EQ(cli::parse_index_list("0:150:10").size(), 15u);
  EXPECT_EQ(cli::parse_index_list("0:150:10").back(), 140);
  EXPECT_EQ(cli::parse_index_list("3,1,2"), (std::vector<Index>{3, 1, 2}));
  EXPECT_EQ(cli::parse_index_list("7"), (std::vector<Index>{7}));
  EXPECT_THROW(cli::parse_index_list("1:1:1"), InputError);
  EXPECT_THROW(cli::parse_index_list("0:10:0"), InputError);
  EXPECT_THROW(cli::parse_index_list("1,,2"), InputError);
  EXPECT_THROW(cli::parse_index_list("x"), InputError);
}

TEST(DefaultJobs, EnvironmentOverride) {
  ::setenv("SGM_JOBS", "3", 1);
  EXPECT_EQ(cli::default_jobs(), 3u);
  ::setenv("SGM_JOBS", "zero", 1);
  EXPECT_GE(cli::default_jobs(), 1u);
  ::unsetenv("SGM_JOBS");
}

TEST(Binary, ExitCodes) {
  const std::string exe = SGM_CLI_PATH;
  EXPECT_EQ(std::system((exe + " --help > /dev/null").c_str()), 0);
  const int status = std::system((exe + " simulate --trials 0 2> /dev/null").c_str());
  ASSERT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
}

}  // namespace
}  // namespace sgm
