#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "rankmix/config.hpp"
#include "rankmix/generators.hpp"
#include "rankmix/matrix_io.hpp"
#include "rankmix/mixture_io.hpp"
#include "rankmix/rankings.hpp"

namespace rankmix {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "rankmix");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / "rankmix_cli_test" /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    std::vector<ComponentSpec> comps{ComponentSpec::gaussian(gaussian_utilities(8, 1), 0.2),
                                     ComponentSpec::gaussian(gaussian_utilities(8, 2), 0.2)};
    write_mixture_file(path("mix.txt"), MixtureSpec::uniform(std::move(comps)));
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

TEST_F(Cli, GenerateDenoiseClusterEvaluate) {
  auto r = run_cli({"generate", "--spec", path("mix.txt"), "--num", "120", "--p", "0.9", "--seed", "3", "--out",
                    path("obs.txt"), "--rankings", path("r.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_observation_matrix_file(path("obs.txt")).rows(), 120);
  EXPECT_EQ(read_labels_file(path("obs.txt.labels")).size(), 120u);
  EXPECT_EQ(read_rankings_file(path("r.txt")).size(), 120u);

  r = run_cli({"denoise", "--in", path("obs.txt"), "--out", path("m.txt"), "--rank", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto meta = KeyValueFile::load(path("m.txt.meta"));
  EXPECT_EQ(meta.get_uint("kept_rank"), 2u);
  EXPECT_TRUE(meta.contains("p_hat"));
  EXPECT_TRUE(meta.contains("threshold_used"));

  r = run_cli({"cluster", "--in", path("m.txt"), "--out", path("pred.txt"), "--auto"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(KeyValueFile::load(path("pred.txt.meta")).get_uint("k_hat"), 2u);

  r = run_cli({"evaluate", "--pred", path("pred.txt"), "--truth", path("obs.txt.labels")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("risk=0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("matching="), std::string::npos);
}

TEST_F(Cli, EmbedRoundTripsRankings) {
  const std::vector<Permutation> perms{Permutation::identity(4), Permutation::reversed(4)};
  write_rankings_file(path("r.txt"), perms);
  const auto r = run_cli({"embed", "--in", path("r.txt"), "--out", path("e.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto obs = read_observation_matrix_file(path("e.txt"));
  ASSERT_EQ(obs.rows(), 2);
  ASSERT_EQ(obs.cols(), 6);
  for (Eigen::Index j = 0; j < 6; ++j) {
    EXPECT_EQ(obs.values()(0, j), 0.5);
    EXPECT_EQ(obs.values()(1, j), -0.5);
  }
}

TEST_F(Cli, PipelineAndTau) {
  auto r = run_cli({"pipeline", "--spec", path("mix.txt"), "--num", "200", "--p", "1", "--seed", "2", "--rank", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("risk=0\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("k_hat=2\n"), std::string::npos) << r.out;

  r = run_cli({"tau-estimate", "--spec", path("mix.txt"), "--samples", "200", "--directions", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("tau_hat=", 0), 0u) << r.out;
  r = run_cli({"tau-estimate", "--spec", path("mix.txt"), "--component", "5"});
  EXPECT_EQ(r.code, 1);
}

TEST_F(Cli, ExperimentWritesCsv) {
  std::ofstream(path("exp3.cfg")) << "n=5,10\nnoise=1\nsamples=100\ndirections=2\ntrials=1\n";
  const auto r = run_cli({"experiment", "exp3", "--config", path("exp3.cfg"), "--out", path("out")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(path("out/exp3_tau.csv")));
  EXPECT_TRUE(fs::exists(path("out/exp3_slopes.csv")));
}

TEST_F(Cli, ErrorsAreReported) {
  auto r = run_cli({"denoise", "--in", path("mix.txt"), "--out", path("m.txt"), "--auto"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.err.rfind("rankmix: ", 0), 0u) << r.err;
  r = run_cli({"frobnicate"});
  EXPECT_NE(r.code, 0);
  r = run_cli({"generate", "--spec", path("missing.txt"), "--num", "3", "--out", path("x")});
  EXPECT_NE(r.code, 0);
}

}  // namespace
}  // namespace rankmix
