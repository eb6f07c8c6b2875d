#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "maup/pipeline.hpp"
#include "maup/tensor_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string err;
};

Outcome run(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(MAUP_CLI_PATH) + " " + args + " >/dev/null 2>" + err.string();
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(err);
  std::ostringstream s;
  s << in.rdbuf();
  o.err = s.str();
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("maup_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void phantom(const std::string& family, int seed) {
    ASSERT_EQ(run("phantom --family " + family + " --seed " + std::to_string(seed) + " --out " +
                      (dir_ / "in").string(),
                  dir_)
                  .code,
              0);
  }
  std::string inputs() const {
    const fs::path in = dir_ / "in";
    return " --support-feat " + (in / "support_feat.maup").string() + " --support-mask " +
           (in / "support_mask.maup").string() + " --query-feat " + (in / "query_feat.maup").string();
  }
  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GoldenPromptsFromPhantomFiles) {
  phantom("disk", 7);
  ASSERT_EQ(run("run" + inputs() + " --seed 7 --out " + (dir_ / "a").string(), dir_).code, 0);
  ASSERT_EQ(run("run" + inputs() + " --seed 7 --threads 3 --out " + (dir_ / "b").string(), dir_).code, 0);
  const std::string golden = read_file(fs::path(MAUP_TEST_DATA_DIR) / "golden_disk_seed7.json");
  EXPECT_EQ(read_file(dir_ / "a" / "prompts.json"), golden);
  EXPECT_EQ(read_file(dir_ / "b" / "prompts.json"), golden);
}

TEST_F(Cli, PhantomWritesAllTensors) {
  phantom("annulus", 2);
  for (const char* f : {"support_feat.maup", "support_mask.maup", "query_feat.maup", "query_gt.maup",
                        "query_image.maup"})
    EXPECT_TRUE(fs::exists(dir_ / "in" / f)) << f;
  EXPECT_NO_THROW(maup::load_bit_mask(dir_ / "in" / "query_gt.maup"));
}

TEST_F(Cli, HeatmapsAndEval) {
  phantom("ellipse", 4);
  const fs::path in = dir_ / "in";
  const auto o = run("run" + inputs() + " --query-gt " + (in / "query_gt.maup").string() +
                         " --query-image " + (in / "query_image.maup").string() +
                         " --heatmaps --out " + (dir_ / "o").string(),
                     dir_);
  ASSERT_EQ(o.code, 0) << o.err;
  for (const char* f : {"prompts.json", "mean.pgm", "uncertainty.pgm", "negative.pgm", "eval.json"})
    EXPECT_TRUE(fs::exists(dir_ / "o" / f)) << f;
  EXPECT_NE(read_file(dir_ / "o" / "eval.json").find("\"dice\""), std::string::npos);
}

TEST_F(Cli, NoNpGivesEmptyNegatives) {
  phantom("disk", 1);
  ASSERT_EQ(run("run" + inputs() + " --no-np --out " + (dir_ / "o").string(), dir_).code, 0);
  const auto e = maup::parse_prompt_json(read_file(dir_ / "o" / "prompts.json"));
  EXPECT_TRUE(e.negatives.empty());
  EXPECT_FALSE(e.positives.empty());
}

TEST_F(Cli, UsageErrorsExitOne) {
  EXPECT_EQ(run("", dir_).code, 1);
  EXPECT_EQ(run("run --out x", dir_).code, 1);
  EXPECT_EQ(run("frobnicate", dir_).code, 1);
  phantom("disk", 1);
  EXPECT_EQ(run("run" + inputs() + " --pct 100 --out " + (dir_ / "o").string(), dir_).code, 1);
  EXPECT_EQ(run("run" + inputs() + " --no-mmp --no-ump --out " + (dir_ / "o").string(), dir_).code, 1);
  EXPECT_EQ(run("phantom --family cube --seed 1 --out " + (dir_ / "p").string(), dir_).code, 1);
}

TEST_F(Cli, DataErrorsExitTwo) {
  phantom("disk", 1);
  const fs::path empty = dir_ / "empty_mask.maup";
  maup::save_tensor(maup::BitMask(48, 48), empty);
  const fs::path in = dir_ / "in";
  const auto o = run("run --support-feat " + (in / "support_feat.maup").string() + " --support-mask " +
                         empty.string() + " --query-feat " + (in / "query_feat.maup").string() +
                         " --out " + (dir_ / "o").string(),
                     dir_);
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("RPG: empty foreground"), std::string::npos) << o.err;

  std::ofstream(dir_ / "junk.maup") << "not a tensor";
  EXPECT_EQ(run("run --support-feat " + (dir_ / "junk.maup").string() + " --support-mask " +
                    (in / "support_mask.maup").string() + " --query-feat " +
                    (in / "query_feat.maup").string() + " --out " + (dir_ / "o").string(),
                dir_)
                .code,
            2);
  EXPECT_EQ(run("run --support-feat " + (dir_ / "absent.maup").string() + " --support-mask " +
                    (in / "support_mask.maup").string() + " --query-feat " +
                    (in / "query_feat.maup").string() + " --out " + (dir_ / "o").string(),
                dir_)
                .code,
            2);
}

TEST_F(Cli, AblateWritesCsv) {
  std::ofstream(dir_ / "sweep.toml") << "families = [\"disk\"]\ntoggles = [\"ump\", \"ump+mmp+np\"]\n"
                                        "nf = [1, 5, 15, 30, 60]\nseeds = 2\n";
  ASSERT_EQ(run("ablate --config " + (dir_ / "sweep.toml").string() + " --out " +
                    (dir_ / "report.csv").string(),
                dir_)
                .code,
            0);
  std::ifstream csv(dir_ / "report.csv");
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, 1 + 2 * 5 * 2);

  std::ofstream(dir_ / "bad.toml") << "bogus = 1\n";
  EXPECT_EQ(run("ablate --config " + (dir_ / "bad.toml").string() + " --out " +
                    (dir_ / "r2.csv").string(),
                dir_)
                .code,
            1);
}
