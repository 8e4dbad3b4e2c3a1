#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "ivord/csv_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

// Runs the CLI with stdout and stderr captured together.
Run ivord(const std::string& args) {
  const std::string cmd = std::string("\"") + IVORD_CLI_PATH + "\" " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ivord_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) +
            "_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string at(const std::string& name) const { return "\"" + (dir_ / name).string() + "\""; }
  fs::path path(const std::string& name) const { return dir_ / name; }

  fs::path dir_;
};

TEST_F(Cli, GenWritesThreeHundredRows) {
  ASSERT_EQ(ivord("gen --design three_class --seed 1 -o " + at("d.csv")).code, 0);
  ASSERT_EQ(ivord("gen --design three_class --seed 1 -o " + at("e.csv")).code, 0);
  const auto text = slurp(path("d.csv"));
  EXPECT_EQ(count_lines(text), 301u);
  EXPECT_EQ(text.rfind("id,label,f1_l,f1_u,f2_l,f2_u\n", 0), 0u);
  EXPECT_EQ(text, slurp(path("e.csv")));
  const auto data = ivord::read_dataset_csv(path("d.csv"));
  EXPECT_EQ(data.size(), 300u);
  EXPECT_EQ(data.num_classes, 3);
  EXPECT_NE(ivord("gen --design three_class --seed 2").out, text);
}

TEST_F(Cli, UsageErrorsExitTwo) {
  const auto bad = ivord("gen --design five_class -o " + at("d.csv"));
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.out.find("design"), std::string::npos);
  EXPECT_EQ(ivord("nonsense").code, 2);
  EXPECT_EQ(ivord("fit --method nope --data " + at("x.csv") + " -o " + at("m.json")).code, 2);
  EXPECT_EQ(ivord("gen --design three_class -o " + at("missing/dir/d.csv")).code, 2);
  EXPECT_EQ(ivord("--help").code, 0);
}

TEST_F(Cli, OneNearestNeighbourMemorizes) {
  ASSERT_EQ(ivord("gen --design four_class --seed 3 -o " + at("d.csv")).code, 0);
  ASSERT_EQ(ivord("fit --method di_wknn --k 1 --data " + at("d.csv") + " -o " + at("m.json")).code, 0);
  ASSERT_EQ(ivord("predict --model " + at("m.json") + " --data " + at("d.csv") + " -o " + at("p.csv")).code, 0);
  const auto data = ivord::read_dataset_csv(path("d.csv"));
  std::istringstream pred(slurp(path("p.csv")));
  std::string line;
  std::getline(pred, line);
  EXPECT_EQ(line, "id,predicted_label");
  for (std::size_t i = 0; i < data.size(); ++i) {
    ASSERT_TRUE(std::getline(pred, line));
    EXPECT_EQ(line, data.ids[i] + "," + std::to_string(data.labels[i]));
  }
}

TEST_F(Cli, ProbabilisticPredictionsAndReload) {
  ASSERT_EQ(ivord("gen --design three_class --seed 4 -o " + at("d.csv")).code, 0);
  ASSERT_EQ(ivord("fit --method polr_i2 --data " + at("d.csv") + " -o " + at("m.json")).code, 0);
  ASSERT_EQ(ivord("predict --model " + at("m.json") + " --data " + at("d.csv") + " -o " + at("a.csv")).code, 0);
  ASSERT_EQ(ivord("predict --model " + at("m.json") + " --data " + at("d.csv") + " -o " + at("b.csv")).code, 0);
  const auto a = slurp(path("a.csv"));
  EXPECT_EQ(a.rfind("id,predicted_label,p1,p2,p3\n", 0), 0u);
  EXPECT_EQ(a, slurp(path("b.csv")));
}

TEST_F(Cli, MismatchedFeatureCountExitsTwo) {
  ASSERT_EQ(ivord("gen --design three_class --seed 5 -o " + at("d.csv")).code, 0);
  ASSERT_EQ(ivord("fit --method lda_id --data " + at("d.csv") + " -o " + at("m.json")).code, 0);
  {
    std::ofstream out(path("one.csv"));
    out << "id,f1_l,f1_u\nq1,1,2\n";
  }
  const auto r = ivord("predict --model " + at("m.json") + " --data " + at("one.csv"));
  EXPECT_EQ(r.code, 2);
  {
    std::ofstream out(path("broken.csv"));
    out << "id,label,f1_l,f1_u\nq1,1,3,oops\n";
  }
  const auto b = ivord("predict --model " + at("m.json") + " --data " + at("broken.csv"));
  EXPECT_EQ(b.code, 2);
  EXPECT_NE(b.out.find("f1_u"), std::string::npos) << b.out;
}

TEST_F(Cli, FitFailureExitsThree) {
  {
    std::ofstream out(path("sep.csv"));
    out << "id,label,f1_l,f1_u\n";
    for (int i = 0; i < 30; ++i) out << "s" << i << ',' << (i < 15 ? 1 : 2) << ',' << i << ',' << i + 1 << '\n';
  }
  const auto r = ivord("fit --method polr --data " + at("sep.csv") + " -o " + at("m.json"));
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("separation"), std::string::npos) << r.out;
}

TEST_F(Cli, BenchTableAndReports) {
  const std::string args = "bench --design three_class --reps 2 --seed 7 --methods kiof,di_wknn "
                           "--of-sets 4 --of-trees-per-set 10 --of-best 2 --of-trees 30 -o ";
  const auto r = ivord(args + at("a"));
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(count_lines(r.out), 3u) << r.out;
  EXPECT_NE(r.out.find("kiof"), std::string::npos);
  EXPECT_NE(r.out.find("di_wknn"), std::string::npos);
  EXPECT_EQ(count_lines(slurp(path("a.csv"))), 3u);
  ASSERT_EQ(ivord(args + at("b") + " --jobs 2").code, 0);
  EXPECT_EQ(slurp(path("a.json")), slurp(path("b.json")));
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));
}

TEST_F(Cli, ConfigFileAndOverrides) {
  {
    std::ofstream out(path("run.toml"));
    out << "design = \"three_class\"\nreps = 2\nseed = 7\nmethods = \"lda_id,polr\"\n";
  }
  const auto base = ivord("bench --config " + at("run.toml") + " -o " + at("c"));
  ASSERT_EQ(base.code, 0) << base.out;
  EXPECT_EQ(count_lines(base.out), 3u);
  const auto flags = ivord("bench --design three_class --reps 2 --seed 7 --methods lda_id,polr -o " + at("f"));
  ASSERT_EQ(flags.code, 0);
  EXPECT_EQ(slurp(path("c.json")), slurp(path("f.json")));
  // flags win over the file
  const auto over = ivord("bench --config " + at("run.toml") + " --methods polr -o " + at("o"));
  ASSERT_EQ(over.code, 0) << over.out;
  EXPECT_EQ(count_lines(over.out), 2u);
}

}  // namespace
