#include <gtest/gtest.h>

#include <unistd.h>

#include "process.hpp"
#include "scuba/landscape.hpp"

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override { dir_ = proc::scratch("cli"); }
  void TearDown() override { std::filesystem::remove_all(dir_); }
  proc::Outcome run(const std::string& args) { return proc::cli(args, dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(Cli, HelpListsSubcommandsAndFormats) {
  const auto o = run("--help");
  EXPECT_EQ(o.code, 0);
  for (const char* word : {"gen", "run", "sweep", "degn", "graph", "format-version 1", "mean_fitness"})
    EXPECT_NE(o.out.find(word), std::string::npos) << word;
}

TEST_F(Cli, GenWritesAParsableLandscape) {
  const auto o = run("gen --n 12 --k 3 --q 4 --mode adjacent --seed 5 --out " + path("l.txt"));
  ASSERT_EQ(o.code, 0) << o.err;
  const auto l = scuba::deserialize(proc::slurp(path("l.txt")));
  EXPECT_EQ(l.n(), 12u);
  EXPECT_EQ(l.k(), 3u);
  EXPECT_EQ(l.q(), 4);
  EXPECT_EQ(l.mode(), scuba::Epistasis::adjacent);
}

TEST_F(Cli, RunFromFileReportsCounters) {
  ASSERT_EQ(run("gen --n 20 --k 2 --seed 3 --out " + path("l.txt")).code, 0);
  const auto o = run("run --landscape " + path("l.txt") + " --heuristic hc --seed 3 --trace " + path("t.csv"));
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("evaluations "), std::string::npos);
  EXPECT_NE(o.out.find("gate_count "), std::string::npos);
  EXPECT_EQ(proc::slurp(path("t.csv")).rfind("step,genotype,total,kind\n0,", 0), 0u);
}

TEST_F(Cli, MissingSeedIsDrawnAndPrinted) {
  const auto o = run("gen --n 4 --k 1");
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(o.err.rfind("seed: ", 0), 0u);
}

TEST_F(Cli, UsageErrorsExitWithOne) {
  for (const char* args : {"", "bogus", "gen --k 8 --n 8 --seed 1", "gen --q 1 --seed 1", "sweep --k x --seed 1",
                           "run --heuristic sa --seed 1", "graph --n 13 --seed 1", "run --improve1 walk --seed 1",
                           "gen --mode ring --seed 1"}) {
    const auto o = run(args);
    EXPECT_EQ(o.code, 1) << args;
    EXPECT_FALSE(o.err.empty()) << args;
  }
  const auto o = run("gen --k 9 --n 8 --seed 1");
  EXPECT_NE(o.err.find("--k"), std::string::npos);
}

TEST_F(Cli, RuntimeErrorsExitWithTwo) {
  EXPECT_EQ(run("run --landscape " + path("missing.txt") + " --seed 1").code, 2);
  std::ofstream(path("bad.txt")) << "nkq-landscape\nformat-version 1\nn 2\nk 0\nq 2\nmode random\nseed 1\n0 0 2\n1 0 0\n";
  const auto o = run("run --landscape " + path("bad.txt") + " --seed 1");
  EXPECT_EQ(o.code, 2);
  EXPECT_NE(o.err.find("line 8"), std::string::npos) << o.err;
  EXPECT_EQ(run("sweep --n 8 --k 0 --q 2 --runs 2 --instances 1 --seed 1 --out /nonexistent-dir/x.csv").code, 2);
}

TEST_F(Cli, GraphWritesDotAndCensus) {
  const auto o = run("graph --seed 2 --heuristic nc --out " + path("g.dot") + " --census " + path("c.csv"));
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_EQ(proc::slurp(path("g.dot")).rfind("digraph landscape {", 0), 0u);
  EXPECT_EQ(proc::slurp(path("c.csv")).rfind("n,k,q,seed,nodes,local_maxima", 0), 0u);
}
