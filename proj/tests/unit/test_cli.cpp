#include "cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = plexdist::cli::run_command(args, out, err);
  return {status, out.str(), err.str()};
}

fs::path tmp(const std::string& name) {
  const fs::path dir = fs::path(PLEXDIST_TEST_TMP) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

} // namespace

TEST(Cli, GenBox3d) {
  const auto dir = tmp("gen");
  const auto file = (dir / "box.plex").string();
  auto r = run({"gen", "--shape", "box", "--dim", "3", "--n", "4", "--out", file});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(slurp(file).find("strata 384 125 864 604\n"), std::string::npos);
  r = run({"check", "--boundary", file});
  EXPECT_EQ(r.status, 0) << r.out;
  EXPECT_EQ(r.out, "ok\n");
}

TEST(Cli, DistributeDoubletAndCheck) {
  const auto dir = tmp("dist");
  const auto mesh = (dir / "doublet.plex").string();
  ASSERT_EQ(run({"gen", "--shape", "doublet", "--out", mesh}).status, 0);
  const auto out_dir = (dir / "out").string();
  auto r = run({"distribute", "--ranks", "2", "--overlap", "1", "--adjacency", "fe", "--out-dir",
                out_dir, mesh});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "rank0.plex"));
  EXPECT_TRUE(fs::exists(dir / "out" / "rank1.plex"));
  EXPECT_TRUE(fs::exists(dir / "out" / "sf.txt"));
  EXPECT_NE(r.out.find("rank 0 points 11 cells 2 ghosts 7"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("model partition+migration: predicted"), std::string::npos);
  r = run({"check", out_dir});
  EXPECT_EQ(r.status, 0) << r.out;

  const auto again = (dir / "again").string();
  r = run({"redistribute", "--method", "greedy-bfs", "--out-dir", again, out_dir});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(run({"check", again}).status, 0);
}

TEST(Cli, PartitionReport) {
  const auto dir = tmp("part");
  const auto mesh = (dir / "box.plex").string();
  ASSERT_EQ(run({"gen", "--n", "4", "--out", mesh}).status, 0);
  const auto r = run({"partition", "--parts", "4", "--method", "greedy-bfs", mesh});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("part 3 cells 8\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("edge-cut "), std::string::npos);
}

TEST(Cli, RefineCountsCells) {
  const auto dir = tmp("refine");
  const auto mesh = (dir / "d.plex").string();
  ASSERT_EQ(run({"gen", "--shape", "doublet", "--out", mesh}).status, 0);
  const auto fine = (dir / "f.plex").string();
  const auto r = run({"refine", "--levels", "2", mesh, "--out", fine});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find(": 32 cells"), std::string::npos) << r.out;
  EXPECT_EQ(run({"check", "--boundary", fine}).status, 0);
}

TEST(Cli, VolumeModel) {
  const auto r = run({"volume-model", "--nc", "12582912", "--nf", "25264128", "--ne",
                      "14827904", "--nv", "2146689"});
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("Vpartition=1096432660\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("Vmigration=3069225024\n"), std::string::npos) << r.out;
}

TEST(Cli, BadArguments) {
  EXPECT_NE(run({}).status, 0);
  EXPECT_NE(run({"gen", "--bogus", "--out", "x"}).status, 0);
  EXPECT_NE(run({"gen", "--dim", "4", "--out", "x"}).status, 0);
  EXPECT_NE(run({"distribute", "--out-dir", "x", "/nonexistent.plex"}).status, 0);
  const auto r = run({"distribute", "--out-dir", "x", "/nonexistent.plex"});
  EXPECT_NE(r.err.find("error (invalid-argument)"), std::string::npos) << r.err;
}

TEST(Cli, CheckRejectsCorruptFile) {
  const auto dir = tmp("corrupt");
  const auto mesh = dir / "d.plex";
  ASSERT_EQ(run({"gen", "--shape", "doublet", "--out", mesh.string()}).status, 0);
  auto text = slurp(mesh);
  text.replace(text.find("value 1 8 2"), 11, "value 1 8 0");
  std::ofstream(mesh) << text;
  const auto r = run({"check", "--boundary", mesh.string()});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.out.find("violation: "), std::string::npos);

  std::ofstream(mesh) << "plexfile 1\ndim 2\nstrata 1 0 0 0\nconesizes 3\ncones 1\n";
  EXPECT_EQ(run({"check", mesh.string()}).status, 2);
}
