#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "bourgen/io.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("bourgen_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

struct Outcome {
  int status;
  std::string out, err;
};

Outcome run(const std::string& args, const fs::path& dir) {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = std::string(BOURGEN_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  Outcome o{WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, {}, {}};
  if (fs::exists(out)) o.out = bourgen::read_text(out);
  if (fs::exists(err)) o.err = bourgen::read_text(err);
  return o;
}

void write_family(const fs::path& path, const std::string& m) {
  bourgen::write_text(path, R"J({"name": "fam", "space": {"kind": "euclidean_helicoidal", "a": 1},
  "generatrix": "sqrt(s^2+2)", "s_range": [0, 0.7], "m": )J" + m +
                                R"J(, "step": 0.01, "grid": {"s_count": 7, "t_count": 5},
  "mesh": {"s_count": 5, "t_count": 5}, "random_checks": 10})J");
}

}  // namespace

TEST(Cli, DemoPasses) {
  const auto dir = scratch("demo");
  const auto o = run("demo helicoid --strict --out " + (dir / "out").string(), dir);
  EXPECT_EQ(o.status, 0) << o.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "helicoid_report.json"));
  EXPECT_NE(o.out.find("pass"), std::string::npos);
}

TEST(Cli, StrictVerificationFailureIsTwo) {
  const auto dir = scratch("strict");
  EXPECT_EQ(run("demo catenoid --tol 1e-14 --strict --out " + (dir / "out").string(), dir).status, 2);
  EXPECT_EQ(run("demo catenoid --tol 1e-14 --out " + (dir / "out").string(), dir).status, 0);
}

TEST(Cli, FamilyAndStepOverride) {
  const auto dir = scratch("family");
  write_family(dir / "fam.json", "[1, 1.5]");
  const auto ok = run("family --strict --config " + (dir / "fam.json").string() + " --out " + (dir / "out").string(), dir);
  EXPECT_EQ(ok.status, 0) << ok.err;
  EXPECT_TRUE(fs::exists(dir / "out" / "fam_m1.5_member.json"));
  const auto big = run("family --config " + (dir / "fam.json").string() + " --step 0.5", dir);
  EXPECT_EQ(big.status, 1);
}

TEST(Cli, ErrorsAreStatusOne) {
  const auto dir = scratch("errors");
  write_family(dir / "zero.json", "0");
  const auto zero = run("family --config " + (dir / "zero.json").string(), dir);
  EXPECT_EQ(zero.status, 1);
  EXPECT_NE(zero.err.find("m must be positive"), std::string::npos) << zero.err;
  EXPECT_EQ(run("family", dir).status, 1);
  EXPECT_EQ(run("demo torus", dir).status, 1);
  EXPECT_EQ(run("frobnicate", dir).status, 1);
  EXPECT_EQ(run("verify " + (dir / "missing.json").string(), dir).status, 1);
}

TEST(Cli, VerifyAndMeshOnDemoOutput) {
  const auto dir = scratch("verify");
  ASSERT_EQ(run("demo bcv --out " + (dir / "out").string(), dir).status, 0);
  const auto member = dir / "out" / "bcv_m1_member.json";
  const auto v = run("verify --strict " + member.string(), dir);
  EXPECT_EQ(v.status, 0) << v.err;
  EXPECT_NE(v.out.find("max_abs_E_minus_1"), std::string::npos);
  EXPECT_EQ(run("verify --strict --tol 1e-15 " + member.string(), dir).status, 2);
  const auto m = run("mesh " + member.string() + " --out " + (dir / "mesh").string(), dir);
  EXPECT_EQ(m.status, 0) << m.err;
  EXPECT_EQ(bourgen::read_text(dir / "mesh" / "bcv_m1.obj"), bourgen::read_text(dir / "out" / "bcv_m1.obj"));
}
