#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  std::string cmd = env + " " + std::string(WORMLAB_CLI) + " " + args + " 2>&1";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  fs::path d = fs::path(WORMLAB_TEST_DIR) / "cli" / name;
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, ModelsListing) {
  auto r = run("models");
  ASSERT_EQ(r.code, 0) << r.out;
  auto j = json::parse(r.out);
  bool found = false;
  for (const auto& e : j)
    if (e["name"] == "learned_h0") {
      found = true;
      EXPECT_EQ(e["terms"].size(), 5u);
    }
  EXPECT_TRUE(found);
  auto d = scratch("models");
  r = run("models --write --out " + d.string());
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(slurp(d / "models.json")), j);
}

TEST(Cli, TeleportWritesCurvesAndManifest) {
  auto d = scratch("teleport");
  auto r = run("teleport --model learned_h0 --mu -12 --mu 12 --t0 2.8 --t1 0:10:0.1 --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  std::string csv = slurp(d / "teleport.csv");
  EXPECT_EQ(csv.rfind("t1,mu,I_PT_nats,I_PT_bits\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 101);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
  auto sum = json::parse(slurp(d / "teleport_summary.json"));
  EXPECT_EQ(sum["asymmetry"]["sign"], 1);
  auto m = json::parse(slurp(d / "manifest.json"));
  EXPECT_EQ(m["command"], "teleport");
  EXPECT_EQ(m["config"]["t0"], 2.8);
  EXPECT_EQ(m["config"]["beta"], 0.25);
  EXPECT_EQ(m["outputs"].size(), 2u);
  for (const auto& o : m["outputs"]) EXPECT_TRUE(fs::exists(o.get<std::string>()));
}

TEST(Cli, SeededRunsAreByteIdentical) {
  auto a = scratch("seed_a"), b = scratch("seed_b");
  ASSERT_EQ(run("correlators --model dense_syk --n 8 --seeds 2 --t 0:5:0.5 --seed 7 --out " + a.string()).code, 0);
  ASSERT_EQ(run("correlators --model dense_syk --n 8 --seeds 2 --t 0:5:0.5 --seed 7 --out " + b.string()).code, 0);
  EXPECT_EQ(slurp(a / "correlators.csv"), slurp(b / "correlators.csv"));
  auto c = scratch("seed_c");
  ASSERT_EQ(run("correlators --model dense_syk --n 8 --seeds 2 --t 0:5:0.5 --seed 8 --out " + c.string()).code, 0);
  EXPECT_NE(slurp(a / "correlators.csv"), slurp(c / "correlators.csv"));
}

TEST(Cli, SeedFallsBackToEnvironment) {
  auto d = scratch("env");
  ASSERT_EQ(run("tfd --model learned_h0 --points 3 --out " + d.string(), "WORMLAB_SEED=42").code, 0);
  EXPECT_EQ(json::parse(slurp(d / "manifest.json"))["seed"], 42);
  d = scratch("env_flag");
  ASSERT_EQ(run("tfd --model learned_h0 --points 3 --seed 5 --out " + d.string(), "WORMLAB_SEED=42").code, 0);
  EXPECT_EQ(json::parse(slurp(d / "manifest.json"))["seed"], 5);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("teleport --mu -12").code, 2);
  EXPECT_EQ(run("teleport --model does_not_exist --out " + scratch("bad").string()).code, 2);
  EXPECT_FALSE(fs::exists(scratch("bad") / "teleport.csv"));
  EXPECT_EQ(run("teleport --model learned_h0 --t1 0:1").code, 2);
  EXPECT_EQ(run("teleport --model learned_h0 --t1 1:0:0.1").code, 2);
  EXPECT_EQ(run("teleport --model learned_h0 --majorana-norm dirac").code, 2);
  EXPECT_EQ(run("frobnicate").code, 2);
  EXPECT_EQ(run("teleport --help").code, 0);
}

TEST(Cli, PartialOutputsRemovedOnFailure) {
  auto d = scratch("partial");
  // the correlator table is written before the OTOC pair is rejected
  auto r = run("correlators --model learned_h0 --t 0:2:1 --otoc 1,99 --out " + d.string());
  EXPECT_NE(r.code, 0);
  EXPECT_FALSE(fs::exists(d / "correlators.csv"));
  EXPECT_FALSE(fs::exists(d / "manifest.json"));
}

TEST(Cli, ConfigFileWithFlagOverride) {
  auto d = scratch("config");
  fs::create_directories(d);
  std::ofstream(d / "run.cfg") << "# teleport settings\nmodel = learned_h0\nmu = -12,12\nt1 = 0:4:1\nt0 = 1.0\n";
  auto r = run("teleport --config " + (d / "run.cfg").string() + " --t0 2.0 --beta 0.5 --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  auto m = json::parse(slurp(d / "manifest.json"));
  EXPECT_EQ(m["config"]["t0"], 2.0);
  EXPECT_EQ(m["config"]["beta"], 0.5);
  EXPECT_EQ(m["config"]["mu"].size(), 2u);
  std::string csv = slurp(d / "teleport.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 2 * 5);
}

TEST(Cli, GridIncludesStopWithinTolerance) {
  auto d = scratch("grid");
  ASSERT_EQ(run("tfd --model learned_h0 --points 2 --out " + d.string()).code, 0);
  d = scratch("grid2");
  ASSERT_EQ(run("winding --model learned_h0 --fermions 1 --t 0:0.3:0.1 --out " + d.string()).code, 0);
  std::string csv = slurp(d / "winding.csv");
  // four time points (0, 0.1, 0.2, 0.3) times sizes 0..7
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4 * 8);
  d = scratch("grid3");
  ASSERT_EQ(run("winding --model learned_h0 --fermions 1 --t 0:0.35:0.1 --out " + d.string()).code, 0);
  csv = slurp(d / "winding.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 4 * 8);
}

TEST(Cli, SparsifyAndNoise) {
  auto d = scratch("sparsify");
  auto r = run("sparsify --target dense_syk --n 6 --lambda 0.05 --max-iters 3 --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(slurp(d / "sparsify_trace.csv").rfind("iter,loss,l1,active_terms\n", 0), 0u);
  auto model = json::parse(slurp(d / "sparsify_model.json"));
  EXPECT_EQ(model["n_majorana"], 6);
  d = scratch("noise");
  r = run("noise --model learned_h0 --kind depolarizing --strength 0,0.5 --mu -12 --t1 3:4:0.5 --out " + d.string());
  ASSERT_EQ(r.code, 0) << r.out;
  std::string csv = slurp(d / "noise.csv");
  EXPECT_EQ(csv.rfind("t1,mu,p_or_eps,kind,I_PT\n", 0), 0u);
  EXPECT_NE(csv.find("depolarizing"), std::string::npos);
}
