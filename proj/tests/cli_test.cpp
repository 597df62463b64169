// Copyright 2026 The shangpp Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sys/wait.h>

#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string output;
};

// Runs the CLI through the shell, capturing stdout and stderr together.
Result RunCli(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + SHANGPP_CLI_PATH + " " + args + " 2>&1";
  Result r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class CliTest : public testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("shangpp_cli_" + std::to_string(::getpid()) + "_" +
            testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path Write(const std::string& name, const std::string& text) {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

const char* kSmoke =
    "experiment.problem = f4\n"
    "experiment.sigma = 10\n"
    "experiment.methods = shang\n"
    "experiment.n_runs = 1\n"
    "experiment.n_iters = 10\n";

TEST_F(CliTest, BenchSmoke) {
  const fs::path cfg = Write("smoke.conf", kSmoke);
  const auto start = std::chrono::steady_clock::now();
  const Result r = RunCli("bench --config " + cfg.string() + " --out " + (dir_ / "out").string());
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ASSERT_EQ(r.code, 0) << r.output;
  EXPECT_LT(secs, 1.0);
  const std::string csv = Slurp(dir_ / "out" / "shang__f4__sigma10.csv");
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "k,mean_subopt,std_subopt,mean_energy,std_energy,bound,n_runs,diverged_runs");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST_F(CliTest, BenchIsByteIdenticalAcrossInvocations) {
  const fs::path cfg = Write("c.conf", std::string(kSmoke) + "experiment.seed = 3\n");
  ASSERT_EQ(RunCli("bench --quiet --config " + cfg.string() + " --out " + (dir_ / "a").string()).code, 0);
  ASSERT_EQ(RunCli("bench --quiet --jobs 3 --config " + cfg.string() + " --out " + (dir_ / "b").string()).code, 0);
  EXPECT_EQ(Slurp(dir_ / "a" / "shang__f4__sigma10.csv"), Slurp(dir_ / "b" / "shang__f4__sigma10.csv"));
}

TEST_F(CliTest, SeedPrecedence) {
  const fs::path plain = Write("plain.conf", kSmoke);
  const fs::path seeded = Write("seeded.conf", std::string(kSmoke) + "experiment.seed = 5\n");
  auto csv = [&](const std::string& args, const std::string& env, const std::string& tag) {
    const fs::path out = dir_ / tag;
    const Result r = RunCli(args + " --quiet --out " + out.string(), env);
    EXPECT_EQ(r.code, 0) << r.output;
    return Slurp(out / "shang__f4__sigma10.csv");
  };
  const std::string s5 = csv("bench --config " + seeded.string(), "", "s5");
  const std::string s6 = csv("bench --config " + seeded.string() + " --seed 6", "", "s6");
  EXPECT_NE(s5, s6);
  // Config beats the environment; the environment beats the default.
  EXPECT_EQ(csv("bench --config " + seeded.string(), "SHANG_SEED=6", "e1"), s5);
  EXPECT_EQ(csv("bench --config " + plain.string(), "SHANG_SEED=6", "e2"), s6);
  EXPECT_EQ(csv("bench --config " + plain.string() + " --seed 5", "SHANG_SEED=6", "e3"), s5);
}

TEST_F(CliTest, EmptyMethodList) {
  const fs::path cfg = Write("e.conf", "experiment.problem = f4\nexperiment.methods = []\n");
  const Result r = RunCli("bench --config " + cfg.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("no methods specified"), std::string::npos);
}

TEST_F(CliTest, ConfigAndUsageErrors) {
  EXPECT_EQ(RunCli("bench --config " + (dir_ / "missing.conf").string()).code, 1);
  const fs::path bad = Write("bad.conf", std::string(kSmoke) + "experiment.colour = red\n");
  const Result r = RunCli("bench --config " + bad.string());
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("experiment.colour"), std::string::npos);
  EXPECT_EQ(RunCli("bench").code, 1);
  EXPECT_EQ(RunCli("").code, 1);
  EXPECT_EQ(RunCli("frobnicate").code, 1);
  EXPECT_EQ(RunCli("verify schedules --jobs 0").code, 1);
  const fs::path good = Write("good.conf", kSmoke);
  EXPECT_EQ(RunCli("bench --config " + good.string(), "SHANG_SEED=banana").code, 1);
}

TEST_F(CliTest, UnwritableOutputDirectory) {
  const fs::path cfg = Write("c.conf", kSmoke);
  Write("blocker", "x");
  EXPECT_EQ(RunCli("bench --config " + cfg.string() + " --out " + (dir_ / "blocker" / "sub").string()).code, 1);
}

TEST_F(CliTest, RuntimeFailure) {
  const fs::path cfg = Write("c.conf", kSmoke);
  fs::create_directories(dir_ / "out" / "shang__f4__sigma10.csv");
  EXPECT_EQ(RunCli("bench --config " + cfg.string() + " --out " + (dir_ / "out").string()).code, 3);
}

TEST_F(CliTest, VerifySuites) {
  Result r = RunCli("verify snag-equivalence");
  EXPECT_EQ(r.code, 0) << r.output;
  EXPECT_NE(r.output.find("max per-coordinate relative deviation"), std::string::npos);
  EXPECT_NE(r.output.find("threshold=1e-12"), std::string::npos);
  r = RunCli("verify deterministic-rates --quiet");
  EXPECT_EQ(r.code, 0) << r.output;
  r = RunCli("verify foo");
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.output.find("foo"), std::string::npos);
}

TEST_F(CliTest, SweepAnchorOnly) {
  const fs::path cfg = Write("s.conf",
                             "experiment.problem = quadratic:0.01;1\n"
                             "experiment.methods = [shang, shangpp]\n"
                             "experiment.n_runs = 4\n"
                             "experiment.n_iters = 50\n"
                             "sweep.sigmas = [0]\n");
  const Result r = RunCli("sweep --quiet --config " + cfg.string() + " --out " + dir_.string());
  ASSERT_EQ(r.code, 0) << r.output;
  const std::string csv = Slurp(dir_ / "sweep__shangpp-m1__quad2d-kappa100.csv");
  EXPECT_NE(csv.find("\nmethod,sigma,final_mean_suboptimality,delta,divergent\n"), std::string::npos);
  const std::string last = csv.substr(csv.rfind('\n', csv.size() - 2) + 1);
  EXPECT_EQ(last.substr(0, last.find(',')), "shangpp-m1");
  EXPECT_NE(last.find(",0,0\n"), std::string::npos);
  EXPECT_TRUE(fs::exists(dir_ / "sweep__shang__quad2d-kappa100.csv"));
}

TEST_F(CliTest, SweepNeedsAnchor) {
  const fs::path cfg = Write("s.conf",
                             "experiment.problem = f4\n"
                             "experiment.methods = shang\n"
                             "sweep.sigmas = [0.1, 0.2]\n");
  EXPECT_EQ(RunCli("sweep --config " + cfg.string() + " --out " + dir_.string()).code, 1);
}

}  // namespace
