// Copyright 2026 The cavitybell Authors
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

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cavitybell_cli/commands.hpp"
#include "cavitybell_cli/config.hpp"

namespace cavitybell::cli {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("cavitybell_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(std::vector<std::string> args) {
    args.insert(args.begin(), "cavitybell");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    return run_cli(static_cast<int>(argv.size()), argv.data());
  }

  fs::path file(const std::string& name) const { return dir_ / name; }

  fs::path write(const std::string& name, const std::string& text) const {
    std::ofstream(file(name)) << text;
    return file(name);
  }

  fs::path dir_;
};

RunConfig parse(const std::string& ini) {
  std::istringstream in(ini);
  return build_config(read_ini(in));
}

TEST(Config, SectionsAndValues) {
  const RunConfig c = parse(
      "[run]\nmodel = four-level\nseed = 42\n[four_level]\nomega0 = (2,0.5)\ndelta3 = 800\n"
      "[pipeline]\nvartheta = pi/4\nfailure_policy = include_as_zero\n");
  EXPECT_EQ(c.model, Model::four_level);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.four_level.omega0, Complex(2.0, 0.5));
  EXPECT_EQ(c.four_level.delta3, 800.0);
  EXPECT_DOUBLE_EQ(c.pipeline.vartheta, std::numbers::pi / 4.0);
  EXPECT_EQ(c.pipeline.failure_policy, FailurePolicy::include_as_zero);
}

TEST(Config, Axes) {
  const auto log = parse_axis("k", "1e-3:1e-1:3:log");
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log[0], 1e-3);
  EXPECT_NEAR(log[1], 1e-2, 1e-17);
  EXPECT_EQ(log[2], 1e-1);
  EXPECT_EQ(parse_axis("k", "0:1:5:linear")[2], 0.5);
  EXPECT_EQ(parse_axis("k", "0, 0.1 ,1").size(), 3u);
  EXPECT_EQ(parse_axis("k", "0.5:2:1:linear").size(), 1u);
  const RunConfig c = parse("[sweep]\ngamma = 0, 1e-3, 1e-2\n");
  ASSERT_NE(c.axis("gamma"), nullptr);
  EXPECT_EQ(c.axis("gamma")->values.size(), 3u);
}

TEST(Config, Reals) {
  EXPECT_DOUBLE_EQ(parse_real("k", "3pi/4"), 0.75 * std::numbers::pi);
  EXPECT_DOUBLE_EQ(parse_real("k", "-pi"), -std::numbers::pi);
  EXPECT_DOUBLE_EQ(parse_real("k", "0.5*pi"), 0.5 * std::numbers::pi);
  EXPECT_EQ(parse_real("k", " 1e-3 "), 1e-3);
  EXPECT_EQ(parse_complex("k", "(1,-2)"), Complex(1.0, -2.0));
}

void expect_error_names(const std::string& ini, const std::string& key) {
  try {
    parse(ini);
    FAIL() << "no error for " << key;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(key), std::string::npos) << e.what();
  }
}

TEST(Config, ErrorsNameTheKey) {
  expect_error_names("[two_level]\nomega1 = abc\n", "two_level.omega1");
  expect_error_names("[two_level]\nbogus = 1\n", "two_level.bogus");
  expect_error_names("[sweep]\nomega1 = 1:2:0:log\n", "sweep.omega1");
  expect_error_names("[sweep]\nfoo = 1\n", "sweep.foo");
  expect_error_names("[run]\nmodel = three-level\n", "run.model");
  expect_error_names("[pipeline]\nn_runs = 10\n", "pipeline.n_runs");
  expect_error_names("[four_level]\nomega0 = (1,2\n", "four_level.omega0");
  expect_error_names("[two_level]\nkappa = -1\n", "two_level.kappa");
}

TEST(Config, Overrides) {
  RawConfig raw{{"two_level.gamma", "0.1"}};
  raw.push_back(parse_override("two_level.gamma=0.2"));
  EXPECT_EQ(build_config(raw).two_level.gamma, 0.2);
  EXPECT_THROW(parse_override("gamma"), ConfigError);
  EXPECT_THROW(parse_override("gamma=1"), ConfigError);
}

TEST_F(Cli, Fig2CsvShape) {
  ASSERT_EQ(run({"fig2", "--set", "sweep.omega1=0.01", "--set", "sweep.gamma=0", "--out", file("a.csv").string()}), 0);
  const std::string csv = slurp(file("a.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "omega1_over_g,gamma_over_g,kappa_over_g,p0,fidelity,alpha_abs");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 2);
  EXPECT_EQ(csv.find('\r'), std::string::npos);
}

TEST_F(Cli, Fig2DefaultGridClaims) {
  ASSERT_EQ(run({"fig2", "--set", "sweep.gamma=0,1e-3,1e-2", "--out", file("f2.csv").string()}), 0);
  std::istringstream in(slurp(file("f2.csv")));
  std::string line;
  std::getline(in, line);
  std::map<double, double> p0_at_gamma0;
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<double> v;
    std::stringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) v.push_back(std::stod(cell));
    ASSERT_EQ(v.size(), 6u);
    EXPECT_GE(v[4], 0.95) << line;
    if (v[1] == 0.0) p0_at_gamma0[v[0]] = v[3];
    ++rows;
  }
  EXPECT_EQ(rows, 27);
  double last = 2.0;
  for (const auto& [om, p0] : p0_at_gamma0) {  // ascending omega
    EXPECT_LT(p0, last);
    last = p0;
  }
}

TEST_F(Cli, Fig6Deterministic) {
  const std::vector<std::string> base{"fig6", "--set", "sweep.omega_drive=0.01,0.1", "--set", "sweep.gamma=0,1"};
  auto a = base, b = base;
  a.insert(a.end(), {"--out", file("a.csv").string(), "--jobs", "1"});
  b.insert(b.end(), {"--out", file("b.csv").string(), "--jobs", "3"});
  ASSERT_EQ(run(a), 0);
  ASSERT_EQ(run(b), 0);
  EXPECT_EQ(slurp(file("a.csv")), slurp(file("b.csv")));
  EXPECT_EQ(slurp(file("a.csv")).substr(0, 40), "omega_drive_over_g,gamma_over_g,p0,fidel");
}

TEST_F(Cli, Fig6BeatsTwoLevelAtStrongDecay) {
  // At Gamma = g the two-level pulse is frozen by the decay: p0 stays high but
  // alpha ~ 0.07, so compare the yield of the entangled state, p0 |alpha|^2.
  ASSERT_EQ(run({"fig6", "--set", "sweep.omega_drive=0.1", "--set", "sweep.gamma=1", "--out", file("f6.csv").string()}), 0);
  ASSERT_EQ(run({"fig2", "--set", "sweep.omega1=0.1", "--set", "sweep.gamma=1", "--out", file("f2.csv").string()}), 0);
  auto row = [](const std::string& csv) {
    std::vector<double> v;
    std::stringstream ls(csv.substr(csv.find('\n') + 1));
    for (std::string cell; std::getline(ls, cell, ',');) v.push_back(std::stod(cell));
    return v;
  };
  const auto f6 = row(slurp(file("f6.csv")));
  const auto f2 = row(slurp(file("f2.csv")));
  FourLevelParams p;
  p.gamma2 = p.gamma3 = 1.0;
  p.omega_i = {Complex{0.1, 0.0}, Complex{-0.1, 0.0}};
  const double alpha4 = std::abs(prepare_four_level(p).alpha_realized);
  EXPECT_GT(f6[2] * alpha4 * alpha4, 10.0 * f2[3] * f2[5] * f2[5]);
  EXPECT_GT(f6[2], 0.7);
}

TEST_F(Cli, BellSurface) {
  ASSERT_EQ(run({"bell-surface", "--out", file("b.csv").string()}), 0);
  const std::string csv = slurp(file("b.csv"));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "omega_minus_T,vartheta,b_s");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 201 * 201 + 1);
  ASSERT_EQ(run({"bell-surface", "--set", "bell.omega_minus_t_points=2", "--set", "bell.vartheta_points=2", "--out",
                 file("t.csv").string()}),
            0);
  const std::string tiny = slurp(file("t.csv"));
  EXPECT_EQ(std::count(tiny.begin(), tiny.end(), '\n'), 5);
}

TEST_F(Cli, PipelineReport) {
  ASSERT_EQ(run({"pipeline", "--set", "pipeline.n_runs=100", "--seed", "3", "--out", file("p.json").string()}), 0);
  const auto j = nlohmann::json::parse(slurp(file("p.json")));
  EXPECT_EQ(j.at("schema"), kPipelineSchema);
  for (const char* k : {"params", "p0", "alpha_realized", "e_hat", "b_hat", "std_err", "n_discarded", "seed"})
    EXPECT_TRUE(j.contains(k)) << k;
  EXPECT_EQ(j.at("seed"), 3);
  EXPECT_EQ(j.at("e_hat").size(), 2u);
}

TEST_F(Cli, PipelineInjectedViolation) {
  ASSERT_EQ(run({"pipeline", "--set", "pipeline.mode=inject", "--out", file("p.json").string()}), 0);
  const auto j = nlohmann::json::parse(slurp(file("p.json")));
  EXPECT_GT(j.at("b_hat").get<double>() - 3.0 * j.at("std_err").get<double>(), 2.0);
}

TEST_F(Cli, PipelineForcedFailures) {
  ASSERT_EQ(run({"pipeline", "--set", "pipeline.mode=inject", "--set", "pipeline.p0=0.5", "--set",
                 "pipeline.failure_policy=include_as_zero", "--out", file("p.json").string()}),
            0);
  const auto j = nlohmann::json::parse(slurp(file("p.json")));
  EXPECT_LT(j.at("b_hat").get<double>(), 2.0);
}

TEST_F(Cli, SeedFromEnvironment) {
  ::setenv("CAVITYBELL_SEED", "1234", 1);
  ASSERT_EQ(run({"pipeline", "--set", "pipeline.n_runs=100", "--out", file("p.json").string()}), 0);
  ::unsetenv("CAVITYBELL_SEED");
  EXPECT_EQ(nlohmann::json::parse(slurp(file("p.json"))).at("seed"), 1234);
}

TEST_F(Cli, ValidateExitCodes) {
  EXPECT_EQ(run({"validate", "--out", file("v.txt").string()}), 0);
  EXPECT_EQ(run({"validate", "--set", "run.model=four-level", "--out", file("v.txt").string()}), 0);
  EXPECT_EQ(run({"validate", "--set", "two_level.omega1=1", "--out", file("v.txt").string()}), 1);
  EXPECT_NE(slurp(file("v.txt")).find("warn"), std::string::npos);
}

TEST_F(Cli, ConfigErrorsExitTwoWithoutOutput) {
  EXPECT_EQ(run({"fig2", "--set", "two_level.omega1=abc", "--out", file("x.csv").string()}), 2);
  EXPECT_FALSE(fs::exists(file("x.csv")));
  EXPECT_EQ(run({"fig6", "--config", file("missing.ini").string()}), 2);
  EXPECT_EQ(run({"fig2", "--set", "run.model=four-level"}), 2);
}

TEST_F(Cli, ConfigFile) {
  const fs::path ini = write("c.ini", "[run]\nmodel = two-level\n[sweep]\nomega1 = 0.02\ngamma = 0\n");
  ASSERT_EQ(run({"fig2", "--config", ini.string(), "--out", file("o.csv").string()}), 0);
  EXPECT_NE(slurp(file("o.csv")).find("\n0.02,0,1,"), std::string::npos);
}

TEST_F(Cli, NonConvergenceExitsThree) {
  EXPECT_EQ(run({"fig2", "--set", "sweep.omega1=0.1", "--set", "sweep.gamma=0", "--set", "run.n_max=1", "--set",
                 "run.n_max_limit=1"}),
            3);
}

TEST(Format, SeventeenDigits) {
  EXPECT_EQ(format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(std::stod(format_real(1.0 / 3.0)), 1.0 / 3.0);
}

}  // namespace
}  // namespace cavitybell::cli
