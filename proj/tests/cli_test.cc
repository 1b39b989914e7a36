// Copyright 2026 The ptel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "gtest/gtest.h"
#include "json.hpp"
#include "ptel/fisher.hpp"

namespace ptel {
namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

nlohmann::json run_json(std::vector<std::string> args) {
  args.push_back("--format");
  args.push_back("json");
  const Outcome o = run_cli(args);
  EXPECT_EQ(o.code, 0) << o.err;
  return nlohmann::json::parse(o.out);
}

// Data lines of a CSV report, split on commas, header first.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("ptel_cli_test_" + name);
}

TEST(CliFisher, LosslessTwoPhotons) {
  const auto doc = run_json({"fisher", "--n", "2", "--lossless", "--phi", "0.7"});
  EXPECT_NEAR(doc["summary"]["fisher"].get<double>(), 0.5, 1e-12);
  EXPECT_EQ(doc["parameters"]["model"], "lossless");
  EXPECT_EQ(doc["version"], PTEL_VERSION);
}

TEST(CliFisher, CertainStarWithoutLossIsLossless) {
  const auto doc = run_json({"fisher", "--n", "2", "--p", "0", "--epsilon", "1", "--phi", "0.3"});
  EXPECT_EQ(doc["parameters"]["model"], "thermal");
  EXPECT_NEAR(doc["summary"]["fisher"].get<double>(), fisher_lossless(2, 0.3 * kPi).value, 1e-12);
}

TEST(CliFisher, ThermalFixture) {
  // --phi is in units of pi; 1/pi selects a phase of one radian.
  const auto doc = run_json({"fisher", "--n", "3", "--p", "0.5", "--epsilon", "0.01", "--phi",
                             "0.31830988618379069"});
  EXPECT_NEAR(doc["summary"]["fisher"].get<double>(), 1.6306205898612175e-3, 1e-14);
}

TEST(CliFisher, LossBreakdown) {
  const auto doc = run_json({"fisher", "--n", "3", "--p", "0.25", "--phi", "0.4"});
  EXPECT_EQ(doc["parameters"]["model"], "loss");
  EXPECT_NEAR(doc["summary"]["fisher"].get<double>(), doc["summary"]["fisher_decomposition"].get<double>(),
              1e-10);
  EXPECT_EQ(doc["columns"], nlohmann::json({"detected", "q", "q_closed_form", "f_prime"}));
  double weighted = 0.0;
  for (const auto& row : doc["rows"]) {
    if (!row[2].is_null()) EXPECT_NEAR(row[1].get<double>(), row[2].get<double>(), 1e-12);
    weighted += row[1].get<double>() * row[3].get<double>();
  }
  EXPECT_NEAR(weighted, doc["summary"]["fisher"].get<double>(), 1e-10);
}

TEST(CliFisher, AlphaSetsLoss) {
  const auto doc = run_json({"fisher", "--n", "2", "--alpha", "4", "--epsilon", "0.01", "--phi", "0.2"});
  EXPECT_NEAR(doc["parameters"]["p"].get<double>(), 1.0 - std::exp(-2.0), 1e-15);
  EXPECT_NEAR(doc["summary"]["fisher"].get<double>(), 0.01 * std::exp(-2.0) / 2, 1e-12);
}

TEST(CliFisher, ValidationErrors) {
  EXPECT_EQ(run_cli({"fisher", "--n", "9", "--lossless"}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({"fisher", "--n", "2", "--p", "1.5"}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({"fisher", "--n", "2", "--p", "0.2", "--alpha", "1"}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({"fisher", "--n", "2", "--lossless", "--p", "0.2"}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({"fisher", "--n", "2", "--epsilon", "0"}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({"fisher", "--bogus"}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({"fisher", "--format", "xml"}).code, cli::kExitValidation);
}

TEST(CliFisher, HelpExitsCleanly) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({"fisher", "--help"}).code, 0);
}

TEST(CliOutput, CsvHeaderEchoesParameters) {
  const Outcome o = run_cli({"fisher", "--n", "3", "--p", "0.5", "--phi", "0.25"});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_NE(o.out.find("# version: " PTEL_VERSION), std::string::npos);
  EXPECT_NE(o.out.find("# command: fisher"), std::string::npos);
  EXPECT_NE(o.out.find("# parameter.n: 3"), std::string::npos);
  EXPECT_NE(o.out.find("# parameter.p: 0.5"), std::string::npos);
  EXPECT_NE(o.out.find("# qft_convention:"), std::string::npos);
  EXPECT_EQ(csv_rows(o.out).front(), (std::vector<std::string>{"detected", "q", "q_closed_form", "f_prime"}));
}

TEST(CliOutput, Deterministic) {
  const std::vector<std::string> args{"curve", "--series", "loss", "--n", "3", "--phi-points", "9", "--workers", "1"};
  EXPECT_EQ(run_cli(args).out, run_cli(args).out);
}

TEST(CliOutput, WritesFile) {
  const auto path = temp_path("out.csv");
  std::filesystem::remove(path);
  const Outcome o = run_cli({"fisher", "--n", "2", "--lossless", "--output", path.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_NE(text.str().find("summary.fisher"), std::string::npos);
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli({"fisher", "--n", "2", "--lossless", "--output", "/nonexistent/dir/x.csv"}).code,
            cli::kExitValidation);
}

TEST(CliConfig, FileValuesAndOverrides) {
  const auto path = temp_path("config.json");
  {
    std::ofstream f(path);
    f << R"({"n": 3, "p": 0.25, "phi": 0.4, "format": "json"})";
  }
  const Outcome a = run_cli({"fisher", "--config", path.string()});
  ASSERT_EQ(a.code, 0) << a.err;
  const auto doc = nlohmann::json::parse(a.out);
  EXPECT_EQ(doc["parameters"]["n"], 3);
  EXPECT_NEAR(doc["summary"]["fisher"].get<double>(), fisher_with_loss(3, 0.4 * kPi, 0.25).value, 1e-14);
  const Outcome b = run_cli({"fisher", "--config", path.string(), "--n", "2"});
  ASSERT_EQ(b.code, 0) << b.err;
  EXPECT_EQ(nlohmann::json::parse(b.out)["parameters"]["n"], 2);
  {
    std::ofstream f(path);
    f << R"({"n_list": [2, 3], "phi_points": 3})";
  }
  const Outcome c = run_cli({"curve", "--series", "lossless", "--config", path.string()});
  ASSERT_EQ(c.code, 0) << c.err;
  EXPECT_EQ(csv_rows(c.out).size(), 7u);
  {
    std::ofstream f(path);
    f << R"({"no_such_field": 1})";
  }
  EXPECT_EQ(run_cli({"fisher", "--config", path.string()}).code, cli::kExitValidation);
  std::filesystem::remove(path);
  EXPECT_EQ(run_cli({"fisher", "--config", path.string()}).code, cli::kExitValidation);
}

TEST(CliCurve, LosslessApproachesBoundNearZero) {
  const auto doc = run_json({"curve", "--series", "lossless", "--phi-points", "721"});
  std::map<int, double> first;
  for (const auto& row : doc["rows"]) {
    const int n = row[0];
    const double phi_pi = row[1];
    const double f = row[2];
    EXPECT_LE(f, 1.0 - 1.0 / n + 1e-9);
    if (phi_pi > 0.0 && phi_pi < 0.004) first[n] = f;
  }
  ASSERT_EQ(first.size(), 4u);
  for (const auto& [n, f] : first) EXPECT_NEAR(f, 1.0 - 1.0 / n, 1e-3) << n;
}

TEST(CliCurve, MoreLossLowersFisher) {
  // Odd photon numbers have an exact lossless fringe zero at phi = pi that loss
  // fills in, so the ordering is checked away from it there.
  for (int n = 2; n <= 5; ++n) {
    const auto doc = run_json({"curve", "--series", "loss", "--n", std::to_string(n), "--phi-points", "73"});
    std::map<double, std::map<double, double>> by_phase;
    for (const auto& row : doc["rows"]) by_phase[row[2].get<double>()][row[1].get<double>()] = row[3];
    for (const auto& [phi_pi, curve] : by_phase) {
      if (n % 2 == 1 && std::abs(phi_pi - 1.0) < 0.2) continue;
      double previous = 2.0;
      for (const auto& [p, f] : curve) {
        EXPECT_LE(f, previous + 1e-12) << "n=" << n << " phi=" << phi_pi << "pi p=" << p;
        previous = f;
      }
    }
  }
}

TEST(CliCurve, EpsilonSeriesLinearForTwoPhotons) {
  const auto doc = run_json({"curve", "--series", "epsilon", "--n-list", "2", "--alpha", "4", "--phi", "0.3"});
  ASSERT_EQ(doc["rows"].size(), 5u);
  for (const auto& row : doc["rows"]) {
    EXPECT_NEAR(row[5].get<double>(), std::exp(-2.0) / 2, 1e-8);
  }
}

TEST(CliCurve, ResolutionColumns) {
  const Outcome o = run_cli({"curve", "--series", "resolution", "--n", "2", "--alpha-min", "3", "--alpha-max",
                             "5", "--alpha-step", "0.5"});
  ASSERT_EQ(o.code, 0) << o.err;
  const auto rows = csv_rows(o.out);
  EXPECT_EQ(rows.front(), (std::vector<std::string>{"alpha", "phi_opt_rad", "fisher", "delta_theta_uas"}));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[3][0], "4");
  EXPECT_NEAR(std::stod(rows[3][3]), 19.81, 0.01);
  EXPECT_EQ(run_cli({"curve", "--series", "nope"}).code, cli::kExitValidation);
}

TEST(CliTable, LosslessSanityMode) {
  const auto doc = run_json({"table", "--n-list", "2,3,4", "--epsilon", "1", "--p-override", "0"});
  ASSERT_EQ(doc["rows"].size(), 3u);
  const double k = 2 * kPi / 628e-9;
  for (const auto& row : doc["rows"]) {
    const int n = row[0];
    const double want = 180.0 / kPi * 3600e6 / (k * 12.0 * 1e4 * std::sqrt(1.0 - 1.0 / n));
    EXPECT_NEAR(row[1].get<double>(), want, 1e-9 * want);
    EXPECT_EQ(row[5], true);
  }
}

TEST(CliTable, TwoPhotonRow) {
  const auto doc = run_json({"table", "--n-list", "2"});
  const auto& row = doc["rows"][0];
  EXPECT_NEAR(row[1].get<double>(), 19.81, 0.01);
  EXPECT_NEAR(row[2].get<double>(), 4.0, 0.01);
  EXPECT_EQ(row[6], true);
}

TEST(CliValidate, DefaultRunPasses) {
  const Outcome o = run_cli({"validate"});
  EXPECT_EQ(o.code, 0) << o.out;
  for (const auto& row : csv_rows(o.out)) {
    if (row.front() != "check") EXPECT_EQ(row.back(), "pass") << row.front();
  }
}

TEST(CliValidate, RejectsBadInputs) {
  EXPECT_EQ(run_cli({"validate", "--p", "1.5"}).code, cli::kExitValidation);
  EXPECT_EQ(run_cli({"validate", "--n", "6"}).code, cli::kExitValidation);
}

TEST(CliBinary, ExitCodes) {
  const std::string bin = PTEL_BINARY;
  const int bad = std::system((bin + " validate --p 1.5 > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), cli::kExitValidation);
  const int ok = std::system((bin + " fisher --n 2 --lossless > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(ok));
  EXPECT_EQ(WEXITSTATUS(ok), 0);
}

}  // namespace
}  // namespace ptel
