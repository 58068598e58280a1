// Copyright 2026 The ncg-rsa Authors
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

#include <filesystem>
#include <fstream>
#include <map>
#include <json.hpp>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "ncg/error.hpp"
#include "ncg/oracle.hpp"
#include "test_support.hpp"

namespace ncg {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation ncg(std::vector<std::string> args) {
  args.insert(args.begin(), "ncg");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("ncg_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// 4-node ring with a chord.
Instance toy() {
  auto topo = testing::make_topology(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}});
  return testing::make_instance(topo, 4, {{0, 2, 2}, {1, 3, 2}, {0, 1, 1}, {2, 3, 3}, {1, 2, 2}})
      .with_name("toy");
}

fs::path write_toy(const fs::path& dir) {
  const fs::path p = dir / "toy.json";
  std::ofstream(p) << save_instance(toy());
  return p;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(RunRowCsv, RoundTripsExactly) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 200; ++i) {
    cli::RunRow r;
    r.instance = i % 3 == 0 ? "odd, \"name\"" : "spain21_" + std::to_string(i);
    r.spectrum_slots = 1 + i;
    r.requests = 2 * i;
    r.load_tbps = u(rng);
    r.z_lp_tbps = u(rng);
    r.z_ilp_tbps = u(rng) / 3.0;
    if (i % 4) r.epsilon_percent = u(rng) / 7.0;
    r.gos_percent = u(rng);
    r.lp_seconds = u(rng) * 1e-5;
    r.ilp_seconds = u(rng);
    r.total_seconds = r.lp_seconds + r.ilp_seconds;
    r.certified = i % 2 == 0;
    EXPECT_EQ(cli::parse_csv_row(cli::to_csv(r)), r) << cli::to_csv(r);
  }
}

TEST(RunRowCsv, RejectsMalformedRows) {
  EXPECT_THROW(cli::parse_csv_row("a,1,2"), ParseError);
  EXPECT_THROW(cli::parse_csv_row("a,x,2,1,1,1,,1,1,1,1,true"), ParseError);
  EXPECT_THROW(cli::parse_csv_row("a,1,2,1,1,1,,1,1,1,1,maybe"), ParseError);
  EXPECT_THROW(cli::parse_csv_row("\"a,1,2,1,1,1,,1,1,1,1,true"), ParseError);
}

TEST(RunRowMarkdown, OneRowPerRunInOrderWithOneDecimal) {
  cli::RunRow a;
  a.instance = "first";
  a.z_lp_tbps = 50.24;
  a.gos_percent = 84.86;
  cli::RunRow b = a;
  b.instance = "second";
  b.epsilon_percent = 17.84;
  const auto md = lines(cli::to_markdown({a, b}));
  ASSERT_EQ(md.size(), 4u);
  EXPECT_NE(md[2].find("| first |"), std::string::npos);
  EXPECT_NE(md[3].find("| second |"), std::string::npos);
  EXPECT_NE(md[2].find("| 50.2 |"), std::string::npos);
  EXPECT_NE(md[2].find("| 84.9 |"), std::string::npos);
  EXPECT_NE(md[2].find("| - |"), std::string::npos);  // no epsilon
  EXPECT_NE(md[3].find("| 17.8 |"), std::string::npos);
}

TEST(CliSolve, WritesPlanAndReports) {
  const fs::path dir = scratch("solve");
  const Invocation r = ncg({"solve", "--instance", write_toy(dir).string(), "--gap", "0",
                     "--deterministic", "--out-dir", (dir / "out").string(), "--format", "csv"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  for (const char* f : {"report.csv", "report.md", "plan.json", "run.json"}) {
    EXPECT_TRUE(fs::exists(dir / "out" / f)) << f;
  }
  const auto csv = lines(slurp(dir / "out" / "report.csv"));
  ASSERT_EQ(csv.size(), 2u);
  EXPECT_EQ(csv[0], cli::csv_header());
  const cli::RunRow row = cli::parse_csv_row(csv[1]);
  EXPECT_EQ(row.instance, "toy");
  EXPECT_TRUE(row.certified);
  ASSERT_TRUE(row.epsilon_percent.has_value());

  // The plan file describes a feasible assignment worth z_ILP.
  const Instance inst = toy();
  const json plan = json::parse(slurp(dir / "out" / "plan.json")).at(0);
  const json run = json::parse(slurp(dir / "out" / "run.json")).at(0);
  EXPECT_EQ(plan.at("served_slots").get<double>(), run.at("z_ilp_slots").get<double>());
  long long served = 0;
  std::map<std::pair<std::string, std::string>, std::vector<int>> cells;
  for (const json& e : plan.at("requests")) {
    const auto path = e.at("path").get<std::vector<std::string>>();
    EXPECT_EQ(path.front(), e.at("source").get<std::string>());
    EXPECT_EQ(path.back(), e.at("dest").get<std::string>());
    const int start = e.at("start_slot"), width = e.at("width");
    EXPECT_GE(start, 1);
    EXPECT_LE(start + width - 1, inst.spectrum_slots());
    EXPECT_EQ(width, e.at("demand_slots").get<int>());
    served += e.at("demand_slots").get<int>();
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
      auto key = std::minmax(path[i], path[i + 1]);
      auto& v = cells[{key.first, key.second}];
      for (int s = start; s < start + width; ++s) v.push_back(s);
    }
  }
  for (auto& [link, v] : cells) {
    std::sort(v.begin(), v.end());
    EXPECT_EQ(std::adjacent_find(v.begin(), v.end()), v.end()) << link.first << "-" << link.second;
  }
  EXPECT_EQ(served, plan.at("served_slots").get<long long>());
}

TEST(CliSolve, DeterministicRunsMatchApartFromTimings) {
  const fs::path dir = scratch("determinism");
  std::vector<cli::RunRow> rows;
  for (int i = 0; i < 2; ++i) {
    const Invocation r = ncg({"solve", "--topology", "spain21", "--load-tbps", "3", "--seed", "7",
                       "--spectrum", "40", "--aggregate", "--deterministic", "--out-dir",
                       (dir / std::to_string(i)).string(), "--format", "csv"});
    ASSERT_EQ(r.code, cli::kExitOk) << r.err;
    rows.push_back(cli::parse_csv_row(lines(r.out).at(1)));
    rows.back().lp_seconds = rows.back().ilp_seconds = rows.back().total_seconds = 0.0;
  }
  EXPECT_EQ(rows[0], rows[1]);
  EXPECT_EQ(rows[0].instance, "spain21_3");
}

TEST(CliSolve, RequireCertifiedFailsOnUncertifiedRun) {
  const fs::path dir = scratch("uncertified");
  // Out of time right after the first master LP.
  const Invocation r = ncg({"solve", "--topology", "spain21", "--load-tbps", "3", "--spectrum", "40",
                     "--time-limit", "1e-9", "--require-certified", "--out-dir", dir.string()});
  EXPECT_EQ(r.code, cli::kExitUncertified) << r.err;
  EXPECT_NE(r.err.find("not certified"), std::string::npos);
  const Invocation plain = ncg({"solve", "--topology", "spain21", "--load-tbps", "3", "--spectrum",
                         "40", "--time-limit", "1e-9", "--out-dir", dir.string()});
  EXPECT_EQ(plain.code, cli::kExitOk);
}

TEST(CliGenerate, ReachesTheRequestedLoad) {
  const fs::path dir = scratch("generate");
  const Invocation r = ncg({"generate", "--topology", "spain21", "--load-tbps", "50", "--seed", "1",
                     "--out", (dir / "i.json").string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const Instance inst = load_instance_file((dir / "i.json").string());
  EXPECT_GE(inst.total_demand_slots(), 2000);
  EXPECT_EQ(inst.name(), "spain21_50");
  // Same seed, same file.
  const Invocation again = ncg({"generate", "--topology", "spain21", "--load-tbps", "50", "--seed",
                         "1", "--out", "-"});
  EXPECT_EQ(again.out, slurp(dir / "i.json"));
}

TEST(CliVerify, PrintsOrderedBoundsAroundTheOracle) {
  const fs::path dir = scratch("verify");
  const Invocation r = ncg({"verify", "--instance", write_toy(dir).string()});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  double ilp = 0, opt = 0, lp = 0;
  ASSERT_EQ(std::sscanf(r.out.c_str(), "toy: z_ILP %lf <= z_oracle %lf <= z_LP* %lf", &ilp, &opt,
                        &lp),
            3)
      << r.out;
  EXPECT_EQ(opt, static_cast<double>(oracle_solve(toy()).optimum));
  EXPECT_LE(ilp, opt);
  EXPECT_LE(opt, lp + 1e-6);
}

TEST(CliVerify, RefusesLargeInstances) {
  const Invocation r = ncg({"verify", "--topology", "spain21", "--load-tbps", "1"});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("oracle limit"), std::string::npos);
}

TEST(CliUsage, BadInvocationsExit64) {
  EXPECT_EQ(ncg({}).code, cli::kExitUsage);
  EXPECT_EQ(ncg({"solve"}).code, cli::kExitUsage);
  EXPECT_EQ(ncg({"solve", "--topology", "spain21"}).code, cli::kExitUsage);
  EXPECT_EQ(ncg({"solve", "--instance", "x.json", "--format", "xml"}).code, cli::kExitUsage);
  EXPECT_EQ(ncg({"solve", "--bogus"}).code, cli::kExitUsage);
  EXPECT_EQ(ncg({"generate", "--load-tbps", "5"}).code, cli::kExitUsage);
  EXPECT_EQ(ncg({"solve", "--help"}).code, cli::kExitOk);
}

TEST(CliSolve, MissingFileIsAFailureNotAUsageError) {
  const Invocation r = ncg({"solve", "--instance", "/nonexistent/x.json"});
  EXPECT_EQ(r.code, cli::kExitFailure);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

}  // namespace
}  // namespace ncg
