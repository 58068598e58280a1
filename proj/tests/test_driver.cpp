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

#include <random>

#include "ncg/driver.hpp"
#include "ncg/error.hpp"
#include "ncg/oracle.hpp"
#include "test_support.hpp"

namespace ncg {
namespace {

using testing::make_instance;
using testing::make_topology;

TEST(Metrics, TableTwoSpainRow) {
  const Metrics m = report_metrics(50.2, 42.6, 50.2);
  EXPECT_NEAR(m.gos_percent, 84.9, 0.05);
  ASSERT_TRUE(m.epsilon_tab);
  EXPECT_NEAR(*m.epsilon_tab, 17.8, 0.05);
  EXPECT_DOUBLE_EQ(round1(m.gos_percent), 84.9);
  EXPECT_DOUBLE_EQ(round1(*m.epsilon_tab), 17.8);
}

TEST(Metrics, TableOneFirstRow) {
  const Metrics m = report_metrics(3.7, 3.6, 3.7);
  ASSERT_TRUE(m.epsilon_tab);
  EXPECT_NEAR(*m.epsilon_tab, 2.8, 0.05);
}

TEST(Metrics, EqualBoundsMeanNoGap) {
  const Metrics m = report_metrics(12, 12, 16);
  EXPECT_DOUBLE_EQ(m.epsilon_lp, 0.0);
  EXPECT_DOUBLE_EQ(*m.epsilon_tab, 0.0);
  EXPECT_DOUBLE_EQ(m.gos_percent, 75.0);
}

TEST(Metrics, DivisionGuards) {
  const Metrics zero = report_metrics(0, 0, 0);
  EXPECT_DOUBLE_EQ(zero.epsilon_lp, 0.0);
  EXPECT_DOUBLE_EQ(*zero.epsilon_tab, 0.0);
  EXPECT_DOUBLE_EQ(zero.gos_percent, 100.0);
  const Metrics none_served = report_metrics(2, 0, 4);
  EXPECT_DOUBLE_EQ(none_served.epsilon_lp, 100.0);
  EXPECT_FALSE(none_served.epsilon_tab);
}

PricingResult slot_result(double rc_ilp, double rc_lp_star) {
  PricingResult r;
  r.rc_ilp = rc_ilp;
  r.rc_lp_star = rc_lp_star;
  return r;
}

TEST(Certify, Rules) {
  EXPECT_TRUE(certify({slot_result(0, 0), slot_result(0, 0)}));
  EXPECT_FALSE(certify({slot_result(0, 0), slot_result(0, 0.3)}));
  EXPECT_TRUE(certify({slot_result(0, 1e-7), slot_result(0, 0), slot_result(0, 1e-6)}));
}

TEST(Solve, EmptyInstance) {
  const Instance inst = make_instance(make_topology(2, {{0, 1}}), 4, {});
  const SolveOutcome out = solve(inst);
  EXPECT_DOUBLE_EQ(out.report.z_lp_star, 0.0);
  EXPECT_DOUBLE_EQ(out.report.z_ilp_tilde, 0.0);
  EXPECT_DOUBLE_EQ(out.report.gos_percent, 100.0);
  EXPECT_EQ(out.report.columns_generated, 0);
  EXPECT_TRUE(out.report.certified);
  EXPECT_TRUE(out.plan.lightpaths.empty());
}

TEST(Solve, SingleLightpath) {
  const Instance inst = make_instance(make_topology(2, {{0, 1}}), 4, {{0, 1, 2}});
  const SolveOutcome out = solve(inst);
  EXPECT_NEAR(out.report.z_lp_star, 2.0, 1e-9);
  EXPECT_DOUBLE_EQ(out.report.z_ilp_tilde, 2.0);
  EXPECT_DOUBLE_EQ(out.report.gos_percent, 100.0);
  EXPECT_NEAR(out.report.epsilon_lp, 0.0, 1e-9);
  EXPECT_TRUE(out.report.certified);
  ASSERT_EQ(out.plan.lightpaths.size(), 1u);
}

TEST(Solve, RejectsBadConfig) {
  const Instance inst = make_instance(make_topology(2, {{0, 1}}), 4, {{0, 1, 2}});
  SolveConfig cfg;
  cfg.final_ilp_relative_gap = 1.0;
  EXPECT_THROW(solve(inst, cfg), InvariantViolation);
  cfg.final_ilp_relative_gap = 0.1;
  cfg.tolerance = 0;
  EXPECT_THROW(solve(inst, cfg), InvariantViolation);
}

TEST(SolveProperty, OracleSandwichAndMonotoneTrace) {
  std::mt19937_64 rng(2024);
  SolveConfig cfg;
  cfg.final_ilp_relative_gap = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const Instance inst = testing::random_tiny_instance(rng);
    const SolveOutcome out = solve(inst, cfg);
    const SolveReport& r = out.report;
    const long long truth = oracle_solve(inst).optimum;
    EXPECT_LE(r.z_ilp_tilde, r.z_lp_star + 1e-6) << trial;
    EXPECT_LE(r.z_ilp_tilde, truth) << trial;
    if (r.certified) EXPECT_LE(truth, r.z_lp_star + 1e-6) << trial;
    for (std::size_t i = 0; i < r.lp_trace.size(); ++i) {
      EXPECT_NEAR(r.lp_trace[i], r.lp_trace_after_prune[i], 1e-6);
      if (i > 0) EXPECT_GE(r.lp_trace[i], r.lp_trace[i - 1] - 1e-6);
    }
    const PlanScan scan = scan_plan(inst, out.plan);
    EXPECT_TRUE(scan.ok()) << trial;
    EXPECT_EQ(scan.served_slots, static_cast<long long>(r.z_ilp_tilde)) << trial;
  }
}

TEST(SolveProperty, DeterministicRepeats) {
  auto topo = std::make_shared<const Topology>(*reference_topology("spain21"));
  const Instance inst = generate_inoc_style(topo, 2500, 7, 30).aggregated();
  SolveConfig cfg;
  cfg.deterministic = true;
  const SolveReport a = solve(inst, cfg).report;
  const SolveReport b = solve(inst, cfg).report;
  EXPECT_EQ(a.z_lp_star, b.z_lp_star);
  EXPECT_EQ(a.z_ilp_tilde, b.z_ilp_tilde);
  EXPECT_EQ(a.lp_trace, b.lp_trace);
  EXPECT_EQ(a.columns_generated, b.columns_generated);
  EXPECT_EQ(a.certified, b.certified);
}

TEST(SolveProperty, ParallelPricingMatchesSequential) {
  auto topo = std::make_shared<const Topology>(*reference_topology("usa24"));
  const Instance inst = generate_inoc_style(topo, 2500, 3, 30).aggregated();
  SolveConfig seq;
  seq.deterministic = true;
  SolveConfig par;
  par.parallel_pricing = true;
  par.threads = 4;
  const SolveOutcome a = solve(inst, seq);
  const SolveOutcome b = solve(inst, par);
  EXPECT_EQ(a.report.lp_trace, b.report.lp_trace);
  EXPECT_EQ(a.report.z_ilp_tilde, b.report.z_ilp_tilde);
  EXPECT_EQ(a.plan.lightpaths, b.plan.lightpaths);
}

TEST(SolveProperty, TimeLimitFlagsUncertified) {
  auto topo = std::make_shared<const Topology>(*reference_topology("spain21"));
  const Instance inst = generate_inoc_style(topo, 5000, 1, 50).aggregated();
  SolveConfig cfg;
  cfg.time_limit_seconds = 1e-9;
  const SolveOutcome out = solve(inst, cfg);
  EXPECT_TRUE(out.report.timed_out);
  EXPECT_FALSE(out.report.certified);
  EXPECT_TRUE(scan_plan(inst, out.plan).ok());
}

}  // namespace
}  // namespace ncg
