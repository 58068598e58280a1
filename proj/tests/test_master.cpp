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

#include "ncg/error.hpp"
#include "ncg/master.hpp"
#include "ncg/oracle.hpp"
#include "test_support.hpp"

namespace ncg {
namespace {

using testing::make_instance;
using testing::make_topology;

// a-b-c line plus a-c shortcut: links 0 = a-b, 1 = b-c, 2 = a-c.
std::shared_ptr<const Topology> tri() { return make_topology(3, {{0, 1}, {1, 2}, {0, 2}}); }

Lightpath lp(int item, NodeId s, NodeId d, std::vector<LinkId> links, int slot, int width) {
  return Lightpath{item, Path{s, d, std::move(links)}, slot, width};
}

TEST(BuildRmp, Counting) {
  const Instance inst = make_instance(tri(), 10, {{0, 1, 2}, {1, 2, 3}, {0, 2, 1}});
  RestrictedMaster rmp(inst);
  EXPECT_EQ(rmp.request_row_count(), 3);
  EXPECT_EQ(rmp.link_slot_row_count(), 3 * 10);
  EXPECT_EQ(rmp.model().constraint_count(), 3 + 30);
  EXPECT_EQ(rmp.model().variable_count(), 3);
  EXPECT_EQ(rmp.column_count(), 0);
}

TEST(BuildRmp, EmptyRequestSetHasValueZero) {
  RestrictedMaster rmp(make_instance(tri(), 4, {}));
  EXPECT_DOUBLE_EQ(rmp.solve_lp_and_prune().value, 0.0);
}

TEST(BuildRmp, FreshDualsBoundedByDemand) {
  const Instance inst = make_instance(tri(), 4, {{0, 1, 2}, {1, 2, 3}});
  RestrictedMaster rmp(inst);
  const MasterLpResult r = rmp.solve_lp_and_prune();
  EXPECT_DOUBLE_EQ(r.value, 0.0);
  // With no columns y_k is held at 0 by its own row, whose dual prices D_k.
  for (int k = 0; k < 2; ++k) {
    EXPECT_GE(r.duals.mu(k), -1e-9);
    EXPECT_LE(r.duals.mu(k), inst.request(k).demand + 1e-9);
  }
  EXPECT_NEAR(r.duals.mu(0), 2.0, 1e-9);
  EXPECT_NEAR(r.duals.mu(1), 3.0, 1e-9);
}

TEST(AddColumn, CoefficientMapping) {
  // Path a-b-c (links 0, 1) with a 4-slot window starting at 5.
  const Instance inst = make_instance(tri(), 10, {{0, 2, 4}});
  RestrictedMaster rmp(inst);
  Configuration c{5, {lp(0, 0, 2, {0, 1}, 5, 4)}};
  rmp.add_column(c);
  const ConfigurationCoefficients coef = coefficients(rmp.items(), c);
  EXPECT_EQ(coef.requests, (std::vector<int>{0}));
  std::vector<std::pair<LinkId, int>> want;
  for (LinkId l : {0, 1}) {
    for (int s = 5; s <= 8; ++s) want.emplace_back(l, s);
  }
  EXPECT_EQ(coef.cells, want);
  const lp::Variable& z = rmp.model().variable(rmp.model().variables().back());
  EXPECT_EQ(z.column.size(), 1u + 8u);
  EXPECT_DOUBLE_EQ(z.objective, 0.0);
}

TEST(AddColumn, SharedLinkIsInvalid) {
  const Instance inst = make_instance(tri(), 4, {{0, 1, 1}, {0, 2, 1}});
  RestrictedMaster rmp(inst);
  EXPECT_THROW(rmp.add_column({1, {lp(0, 0, 1, {0}, 1, 1), lp(1, 0, 2, {0, 1}, 1, 1)}}),
               InvalidConfiguration);
}

TEST(AddColumn, DuplicateRequestIsInvalid) {
  const Instance inst = make_instance(tri(), 4, {{0, 2, 1}});
  RestrictedMaster rmp(inst);
  EXPECT_THROW(rmp.add_column({1, {lp(0, 0, 2, {2}, 1, 1), lp(0, 0, 2, {0, 1}, 1, 1)}}),
               InvalidConfiguration);
}

TEST(AddColumn, OtherInvariantBreaches) {
  const Instance inst = make_instance(tri(), 4, {{0, 2, 2}});
  RestrictedMaster rmp(inst);
  EXPECT_THROW(rmp.add_column({4, {lp(0, 0, 2, {2}, 4, 2)}}), InvalidConfiguration);  // window
  EXPECT_THROW(rmp.add_column({1, {lp(0, 0, 2, {2}, 2, 2)}}), InvalidConfiguration);  // slot
  EXPECT_THROW(rmp.add_column({1, {lp(0, 0, 2, {0}, 1, 2)}}), InvalidConfiguration);  // ends
  EXPECT_THROW(rmp.add_column({1, {lp(0, 0, 2, {2}, 1, 3)}}), InvalidConfiguration);  // width
}

TEST(Prune, UsedColumnRetained) {
  const Instance inst = make_instance(tri(), 2, {{0, 1, 2}});
  RestrictedMaster rmp(inst);
  rmp.add_column({1, {lp(0, 0, 1, {0}, 1, 2)}});
  const MasterLpResult r = rmp.solve_lp_and_prune();
  EXPECT_NEAR(r.value, 2.0, 1e-9);
  EXPECT_EQ(rmp.column_count(), 1);
}

TEST(Prune, AtMostOneTwinSurvives) {
  const Instance inst = make_instance(tri(), 2, {{0, 1, 2}});
  RestrictedMaster rmp(inst);
  rmp.add_column({1, {lp(0, 0, 1, {0}, 1, 2)}});
  rmp.add_column({1, {lp(0, 0, 1, {0}, 1, 2)}});
  const MasterLpResult r = rmp.solve_lp_and_prune();
  EXPECT_NEAR(r.value, 2.0, 1e-9);
  EXPECT_LE(rmp.column_count(), 2);
  int positive = 0;
  for (const auto& c : rmp.columns()) positive += !c.lightpaths.empty();
  EXPECT_GE(positive, 1);
}

TEST(Prune, ResolveAfterPruningKeepsValue) {
  std::mt19937_64 rng(4);
  const Instance inst = make_instance(tri(), 3, {{0, 1, 1}, {1, 2, 1}, {0, 2, 2}});
  RestrictedMaster rmp(inst);
  // Several overlapping columns, some of which must leave the basis.
  rmp.add_column({1, {lp(0, 0, 1, {0}, 1, 1), lp(1, 1, 2, {1}, 1, 1)}});
  rmp.add_column({1, {lp(2, 0, 2, {2}, 1, 2)}});
  rmp.add_column({2, {lp(2, 0, 2, {0, 1}, 2, 2)}});
  rmp.add_column({3, {lp(0, 0, 1, {2, 1}, 3, 1)}});
  const MasterLpResult r = rmp.solve_lp_and_prune();
  EXPECT_NEAR(r.value, r.value_after_prune, 1e-9);
  EXPECT_NEAR(rmp.solve_lp_and_prune().value, r.value_after_prune, 1e-9);
  EXPECT_NEAR(r.value, 4.0, 1e-9);
}

TEST(FinalIlp, SingleColumnCoversEverything) {
  const Instance inst = make_instance(tri(), 3, {{0, 1, 2}, {1, 2, 3}});
  RestrictedMaster rmp(inst);
  rmp.add_column({1, {lp(0, 0, 1, {0}, 1, 2), lp(1, 1, 2, {1}, 1, 3)}});
  rmp.solve_lp_and_prune();
  const MasterIlpResult r = rmp.solve_final_ilp(0.0);
  EXPECT_NEAR(r.value, 5.0, 1e-9);
  ASSERT_EQ(r.selected.size(), 1u);
}

TEST(FinalIlp, ConflictingColumnsPickTheHeavierOne) {
  // Two columns overlapping on link 0 slot 1: one worth 8, one worth 4.
  const Instance inst = make_instance(make_topology(2, {{0, 1}}), 8, {{0, 1, 8}, {0, 1, 4}});
  RestrictedMaster rmp(inst);
  rmp.add_column({1, {lp(0, 0, 1, {0}, 1, 8)}});
  rmp.add_column({1, {lp(1, 0, 1, {0}, 1, 4)}});
  rmp.solve_lp_and_prune();
  const MasterIlpResult r = rmp.solve_final_ilp(0.0);
  EXPECT_NEAR(r.value, 8.0, 1e-9);
  ASSERT_EQ(r.selected.size(), 1u);
  EXPECT_EQ(r.selected[0].lightpaths[0].item, 0);
}

TEST(FinalIlp, GapContract) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const Instance inst = testing::random_tiny_instance(rng);
    RestrictedMaster rmp(inst);
    // Every single-lightpath column on every slot, via the oracle's path list.
    for (const Request& r : inst.requests()) {
      for (const Path& p : enumerate_simple_paths(inst.topology(), r.source, r.dest, 5)) {
        for (int s = 1; s + r.demand - 1 <= inst.spectrum_slots(); ++s) {
          rmp.add_column({s, {Lightpath{r.id, p, s, r.demand}}});
        }
      }
    }
    const double lp_value = rmp.solve_lp_and_prune().value;
    const MasterIlpResult ilp = rmp.solve_final_ilp(0.1);
    EXPECT_LE(ilp.gap, 0.1 + 1e-9);
    EXPECT_LE(ilp.value, lp_value + 1e-6);
  }
}

TEST(PostProcess, KeepsShortestDuplicate) {
  // Request 0 appears with a 2-hop and a 1-hop path in disjoint windows.
  const Instance inst = make_instance(tri(), 4, {{0, 2, 2}});
  const auto items = singleton_items(inst);
  const std::vector<Configuration> sel{{1, {lp(0, 0, 2, {0, 1}, 1, 2)}},
                                       {3, {lp(0, 0, 2, {2}, 3, 2)}}};
  const ProvisioningPlan plan = post_process(inst, items, sel);
  ASSERT_EQ(plan.lightpaths.size(), 1u);
  EXPECT_EQ(plan.lightpaths[0].path.links, (std::vector<LinkId>{2}));
  EXPECT_EQ(plan.served_slots, 2);
}

TEST(PostProcess, TwoAndThreeHopsKeepTwo) {
  // Square a-b-c-d-a plus a-c: links 0 a-b, 1 b-c, 2 c-d, 3 d-a, 4 a-c.
  const Instance inst =
      make_instance(make_topology(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}}), 4, {{0, 3, 1}});
  const auto items = singleton_items(inst);
  const std::vector<Configuration> sel{{1, {lp(0, 0, 3, {0, 1, 2}, 1, 1)}},
                                       {2, {lp(0, 0, 3, {4, 2}, 2, 1)}}};
  const ProvisioningPlan plan = post_process(inst, items, sel);
  ASSERT_EQ(plan.lightpaths.size(), 1u);
  EXPECT_EQ(plan.lightpaths[0].path.hops(), 2);
}

TEST(PostProcess, UnionWithoutDuplicates) {
  const Instance inst = make_instance(tri(), 4, {{0, 1, 1}, {1, 2, 2}});
  const auto items = singleton_items(inst);
  const std::vector<Configuration> sel{{1, {lp(0, 0, 1, {0}, 1, 1)}},
                                       {2, {lp(1, 1, 2, {1}, 2, 2)}}};
  const ProvisioningPlan plan = post_process(inst, items, sel);
  EXPECT_EQ(plan.lightpaths.size(), 2u);
  EXPECT_EQ(plan.served_slots, 3);
  EXPECT_TRUE(scan_plan(inst, plan).ok());
}

TEST(PostProcess, ConflictIsDetected) {
  const Instance inst = make_instance(tri(), 4, {{0, 1, 2}, {0, 1, 2}});
  const auto items = singleton_items(inst);
  const std::vector<Configuration> sel{{1, {lp(0, 0, 1, {0}, 1, 2)}},
                                       {2, {lp(1, 0, 1, {0}, 2, 2)}}};
  EXPECT_THROW(post_process(inst, items, sel), ConflictDetected);
}

}  // namespace
}  // namespace ncg
