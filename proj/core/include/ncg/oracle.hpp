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

// Exhaustive search for tiny instances. Deliberately naive: it shares no
// code with the column generation path beyond the data types.

#pragma once

#include <vector>

#include "ncg/instance.hpp"
#include "ncg/master.hpp"
#include "ncg/topology.hpp"

namespace ncg {

struct OracleLimits {
  int max_nodes = 6;
  int max_requests = 5;
  int max_spectrum = 10;
  int max_hops = 5;
};

struct OracleResult {
  long long optimum = 0;  // slots
  ProvisioningPlan plan;
  long long nodes = 0;    // search nodes visited
};

// Every simple path from source to dest with at most max_hops links, in
// lexicographic order of link ids.
std::vector<Path> enumerate_simple_paths(const Topology& topology, NodeId source,
                                         NodeId dest, int max_hops);

// Maximum served demand over all feasible assignments. Throws LimitsExceeded.
OracleResult oracle_solve(const Instance& instance, const OracleLimits& limits = {});
// Same over demand items: chosen items must have disjoint member sets; an
// item serves all its members.
OracleResult oracle_solve(const Instance& instance, const std::vector<DemandItem>& items,
                          const OracleLimits& limits = {});

// Best master reduced cost over every configuration starting at `slot`,
// with clamped duals. Zero when nothing beats the empty configuration.
double oracle_max_reduced_cost(const Instance& instance, int slot,
                               const MasterDuals& duals, const OracleLimits& limits = {});
double oracle_max_reduced_cost(const Instance& instance,
                               const std::vector<DemandItem>& items, int slot,
                               const MasterDuals& duals, const OracleLimits& limits = {});

struct PlanScan {
  int conflicts = 0;           // (link, slot) cells used twice
  int window_violations = 0;   // windows leaving 1..|S|
  int path_violations = 0;     // path not simple or not joining the endpoints
  int width_violations = 0;    // slice narrower than its requests need
  int duplicate_requests = 0;  // request served more than once
  long long served_slots = 0;  // recomputed from the instance

  bool ok() const {
    return conflicts == 0 && window_violations == 0 && path_violations == 0 &&
           width_violations == 0 && duplicate_requests == 0;
  }
};

// Independent feasibility check of a plan against its instance.
PlanScan scan_plan(const Instance& instance, const ProvisioningPlan& plan);

}  // namespace ncg
