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

// Guard-band extension. Requests sharing a node pair may be carried by one
// lightpath over a single contiguous slice; every non-empty subset of a
// pair's requests becomes a derived demand item, and the master credits
// request k whenever any configuration serves an item containing k.

#pragma once

#include <memory>
#include <span>
#include <vector>

#include "ncg/instance.hpp"
#include "ncg/lp.hpp"
#include "ncg/master.hpp"

namespace ncg {

enum class GuardBandRule {
  // Members pay their own demand minus one guard-band slot each beyond the
  // first: sum(D) - (m - 1).
  kSharedGuardBand,
  // Plain sum of member demands.
  kNone,
};

struct GuardBandOptions {
  int cap = 12;  // maximum requests per node pair
  GuardBandRule rule = GuardBandRule::kSharedGuardBand;
  int max_members = 0;  // 0 = any subset size
};

// Width of a slice carrying all the given demands.
int composite_demand(std::span<const int> member_demands, GuardBandRule rule);

struct DerivedRequest {
  NodeId source = 0;
  NodeId dest = 0;
  std::vector<int> members;  // request ids, ascending
  int demand = 0;

  bool operator==(const DerivedRequest&) const = default;
};

// All non-empty subsets of `atomics` (requests of one node pair) in
// binomial-tree pre-order: {1}, {1,2}, {1,2,3}, {1,3}, {2}, {2,3}, {3}.
// Throws CapExceeded when there are more than options.cap requests and
// InvariantViolation when the requests do not share a node pair.
std::vector<DerivedRequest> enumerate_derived(const std::vector<Request>& atomics,
                                              const GuardBandOptions& options = {});

// Derived items of every node pair, pairs in order of first appearance.
std::vector<DemandItem> derived_items(const Instance& instance,
                                      const GuardBandOptions& options = {});

RestrictedMaster build_extended_rmp(const Instance& instance,
                                    const GuardBandOptions& options = {},
                                    std::unique_ptr<lp::Backend> backend = nullptr);

}  // namespace ncg
