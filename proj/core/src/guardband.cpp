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

#include "ncg/guardband.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>

#include "ncg/error.hpp"

namespace ncg {

int composite_demand(std::span<const int> member_demands, GuardBandRule rule) {
  int sum = 0;
  for (int d : member_demands) sum += d;
  if (rule == GuardBandRule::kSharedGuardBand && !member_demands.empty()) {
    sum -= static_cast<int>(member_demands.size()) - 1;
  }
  return sum;
}

namespace {

std::pair<NodeId, NodeId> pair_key(const Request& r) {
  return {std::min(r.source, r.dest), std::max(r.source, r.dest)};
}

void grow(const std::vector<Request>& atomics, const GuardBandOptions& options,
          std::size_t next, std::vector<int>& chosen, std::vector<DerivedRequest>& out) {
  for (std::size_t i = next; i < atomics.size(); ++i) {
    chosen.push_back(static_cast<int>(i));
    DerivedRequest d;
    d.source = atomics.front().source;
    d.dest = atomics.front().dest;
    std::vector<int> demands;
    for (int c : chosen) {
      d.members.push_back(atomics[c].id);
      demands.push_back(atomics[c].demand);
    }
    std::sort(d.members.begin(), d.members.end());
    d.demand = composite_demand(demands, options.rule);
    out.push_back(std::move(d));
    if (options.max_members <= 0 || static_cast<int>(chosen.size()) < options.max_members) {
      grow(atomics, options, i + 1, chosen, out);
    }
    chosen.pop_back();
  }
}

}  // namespace

std::vector<DerivedRequest> enumerate_derived(const std::vector<Request>& atomics,
                                              const GuardBandOptions& options) {
  if (static_cast<int>(atomics.size()) > options.cap) {
    throw CapExceeded(std::to_string(atomics.size()) +
                      " requests on one node pair exceed the cap of " +
                      std::to_string(options.cap));
  }
  for (const Request& r : atomics) {
    if (pair_key(r) != pair_key(atomics.front())) {
      throw InvariantViolation("derived requests need a common node pair");
    }
  }
  std::vector<DerivedRequest> out;
  if (atomics.empty()) return out;
  out.reserve((std::size_t{1} << atomics.size()) - 1);
  std::vector<int> chosen;
  grow(atomics, options, 0, chosen, out);
  return out;
}

std::vector<DemandItem> derived_items(const Instance& instance,
                                      const GuardBandOptions& options) {
  std::vector<std::pair<NodeId, NodeId>> order;
  std::map<std::pair<NodeId, NodeId>, std::vector<Request>> groups;
  for (const Request& r : instance.requests()) {
    auto [it, fresh] = groups.try_emplace(pair_key(r));
    if (fresh) order.push_back(pair_key(r));
    it->second.push_back(r);
  }
  std::vector<DemandItem> items;
  for (const auto& key : order) {
    for (DerivedRequest& d : enumerate_derived(groups[key], options)) {
      items.push_back(DemandItem{static_cast<int>(items.size()), d.source, d.dest, d.demand,
                                 std::move(d.members)});
    }
  }
  return items;
}

RestrictedMaster build_extended_rmp(const Instance& instance,
                                    const GuardBandOptions& options,
                                    std::unique_ptr<lp::Backend> backend) {
  return RestrictedMaster(instance, derived_items(instance, options), std::move(backend));
}

}  // namespace ncg
