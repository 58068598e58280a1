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

#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "ncg/topology.hpp"

namespace ncg {

inline constexpr double kDefaultSlotRateGbps = 25.0;

// A traffic request asking for `demand` contiguous slots between two nodes.
struct Request {
  int id = 0;
  NodeId source = 0;
  NodeId dest = 0;
  int demand = 1;
  // Original request ids folded into this one by aggregation; empty for
  // requests read straight from an instance.
  std::vector<int> members;

  bool operator==(const Request&) const = default;
};

// Immutable RSA input: a topology, a spectrum of `spectrum_slots` slots
// (indexed 1..|S|) and the requests.
class Instance {
 public:
  Instance() = default;
  // Validates every request against the topology (UnknownNode) and the
  // request invariants (InvariantViolation). Request ids are rewritten to
  // their position.
  Instance(std::shared_ptr<const Topology> topology, int spectrum_slots,
           std::vector<Request> requests,
           double slot_rate_gbps = kDefaultSlotRateGbps, std::string name = {});

  const Topology& topology() const { return *topology_; }
  const std::shared_ptr<const Topology>& topology_ptr() const {
    return topology_;
  }
  int spectrum_slots() const { return spectrum_slots_; }
  double slot_rate_gbps() const { return slot_rate_gbps_; }
  const std::vector<Request>& requests() const { return requests_; }
  const Request& request(int id) const { return requests_.at(id); }
  int request_count() const { return static_cast<int>(requests_.size()); }
  const std::string& name() const { return name_; }

  long long total_demand_slots() const;
  double offered_load_gbps() const {
    return slot_rate_gbps_ * static_cast<double>(total_demand_slots());
  }

  // Same instance with requests merged per node pair.
  Instance aggregated() const;
  Instance with_name(std::string name) const;

  bool operator==(const Instance& other) const;

 private:
  std::shared_ptr<const Topology> topology_ = std::make_shared<Topology>();
  int spectrum_slots_ = 1;
  double slot_rate_gbps_ = kDefaultSlotRateGbps;
  std::vector<Request> requests_;
  std::string name_;
};

// One request per unordered node pair with the summed demand; `members`
// records the ids of the merged inputs. Output is ordered by first
// appearance of the pair.
std::vector<Request> aggregate_per_node_pair(const std::vector<Request>& requests);

// Seeded traffic in the style of the INOC'18 dataset: demands of 4/8/16
// slots drawn with probabilities 0.7/0.2/0.1, assigned round-robin over a
// seeded shuffle of all node pairs until the offered load first reaches or
// exceeds the target. Requests are not aggregated.
Instance generate_inoc_style(std::shared_ptr<const Topology> topology,
                             double target_load_gbps, std::uint64_t seed,
                             int spectrum_slots,
                             double slot_rate_gbps = kDefaultSlotRateGbps);

// Demand drawn from {4, 8, 16} with probabilities {0.7, 0.2, 0.1}; exposed
// for the frequency check in the tests.
class DemandSampler {
 public:
  explicit DemandSampler(std::uint64_t seed);
  int next();
  // Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  double unit();

 private:
  std::mt19937_64 engine_;
};

// Instance file (JSON):
//   {"name": "...", "topology_id": "spain21" | "topology": {...},
//    "spectrum_slots": N, "slot_rate_gbps": 25,
//    "requests": [{"src": "A", "dst": "B", "demand_slots": 4}, ...]}
Instance load_instance(std::string_view json_text);
Instance load_instance_file(const std::string& path);
std::string save_instance(const Instance& instance);

}  // namespace ncg
