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

// Restricted master over configuration columns:
//
//   max  sum_k D_k y_k
//   s.t. y_k - sum_c a_k^c z_c <= 0            for every request k
//        sum_c b_{l,s}^c z_c   <= 1            for every link l, slot s
//        0 <= y_k <= 1,  z_c >= 0 (binary in the final ILP)
//
// A configuration is a set of link-disjoint lightpaths that all start at
// the same slot. Lightpaths serve demand items; in the base model every item
// is one request, with the guard-band extension an item may bundle several
// requests of one node pair into a single contiguous slice.

#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "ncg/instance.hpp"
#include "ncg/lp.hpp"
#include "ncg/topology.hpp"

namespace ncg {

// Something a lightpath can carry: one request, or a bundle of requests of
// the same node pair sharing one slice.
struct DemandItem {
  int id = 0;
  NodeId source = 0;
  NodeId dest = 0;
  int demand = 1;            // slice width in slots
  std::vector<int> members;  // request ids, ascending

  bool operator==(const DemandItem&) const = default;
};

// One item per request.
std::vector<DemandItem> singleton_items(const Instance& instance);

struct Lightpath {
  int item = 0;
  Path path;
  int start_slot = 1;  // 1-based
  int width = 1;

  int last_slot() const { return start_slot + width - 1; }
  bool operator==(const Lightpath&) const = default;
};

struct Configuration {
  int start_slot = 1;
  std::vector<Lightpath> lightpaths;

  bool operator==(const Configuration&) const = default;
};

// Coefficients of a column, derived from its lightpaths.
struct ConfigurationCoefficients {
  std::vector<int> requests;  // a_k^c = 1, ascending
  std::vector<std::pair<LinkId, int>> cells;  // b_{l,s}^c = 1, sorted
};

// Throws InvalidConfiguration when any lightpath mismatches its item, leaves
// the spectrum, starts elsewhere, or when lightpaths share a link or a
// request.
void validate_configuration(const Instance& instance,
                            const std::vector<DemandItem>& items,
                            const Configuration& config);
ConfigurationCoefficients coefficients(const std::vector<DemandItem>& items,
                                       const Configuration& config);

// Duals of the master rows, unclamped.
struct MasterDuals {
  int spectrum_slots = 0;
  std::vector<double> request;    // per request
  std::vector<double> link_slot;  // link * |S| + (slot - 1)

  double mu(int request_id) const { return request[request_id]; }
  double mu(LinkId link, int slot) const {
    return link_slot[static_cast<std::size_t>(link) * spectrum_slots + slot - 1];
  }
  static MasterDuals zero(const Instance& instance);
};

struct MasterLpResult {
  double value = 0.0;
  double value_after_prune = 0.0;
  int pruned = 0;
  int iterations = 0;
  MasterDuals duals;
};

struct MasterIlpResult {
  lp::Status status = lp::Status::kOptimal;
  double value = 0.0;
  double best_bound = 0.0;
  double gap = 0.0;
  long long nodes = 0;
  std::vector<Configuration> selected;
};

class RestrictedMaster {
 public:
  explicit RestrictedMaster(Instance instance,
                            std::unique_ptr<lp::Backend> backend = nullptr);
  RestrictedMaster(Instance instance, std::vector<DemandItem> items,
                   std::unique_ptr<lp::Backend> backend = nullptr);

  const Instance& instance() const { return instance_; }
  const std::vector<DemandItem>& items() const { return items_; }
  const lp::Model& model() const { return model_; }
  int column_count() const { return static_cast<int>(columns_.size()); }
  std::vector<Configuration> columns() const;
  int request_row_count() const { return static_cast<int>(y_.size()); }
  int link_slot_row_count() const;

  // Returns a stable column serial. Throws InvalidConfiguration.
  int add_column(Configuration config);

  // Solves the LP, drops every column that is nonbasic at zero, and re-solves
  // to confirm the value is unchanged. Throws NumericalFailure if the backend
  // fails even from a cold start.
  MasterLpResult solve_lp_and_prune();

  // z_c binary. Checks that every y_k of the incumbent is integral.
  MasterIlpResult solve_final_ilp(double relative_gap, double time_limit_seconds = 0.0);

 private:
  struct Column {
    int serial = 0;
    lp::VarId var;
    Configuration config;
  };

  lp::LpSolution solve_with_retry();

  Instance instance_;
  std::vector<DemandItem> items_;
  std::unique_ptr<lp::Backend> backend_;
  lp::Model model_;
  std::vector<lp::VarId> y_;
  std::vector<lp::RowId> request_rows_;
  std::vector<lp::RowId> cell_rows_;  // link * |S| + slot - 1
  std::vector<Column> columns_;
  int next_serial_ = 0;
};

struct PlannedLightpath {
  std::vector<int> requests;  // served request ids, ascending
  int item = 0;
  Path path;
  int start_slot = 1;
  int width = 1;

  bool operator==(const PlannedLightpath&) const = default;
};

struct ProvisioningPlan {
  std::vector<PlannedLightpath> lightpaths;  // ordered by first request id
  long long served_slots = 0;                // sum of D_k over served requests
  double slot_rate_gbps = kDefaultSlotRateGbps;

  double throughput_gbps() const { return served_slots * slot_rate_gbps; }
  double throughput_tbps() const { return throughput_gbps() / 1000.0; }
};

// Keeps one lightpath per request: shortest path first, then smallest
// starting slot, then lexicographic link ids. Throws ConflictDetected if the
// selected configurations overlap on a (link, slot) cell.
ProvisioningPlan post_process(const Instance& instance,
                              const std::vector<DemandItem>& items,
                              const std::vector<Configuration>& selected);

}  // namespace ncg
