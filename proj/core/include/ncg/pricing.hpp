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

// Configuration pricing for one starting slot s. The pricing problem picks
// link-disjoint paths for distinct items to maximize
//
//   sum_i sum_p (mu_i - sum_{l in p} sum_{s' in window_i} mu_{l,s'}) beta_p
//
// and is itself solved by column generation over paths; a path column is
// priced by a shortest-path query with non-negative link weights.

#pragma once

#include <optional>
#include <vector>

#include "ncg/instance.hpp"
#include "ncg/master.hpp"
#include "ncg/topology.hpp"

namespace ncg {

inline constexpr double kImprovementTolerance = 1e-6;

inline double clamp_dual(double v) { return v > 0.0 ? v : 0.0; }

// Duals of the inner rows: one per request (at most one path per request)
// and one per link (at most one path per link).
struct PricingDuals {
  std::vector<double> request;
  std::vector<double> link;

  static PricingDuals zero(const Instance& instance);
};

struct PricingOptions {
  double tolerance = kImprovementTolerance;
  bool clamp_duals = true;
  double tie_tolerance = 1e-6;
  int max_inner_iterations = 10000;
  // Master duals are rounded to multiples of this before pricing, so that
  // noise far below the improvement tolerance cannot flip ties between
  // equally good configurations. 0 disables.
  double dual_grid = 1e-8;
};

// Copy of `duals` rounded to the nearest multiple of `grid` (grid > 0).
MasterDuals snap_duals(const MasterDuals& duals, double grid);

struct PricingResult {
  int slot = 1;
  std::optional<Configuration> configuration;
  double rc_ilp = 0.0;
  double rc_lp_star = 0.0;
  bool converged = true;
  int inner_iterations = 0;
  int paths_generated = 0;
};

struct GeneratedLightpath {
  Path path;
  double reduced_cost = 0.0;
};

// Requests whose window starting at s fits the spectrum.
std::vector<int> eligible_requests(const Instance& instance, int slot);
std::vector<int> eligible_items(const Instance& instance,
                                const std::vector<DemandItem>& items, int slot);

// mu_i - nu_i for an item, summed over its member requests.
double item_price(const DemandItem& item, const MasterDuals& master,
                  const PricingDuals& inner, bool clamp = true);

// Link weights for the generator: sum of window duals plus the link dual.
std::vector<double> lightpath_weights(const Topology& topology, int width, int slot,
                                      const MasterDuals& master,
                                      const PricingDuals& inner, bool clamp = true);

double path_reduced_cost(const DemandItem& item, const Path& path, int slot,
                         const MasterDuals& master, const PricingDuals& inner,
                         bool clamp = true);

// Cheapest path for the item at slot s; returned only when its reduced cost
// exceeds the tolerance.
std::optional<GeneratedLightpath> generate_lightpath(
    const Topology& topology, const DemandItem& item, int slot,
    const MasterDuals& master, const PricingDuals& inner,
    const PricingOptions& options = {});

PricingResult price_slot(const Instance& instance, const std::vector<DemandItem>& items,
                         int slot, const MasterDuals& master,
                         const PricingOptions& options = {});
PricingResult price_slot(const Instance& instance, int slot, const MasterDuals& master,
                         const PricingOptions& options = {});

// Master reduced cost of a configuration under (clamped) duals:
// sum_k mu_k a_k - sum_{l,s} mu_{l,s} b_{l,s}.
double configuration_reduced_cost(const std::vector<DemandItem>& items,
                                  const Configuration& config,
                                  const MasterDuals& master, bool clamp = true);

}  // namespace ncg
