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

// Nested column generation: the outer loop alternates master LP solves with
// per-slot pricing until no slot yields an improving configuration, checks
// the pricing LP bounds, then solves the master as an ILP.

#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ncg/guardband.hpp"
#include "ncg/instance.hpp"
#include "ncg/master.hpp"
#include "ncg/pricing.hpp"

namespace ncg {

struct SolveConfig {
  double final_ilp_relative_gap = 0.1;
  double tolerance = kImprovementTolerance;
  bool clamp_duals = true;
  double time_limit_seconds = 0.0;  // 0 = unlimited
  bool parallel_pricing = false;
  int threads = 0;  // 0 = hardware concurrency
  // Sequential slot order and single-threaded pricing.
  bool deterministic = false;
  // Price with the guard-band items instead of one item per request.
  bool guardband = false;
  GuardBandOptions guardband_options;
  double tie_tolerance = 1e-6;
  double dual_grid = 1e-8;  // see PricingOptions

  void validate() const;
};

struct Timings {
  double lp_phase = 0.0;
  double ilp_phase = 0.0;
  double total = 0.0;
};

struct SolveReport {
  std::string instance_name;
  int spectrum_slots = 0;
  int requests = 0;
  double offered_load_gbps = 0.0;
  double slot_rate_gbps = kDefaultSlotRateGbps;

  double z_lp_star = 0.0;    // slots
  double z_ilp_tilde = 0.0;  // slots
  double ilp_gap = 0.0;      // proven relative gap of the final ILP
  double epsilon_lp = 0.0;   // (z_LP - z_ILP) / z_LP
  std::optional<double> epsilon_tab;  // (z_LP - z_ILP) / z_ILP; none when z_ILP = 0
  double gos_percent = 100.0;
  bool certified = false;
  bool timed_out = false;
  int columns_generated = 0;
  int columns_final = 0;
  int outer_iterations = 0;
  Timings timings;

  // LP value of each outer iteration, before and after pruning.
  std::vector<double> lp_trace;
  std::vector<double> lp_trace_after_prune;
  std::vector<double> final_rc_lp_star;  // per slot, last outer iteration

  double z_lp_star_tbps() const { return z_lp_star * slot_rate_gbps / 1000.0; }
  double z_ilp_tilde_tbps() const { return z_ilp_tilde * slot_rate_gbps / 1000.0; }
  double offered_load_tbps() const { return offered_load_gbps / 1000.0; }
};

struct SolveOutcome {
  SolveReport report;
  ProvisioningPlan plan;
};

// Optional observer of every snapshot handed to pricing; used by tests.
using DualsObserver = std::function<void(int outer_iteration, const MasterDuals&)>;

SolveOutcome solve(const Instance& instance, const SolveConfig& config = {},
                   const DualsObserver& observer = {});

// True when every slot's pricing LP bound is within tolerance of zero.
bool certify(const std::vector<PricingResult>& final_iteration,
             double tolerance = kImprovementTolerance);

struct Metrics {
  double epsilon_lp = 0.0;
  std::optional<double> epsilon_tab;
  double gos_percent = 100.0;
};

// Percentages. Any consistent unit works (slots, Gbps, Tbps).
Metrics report_metrics(double z_lp_star, double z_ilp_tilde, double offered_load);

// Round half away from zero to one decimal, for display.
double round1(double value);

}  // namespace ncg
