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

#include "ncg/driver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "ncg/error.hpp"
#include "ncg/guardband.hpp"

namespace ncg {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

std::vector<PricingResult> price_all_slots(const Instance& instance,
                                           const std::vector<DemandItem>& items,
                                           const MasterDuals& duals,
                                           const PricingOptions& options, int workers) {
  const int slots = instance.spectrum_slots();
  std::vector<PricingResult> results(slots);
  if (workers <= 1) {
    for (int s = 1; s <= slots; ++s) results[s - 1] = price_slot(instance, items, s, duals, options);
    return results;
  }
  std::atomic<int> next{1};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (int s = next++; s <= slots; s = next++) {
          results[s - 1] = price_slot(instance, items, s, duals, options);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;  // indexed by slot, independent of scheduling
}

}  // namespace

void SolveConfig::validate() const {
  if (!(final_ilp_relative_gap >= 0.0 && final_ilp_relative_gap < 1.0)) {
    throw InvariantViolation("relative gap must lie in [0, 1)");
  }
  if (!(tolerance > 0.0)) throw InvariantViolation("tolerance must be positive");
  if (time_limit_seconds < 0.0) throw InvariantViolation("negative time limit");
  if (!(dual_grid >= 0.0 && dual_grid < tolerance)) {
    throw InvariantViolation("dual grid must lie in [0, tolerance)");
  }
}

bool certify(const std::vector<PricingResult>& final_iteration, double tolerance) {
  return std::all_of(final_iteration.begin(), final_iteration.end(),
                     [&](const PricingResult& r) { return r.rc_lp_star <= tolerance; });
}

Metrics report_metrics(double z_lp_star, double z_ilp_tilde, double offered_load) {
  Metrics m;
  if (z_lp_star > 0.0) {
    m.epsilon_lp = 100.0 * (z_lp_star - z_ilp_tilde) / z_lp_star;
    if (z_ilp_tilde > 0.0) m.epsilon_tab = 100.0 * (z_lp_star - z_ilp_tilde) / z_ilp_tilde;
  } else {
    m.epsilon_tab = 0.0;
  }
  m.gos_percent = offered_load > 0.0 ? 100.0 * z_ilp_tilde / offered_load : 100.0;
  return m;
}

double round1(double value) { return std::round(value * 10.0) / 10.0; }

SolveOutcome solve(const Instance& instance, const SolveConfig& config,
                   const DualsObserver& observer) {
  config.validate();
  const auto started = Clock::now();
  auto out_of_time = [&] {
    return config.time_limit_seconds > 0.0 && seconds_since(started) >= config.time_limit_seconds;
  };

  std::vector<DemandItem> items = config.guardband
                                      ? derived_items(instance, config.guardband_options)
                                      : singleton_items(instance);
  RestrictedMaster rmp(instance, items);

  PricingOptions popt;
  popt.tolerance = config.tolerance;
  popt.clamp_duals = config.clamp_duals;
  popt.tie_tolerance = config.tie_tolerance;
  popt.dual_grid = config.dual_grid;
  int workers = 1;
  if (config.parallel_pricing && !config.deterministic) {
    workers = config.threads > 0 ? config.threads
                                 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = std::min(workers, std::max(1, instance.spectrum_slots()));
  }

  SolveOutcome out;
  SolveReport& rep = out.report;
  rep.instance_name = instance.name();
  rep.spectrum_slots = instance.spectrum_slots();
  rep.requests = instance.request_count();
  rep.offered_load_gbps = instance.offered_load_gbps();
  rep.slot_rate_gbps = instance.slot_rate_gbps();

  std::vector<PricingResult> last;
  bool stalled = false;  // pricing did not converge somewhere
  while (true) {
    const MasterLpResult lp = rmp.solve_lp_and_prune();
    ++rep.outer_iterations;
    rep.lp_trace.push_back(lp.value);
    rep.lp_trace_after_prune.push_back(lp.value_after_prune);
    rep.z_lp_star = lp.value_after_prune + 0.0;  // no -0 in reports
    // Checked after the LP so that z_LP* always covers the final columns.
    if (out_of_time()) {
      rep.timed_out = true;
      break;
    }
    if (observer) observer(rep.outer_iterations, lp.duals);

    last = price_all_slots(instance, items, lp.duals, popt, workers);
    int added = 0;
    for (PricingResult& r : last) {
      if (!r.converged) stalled = true;
      if (r.configuration && r.rc_ilp > config.tolerance) {
        rmp.add_column(std::move(*r.configuration));
        r.configuration.reset();
        ++added;
      }
    }
    rep.columns_generated += added;
    if (added == 0) break;
  }
  rep.final_rc_lp_star.reserve(last.size());
  for (const PricingResult& r : last) rep.final_rc_lp_star.push_back(r.rc_lp_star);
  rep.certified = !rep.timed_out && !stalled && certify(last, config.tolerance);
  rep.columns_final = rmp.column_count();
  rep.timings.lp_phase = seconds_since(started);

  const auto ilp_started = Clock::now();
  double remaining = 0.0;
  if (config.time_limit_seconds > 0.0) {
    remaining = std::max(1e-3, config.time_limit_seconds - seconds_since(started));
  }
  const MasterIlpResult ilp = rmp.solve_final_ilp(config.final_ilp_relative_gap, remaining);
  rep.z_ilp_tilde = std::round(ilp.value) + 0.0;
  rep.ilp_gap = ilp.gap;
  if (ilp.status == lp::Status::kLimitReached) rep.timed_out = true;
  out.plan = post_process(instance, rmp.items(), ilp.selected);
  if (static_cast<double>(out.plan.served_slots) != rep.z_ilp_tilde) {
    throw InvariantViolation("plan serves " + std::to_string(out.plan.served_slots) +
                             " slots but the ILP reports " + std::to_string(ilp.value));
  }
  rep.timings.ilp_phase = seconds_since(ilp_started);
  rep.timings.total = seconds_since(started);

  const Metrics m = report_metrics(rep.z_lp_star, rep.z_ilp_tilde,
                                   static_cast<double>(instance.total_demand_slots()));
  rep.epsilon_lp = m.epsilon_lp;
  rep.epsilon_tab = m.epsilon_tab;
  rep.gos_percent = m.gos_percent;
  return out;
}

}  // namespace ncg
