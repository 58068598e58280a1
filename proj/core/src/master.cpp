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

#include "ncg/master.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "ncg/error.hpp"

namespace ncg {

std::vector<DemandItem> singleton_items(const Instance& instance) {
  std::vector<DemandItem> items;
  items.reserve(instance.request_count());
  for (const Request& r : instance.requests()) {
    items.push_back(DemandItem{r.id, r.source, r.dest, r.demand, {r.id}});
  }
  return items;
}

void validate_configuration(const Instance& instance,
                            const std::vector<DemandItem>& items,
                            const Configuration& config) {
  auto fail = [](const std::string& what) { throw InvalidConfiguration(what); };
  const Topology& topo = instance.topology();
  const int slots = instance.spectrum_slots();
  if (config.start_slot < 1 || config.start_slot > slots) {
    fail("starting slot " + std::to_string(config.start_slot) + " outside 1.." +
         std::to_string(slots));
  }
  std::vector<char> link_used(topo.link_count(), 0);
  std::vector<char> request_used(instance.request_count(), 0);
  std::vector<char> item_used(items.size(), 0);
  for (const Lightpath& lp : config.lightpaths) {
    if (lp.item < 0 || lp.item >= static_cast<int>(items.size())) {
      fail("unknown demand item " + std::to_string(lp.item));
    }
    const DemandItem& item = items[lp.item];
    if (lp.start_slot != config.start_slot) fail("lightpath starts at a different slot");
    if (lp.width != item.demand) fail("lightpath width differs from the item demand");
    if (lp.last_slot() > slots) fail("window leaves the spectrum");
    for (LinkId l : lp.path.links) {
      if (l < 0 || l >= topo.link_count()) fail("unknown link " + std::to_string(l));
    }
    if (lp.path.source != item.source || lp.path.dest != item.dest ||
        !is_simple_path(topo, lp.path)) {
      fail("path does not join the item endpoints");
    }
    if (item_used[lp.item]++) fail("item served twice");
    for (int k : item.members) {
      if (request_used[k]++) fail("request " + std::to_string(k) + " served twice");
    }
    for (LinkId l : lp.path.links) {
      if (link_used[l]++) fail("lightpaths share link " + std::to_string(l));
    }
  }
}

ConfigurationCoefficients coefficients(const std::vector<DemandItem>& items,
                                       const Configuration& config) {
  ConfigurationCoefficients out;
  for (const Lightpath& lp : config.lightpaths) {
    const DemandItem& item = items[lp.item];
    out.requests.insert(out.requests.end(), item.members.begin(), item.members.end());
    for (LinkId l : lp.path.links) {
      for (int s = lp.start_slot; s <= lp.last_slot(); ++s) out.cells.emplace_back(l, s);
    }
  }
  std::sort(out.requests.begin(), out.requests.end());
  std::sort(out.cells.begin(), out.cells.end());
  return out;
}

MasterDuals MasterDuals::zero(const Instance& instance) {
  MasterDuals d;
  d.spectrum_slots = instance.spectrum_slots();
  d.request.assign(instance.request_count(), 0.0);
  d.link_slot.assign(
      static_cast<std::size_t>(instance.topology().link_count()) * d.spectrum_slots, 0.0);
  return d;
}

RestrictedMaster::RestrictedMaster(Instance instance, std::unique_ptr<lp::Backend> backend)
    : RestrictedMaster(instance, singleton_items(instance), std::move(backend)) {}

RestrictedMaster::RestrictedMaster(Instance instance, std::vector<DemandItem> items,
                                   std::unique_ptr<lp::Backend> backend)
    : instance_(std::move(instance)),
      items_(std::move(items)),
      backend_(backend ? std::move(backend) : lp::make_default_backend()) {
  for (const Request& r : instance_.requests()) {
    const lp::VarId y = model_.add_variable(0.0, 1.0, r.demand, lp::VarType::kContinuous,
                                            "y_" + std::to_string(r.id));
    y_.push_back(y);
    request_rows_.push_back(model_.add_constraint({{y, 1.0}}, 0.0));
  }
  const int slots = instance_.spectrum_slots();
  for (LinkId l = 0; l < instance_.topology().link_count(); ++l) {
    for (int s = 1; s <= slots; ++s) {
      cell_rows_.push_back(model_.add_constraint(std::span<const lp::Term>{}, 1.0));
    }
  }
}

int RestrictedMaster::link_slot_row_count() const {
  return static_cast<int>(cell_rows_.size());
}

std::vector<Configuration> RestrictedMaster::columns() const {
  std::vector<Configuration> out;
  out.reserve(columns_.size());
  for (const Column& c : columns_) out.push_back(c.config);
  return out;
}

int RestrictedMaster::add_column(Configuration config) {
  validate_configuration(instance_, items_, config);
  const ConfigurationCoefficients coef = coefficients(items_, config);
  std::vector<lp::ColumnEntry> entries;
  entries.reserve(coef.requests.size() + coef.cells.size());
  for (int k : coef.requests) entries.push_back({request_rows_[k], -1.0});
  const int slots = instance_.spectrum_slots();
  for (const auto& [l, s] : coef.cells) {
    entries.push_back({cell_rows_[static_cast<std::size_t>(l) * slots + s - 1], 1.0});
  }
  const int serial = next_serial_++;
  // No explicit upper bound: the cell rows already imply z_c <= 1, and an
  // explicit bound would let the LP price a column at its bound as improving.
  const lp::VarId var = model_.add_column(0.0, lp::kInfinity, 0.0, entries,
                                          lp::VarType::kContinuous,
                                          "z_" + std::to_string(serial));
  columns_.push_back(Column{serial, var, std::move(config)});
  return serial;
}

lp::LpSolution RestrictedMaster::solve_with_retry() {
  lp::LpSolution sol = backend_->solve_lp(model_);
  if (sol.status != lp::Status::kOptimal) {
    backend_->set_use_previous_basis(false);
    sol = backend_->solve_lp(model_);
    backend_->set_use_previous_basis(true);
  }
  if (sol.status != lp::Status::kOptimal) {
    throw NumericalFailure(std::string("master LP: ") + lp::to_string(sol.status));
  }
  return sol;
}

MasterLpResult RestrictedMaster::solve_lp_and_prune() {
  MasterLpResult out;
  lp::LpSolution sol = solve_with_retry();
  out.value = sol.objective;
  out.iterations = sol.iterations;

  out.duals.spectrum_slots = instance_.spectrum_slots();
  out.duals.request.resize(request_rows_.size());
  for (std::size_t k = 0; k < request_rows_.size(); ++k) {
    out.duals.request[k] = sol.row_dual(request_rows_[k]);
  }
  out.duals.link_slot.resize(cell_rows_.size());
  for (std::size_t i = 0; i < cell_rows_.size(); ++i) {
    out.duals.link_slot[i] = sol.row_dual(cell_rows_[i]);
  }

  std::vector<lp::VarId> drop;
  std::vector<Column> kept;
  kept.reserve(columns_.size());
  for (Column& c : columns_) {
    if (!sol.is_basic(c.var) && std::abs(sol.value(c.var)) <= 1e-12) {
      drop.push_back(c.var);
    } else {
      kept.push_back(std::move(c));
    }
  }
  columns_ = std::move(kept);
  out.pruned = static_cast<int>(drop.size());
  if (!drop.empty()) {
    model_.remove_variables(drop);
    const lp::LpSolution again = solve_with_retry();
    out.value_after_prune = again.objective;
    out.iterations += again.iterations;
  } else {
    out.value_after_prune = out.value;
  }
  return out;
}

MasterIlpResult RestrictedMaster::solve_final_ilp(double relative_gap,
                                                  double time_limit_seconds) {
  for (const Column& c : columns_) {
    model_.set_bounds(c.var, 0.0, 1.0);
    model_.set_type(c.var, lp::VarType::kBinary);
  }
  backend_->set_use_previous_basis(false);
  lp::MipOptions options;
  options.relative_gap = relative_gap;
  // Every D_k is integral and y_k settles on 0/1 once z is integral.
  options.integral_objective = true;
  options.time_limit_seconds = time_limit_seconds;
  const lp::MipSolution mip = backend_->solve_mip(model_, options);

  MasterIlpResult out;
  out.status = mip.status;
  out.nodes = mip.nodes;
  if (!mip.has_incumbent()) {
    throw NumericalFailure(std::string("final ILP: ") + lp::to_string(mip.status));
  }
  out.value = mip.objective;
  out.best_bound = mip.best_bound;
  out.gap = mip.gap;
  for (std::size_t k = 0; k < y_.size(); ++k) {
    const double y = mip.value(y_[k]);
    if (std::abs(y - std::round(y)) > lp::kFeasibilityTolerance) {
      throw InvariantViolation("fractional y_" + std::to_string(k) + " = " +
                               std::to_string(y) + " in the final ILP");
    }
  }
  for (const Column& c : columns_) {
    if (mip.value(c.var) > 0.5) out.selected.push_back(c.config);
  }

  for (const Column& c : columns_) {
    model_.set_type(c.var, lp::VarType::kContinuous);
    model_.set_bounds(c.var, 0.0, lp::kInfinity);
  }
  backend_->set_use_previous_basis(true);
  return out;
}

ProvisioningPlan post_process(const Instance& instance,
                              const std::vector<DemandItem>& items,
                              const std::vector<Configuration>& selected) {
  const int slots = instance.spectrum_slots();
  std::vector<int> owner(static_cast<std::size_t>(instance.topology().link_count()) * slots,
                         -1);
  std::vector<const Lightpath*> all;
  for (std::size_t c = 0; c < selected.size(); ++c) {
    for (const Lightpath& lp : selected[c].lightpaths) {
      for (LinkId l : lp.path.links) {
        for (int s = lp.start_slot; s <= lp.last_slot(); ++s) {
          int& o = owner[static_cast<std::size_t>(l) * slots + s - 1];
          if (o >= 0) {
            throw ConflictDetected("configurations " + std::to_string(o) + " and " +
                                   std::to_string(c) + " both use link " +
                                   std::to_string(l) + " slot " + std::to_string(s));
          }
          o = static_cast<int>(c);
        }
      }
      all.push_back(&lp);
    }
  }
  std::stable_sort(all.begin(), all.end(), [](const Lightpath* a, const Lightpath* b) {
    return std::forward_as_tuple(a->path.hops(), a->start_slot, a->path.links) <
           std::forward_as_tuple(b->path.hops(), b->start_slot, b->path.links);
  });

  ProvisioningPlan plan;
  plan.slot_rate_gbps = instance.slot_rate_gbps();
  std::vector<char> served(instance.request_count(), 0);
  for (const Lightpath* lp : all) {
    PlannedLightpath p{{}, lp->item, lp->path, lp->start_slot, lp->width};
    for (int k : items[lp->item].members) {
      if (!served[k]) {
        served[k] = 1;
        p.requests.push_back(k);
        plan.served_slots += instance.request(k).demand;
      }
    }
    if (!p.requests.empty()) plan.lightpaths.push_back(std::move(p));
  }
  std::sort(plan.lightpaths.begin(), plan.lightpaths.end(),
            [](const PlannedLightpath& a, const PlannedLightpath& b) {
              return a.requests.front() < b.requests.front();
            });
  return plan;
}

}  // namespace ncg
