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

#include "ncg/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>

#include "ncg/error.hpp"
#include "ncg/lp.hpp"

namespace ncg {

namespace {

double maybe_clamp(double v, bool clamp) { return clamp ? clamp_dual(v) : v; }

}  // namespace

PricingDuals PricingDuals::zero(const Instance& instance) {
  PricingDuals d;
  d.request.assign(instance.request_count(), 0.0);
  d.link.assign(instance.topology().link_count(), 0.0);
  return d;
}

std::vector<int> eligible_requests(const Instance& instance, int slot) {
  std::vector<int> out;
  for (const Request& r : instance.requests()) {
    if (slot >= 1 && slot + r.demand - 1 <= instance.spectrum_slots()) out.push_back(r.id);
  }
  return out;
}

std::vector<int> eligible_items(const Instance& instance,
                                const std::vector<DemandItem>& items, int slot) {
  std::vector<int> out;
  for (const DemandItem& it : items) {
    if (slot >= 1 && slot + it.demand - 1 <= instance.spectrum_slots()) out.push_back(it.id);
  }
  return out;
}

double item_price(const DemandItem& item, const MasterDuals& master,
                  const PricingDuals& inner, bool clamp) {
  double v = 0.0;
  for (int k : item.members) {
    v += maybe_clamp(master.mu(k), clamp) - maybe_clamp(inner.request[k], clamp);
  }
  return v;
}

std::vector<double> lightpath_weights(const Topology& topology, int width, int slot,
                                      const MasterDuals& master,
                                      const PricingDuals& inner, bool clamp) {
  std::vector<double> w(topology.link_count(), 0.0);
  for (LinkId l = 0; l < topology.link_count(); ++l) {
    double sum = maybe_clamp(inner.link[l], clamp);
    for (int s = slot; s < slot + width; ++s) sum += maybe_clamp(master.mu(l, s), clamp);
    // Shortest paths need non-negative weights even with clamping off.
    w[l] = std::max(sum, 0.0);
  }
  return w;
}

double path_reduced_cost(const DemandItem& item, const Path& path, int slot,
                         const MasterDuals& master, const PricingDuals& inner,
                         bool clamp) {
  double rc = item_price(item, master, inner, clamp);
  for (LinkId l : path.links) {
    rc -= maybe_clamp(inner.link[l], clamp);
    for (int s = slot; s < slot + item.demand; ++s) rc -= maybe_clamp(master.mu(l, s), clamp);
  }
  return rc;
}

std::optional<GeneratedLightpath> generate_lightpath(
    const Topology& topology, const DemandItem& item, int slot,
    const MasterDuals& master, const PricingDuals& inner,
    const PricingOptions& options) {
  const double price = item_price(item, master, inner, options.clamp_duals);
  if (price <= options.tolerance) return std::nullopt;
  const std::vector<double> w =
      lightpath_weights(topology, item.demand, slot, master, inner, options.clamp_duals);
  auto sp = shortest_path(topology, item.source, item.dest, w, options.tie_tolerance);
  if (!sp) return std::nullopt;
  const double rc = price - sp->weight;
  if (rc <= options.tolerance) return std::nullopt;
  return GeneratedLightpath{std::move(sp->path), rc};
}

double configuration_reduced_cost(const std::vector<DemandItem>& items,
                                  const Configuration& config,
                                  const MasterDuals& master, bool clamp) {
  const ConfigurationCoefficients coef = coefficients(items, config);
  double rc = 0.0;
  for (int k : coef.requests) rc += maybe_clamp(master.mu(k), clamp);
  for (const auto& [l, s] : coef.cells) rc -= maybe_clamp(master.mu(l, s), clamp);
  return rc;
}

namespace {

struct PathColumn {
  int item = 0;
  Path path;
  double objective = 0.0;
};

// Rows shared by the pricing LP and ILP.
struct PricingRows {
  std::vector<lp::RowId> request;  // by request id; value -1 when unused
  std::vector<lp::RowId> link;
};

PricingRows add_rows(lp::Model& model, const Instance& instance,
                     const std::vector<DemandItem>& items,
                     const std::vector<int>& eligible) {
  PricingRows rows;
  rows.request.assign(instance.request_count(), lp::RowId{});
  std::vector<char> used(instance.request_count(), 0);
  for (int i : eligible) {
    for (int k : items[i].members) used[k] = 1;
  }
  for (int k = 0; k < instance.request_count(); ++k) {
    if (used[k]) rows.request[k] = model.add_constraint(std::span<const lp::Term>{}, 1.0);
  }
  for (LinkId l = 0; l < instance.topology().link_count(); ++l) {
    rows.link.push_back(model.add_constraint(std::span<const lp::Term>{}, 1.0));
  }
  return rows;
}

lp::VarId add_path_column(lp::Model& model, const PricingRows& rows,
                          const std::vector<DemandItem>& items, const PathColumn& col,
                          double upper, lp::VarType type) {
  std::vector<lp::ColumnEntry> entries;
  for (int k : items[col.item].members) entries.push_back({rows.request[k], 1.0});
  for (LinkId l : col.path.links) entries.push_back({rows.link[l], 1.0});
  return model.add_column(0.0, upper, col.objective, entries, type);
}

}  // namespace

MasterDuals snap_duals(const MasterDuals& duals, double grid) {
  MasterDuals out = duals;
  auto snap = [grid](double& v) { v = std::round(v / grid) * grid; };
  std::for_each(out.request.begin(), out.request.end(), snap);
  std::for_each(out.link_slot.begin(), out.link_slot.end(), snap);
  return out;
}

PricingResult price_slot(const Instance& instance, const std::vector<DemandItem>& items,
                         int slot, const MasterDuals& raw,
                         const PricingOptions& options) {
  const MasterDuals master = options.dual_grid > 0.0 ? snap_duals(raw, options.dual_grid) : raw;
  PricingResult result;
  result.slot = slot;
  const Topology& topo = instance.topology();
  const std::vector<int> eligible = eligible_items(instance, items, slot);
  if (eligible.empty()) return result;

  lp::Model model;
  const PricingRows rows = add_rows(model, instance, items, eligible);
  lp::SimplexBackend backend;

  std::vector<PathColumn> generated;
  std::set<std::pair<int, std::vector<LinkId>>> in_model;
  std::vector<std::pair<lp::VarId, int>> live;  // (var, index into generated)

  PricingDuals inner = PricingDuals::zero(instance);
  const bool clamp = options.clamp_duals;
  bool converged = false;
  for (int iter = 0; iter < options.max_inner_iterations; ++iter) {
    ++result.inner_iterations;
    const lp::LpSolution sol = backend.solve_lp(model);
    if (sol.status != lp::Status::kOptimal) {
      throw NumericalFailure("pricing LP at slot " + std::to_string(slot) + ": " +
                             lp::to_string(sol.status));
    }
    result.rc_lp_star = sol.objective;
    for (int k = 0; k < instance.request_count(); ++k) {
      inner.request[k] = rows.request[k].value >= 0 ? sol.row_dual(rows.request[k]) : 0.0;
    }
    for (LinkId l = 0; l < topo.link_count(); ++l) inner.link[l] = sol.row_dual(rows.link[l]);

    // Same retention rule as the master: nonbasic columns at zero go.
    std::vector<lp::VarId> drop;
    std::vector<std::pair<lp::VarId, int>> kept;
    for (const auto& [var, g] : live) {
      if (!sol.is_basic(var) && std::abs(sol.value(var)) <= 1e-12) {
        drop.push_back(var);
        in_model.erase({generated[g].item, generated[g].path.links});
      } else {
        kept.emplace_back(var, g);
      }
    }
    live = std::move(kept);
    if (!drop.empty()) model.remove_variables(drop);

    int added = 0;
    for (int i : eligible) {
      auto gen = generate_lightpath(topo, items[i], slot, master, inner, options);
      if (!gen) continue;
      if (!in_model.insert({i, gen->path.links}).second) continue;
      PathColumn col{i, std::move(gen->path), 0.0};
      col.objective = path_reduced_cost(items[i], col.path, slot, master,
                                        PricingDuals::zero(instance), clamp);
      // No upper bound in the LP; the request rows cap beta at 1.
      live.emplace_back(add_path_column(model, rows, items, col, lp::kInfinity,
                                        lp::VarType::kContinuous),
                        static_cast<int>(generated.size()));
      generated.push_back(std::move(col));
      ++added;
    }
    if (added == 0) {
      converged = true;
      break;
    }
  }
  result.converged = converged;
  result.paths_generated = static_cast<int>(generated.size());
  if (generated.empty()) return result;

  // Exact pricing ILP over every path generated at this slot, duplicates
  // (a path dropped and later regenerated) collapsed.
  lp::Model ilp;
  const PricingRows irows = add_rows(ilp, instance, items, eligible);
  std::set<std::pair<int, std::vector<LinkId>>> seen;
  std::vector<std::pair<lp::VarId, int>> vars;
  for (std::size_t g = 0; g < generated.size(); ++g) {
    if (generated[g].objective <= 0.0) continue;  // never part of a maximum
    if (!seen.insert({generated[g].item, generated[g].path.links}).second) continue;
    vars.emplace_back(add_path_column(ilp, irows, items, generated[g], 1.0,
                                      lp::VarType::kBinary),
                      static_cast<int>(g));
  }
  if (vars.empty()) return result;
  lp::MipOptions mip_options;
  mip_options.relative_gap = 0.0;
  const lp::MipSolution mip = backend.solve_mip(ilp, mip_options);
  if (!mip.has_incumbent()) {
    throw NumericalFailure("pricing ILP at slot " + std::to_string(slot) + ": " +
                           lp::to_string(mip.status));
  }
  result.rc_ilp = std::max(0.0, mip.objective);
  if (result.rc_ilp > options.tolerance) {
    Configuration config;
    config.start_slot = slot;
    for (const auto& [var, g] : vars) {
      if (mip.value(var) > 0.5) {
        const PathColumn& col = generated[g];
        config.lightpaths.push_back(
            Lightpath{col.item, col.path, slot, items[col.item].demand});
      }
    }
    std::sort(config.lightpaths.begin(), config.lightpaths.end(),
              [](const Lightpath& a, const Lightpath& b) { return a.item < b.item; });
    result.configuration = std::move(config);
  }
  return result;
}

PricingResult price_slot(const Instance& instance, int slot, const MasterDuals& master,
                         const PricingOptions& options) {
  return price_slot(instance, singleton_items(instance), slot, master, options);
}

}  // namespace ncg
