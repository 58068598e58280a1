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

#include "ncg/oracle.hpp"

#include <algorithm>
#include <cstdint>
#include <string>

#include "ncg/error.hpp"

namespace ncg {

namespace {

void check_limits(const Instance& instance, const OracleLimits& limits) {
  auto fail = [](const std::string& what) { throw LimitsExceeded(what); };
  if (instance.topology().node_count() > limits.max_nodes) {
    fail(std::to_string(instance.topology().node_count()) + " nodes exceed the oracle limit of " +
         std::to_string(limits.max_nodes));
  }
  if (instance.request_count() > limits.max_requests) {
    fail(std::to_string(instance.request_count()) + " requests exceed the oracle limit of " +
         std::to_string(limits.max_requests));
  }
  if (instance.spectrum_slots() > std::min(limits.max_spectrum, 64)) {
    fail(std::to_string(instance.spectrum_slots()) + " slots exceed the oracle limit of " +
         std::to_string(limits.max_spectrum));
  }
}

std::uint64_t window_mask(int start, int width) {
  const std::uint64_t ones = width >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << width) - 1;
  return ones << (start - 1);
}

void extend(const Topology& topo, NodeId at, NodeId dest, int max_hops,
            std::vector<char>& visited, Path& partial, std::vector<Path>& out) {
  if (at == dest) {
    out.push_back(partial);
    return;
  }
  if (partial.hops() >= max_hops) return;
  for (LinkId l : topo.incident(at)) {
    const NodeId next = topo.link(l).other(at);
    if (visited[next]) continue;
    visited[next] = 1;
    partial.links.push_back(l);
    extend(topo, next, dest, max_hops, visited, partial, out);
    partial.links.pop_back();
    visited[next] = 0;
  }
}

struct Search {
  const Instance& instance;
  const std::vector<DemandItem>& items;
  std::vector<std::vector<Path>> paths;  // per item
  std::vector<std::uint64_t> used;       // per link
  std::vector<char> served;              // per request
  std::vector<int> choice_path;          // per item, -1 = rejected
  std::vector<int> choice_slot;
  std::vector<int> best_path;
  std::vector<int> best_slot;
  long long value = 0;
  long long best = -1;
  long long nodes = 0;

  long long item_value(const DemandItem& it) const {
    long long v = 0;
    for (int k : it.members) v += instance.request(k).demand;
    return v;
  }

  long long unserved_demand() const {
    long long v = 0;
    for (int k = 0; k < instance.request_count(); ++k) {
      if (!served[k]) v += instance.request(k).demand;
    }
    return v;
  }

  void run(std::size_t i) {
    ++nodes;
    if (value > best) {
      best = value;
      best_path = choice_path;
      best_slot = choice_slot;
    }
    if (i == items.size() || value + unserved_demand() <= best) return;
    const DemandItem& it = items[i];
    bool free = true;
    for (int k : it.members) free = free && !served[k];
    if (free) {
      const int last_start = instance.spectrum_slots() - it.demand + 1;
      for (std::size_t p = 0; p < paths[i].size(); ++p) {
        for (int s = 1; s <= last_start; ++s) {
          const std::uint64_t mask = window_mask(s, it.demand);
          bool fits = true;
          for (LinkId l : paths[i][p].links) fits = fits && (used[l] & mask) == 0;
          if (!fits) continue;
          for (LinkId l : paths[i][p].links) used[l] |= mask;
          for (int k : it.members) served[k] = 1;
          value += item_value(it);
          choice_path[i] = static_cast<int>(p);
          choice_slot[i] = s;
          run(i + 1);
          choice_path[i] = -1;
          value -= item_value(it);
          for (int k : it.members) served[k] = 0;
          for (LinkId l : paths[i][p].links) used[l] &= ~mask;
        }
      }
    }
    run(i + 1);  // reject
  }
};

}  // namespace

std::vector<Path> enumerate_simple_paths(const Topology& topology, NodeId source,
                                         NodeId dest, int max_hops) {
  std::vector<Path> out;
  if (source == dest) return out;
  std::vector<char> visited(topology.node_count(), 0);
  visited[source] = 1;
  Path partial{source, dest, {}};
  extend(topology, source, dest, max_hops, visited, partial, out);
  std::sort(out.begin(), out.end(),
            [](const Path& a, const Path& b) { return a.links < b.links; });
  return out;
}

OracleResult oracle_solve(const Instance& instance, const std::vector<DemandItem>& items,
                          const OracleLimits& limits) {
  check_limits(instance, limits);
  const Topology& topo = instance.topology();
  Search search{instance, items, {}, {}, {}, {}, {}, {}, {}};
  for (const DemandItem& it : items) {
    search.paths.push_back(enumerate_simple_paths(topo, it.source, it.dest, limits.max_hops));
  }
  search.used.assign(topo.link_count(), 0);
  search.served.assign(instance.request_count(), 0);
  search.choice_path.assign(items.size(), -1);
  search.choice_slot.assign(items.size(), 0);
  search.run(0);

  OracleResult result;
  result.optimum = search.best;
  result.nodes = search.nodes;
  result.plan.slot_rate_gbps = instance.slot_rate_gbps();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (search.best_path[i] < 0) continue;
    const DemandItem& it = items[i];
    result.plan.lightpaths.push_back(PlannedLightpath{
        it.members, it.id, search.paths[i][search.best_path[i]], search.best_slot[i], it.demand});
    result.plan.served_slots += search.item_value(it);
  }
  std::sort(result.plan.lightpaths.begin(), result.plan.lightpaths.end(),
            [](const PlannedLightpath& a, const PlannedLightpath& b) {
              return a.requests.front() < b.requests.front();
            });
  return result;
}

OracleResult oracle_solve(const Instance& instance, const OracleLimits& limits) {
  return oracle_solve(instance, singleton_items(instance), limits);
}

double oracle_max_reduced_cost(const Instance& instance,
                               const std::vector<DemandItem>& items, int slot,
                               const MasterDuals& duals, const OracleLimits& limits) {
  check_limits(instance, limits);
  const Topology& topo = instance.topology();
  auto pos = [](double v) { return std::max(v, 0.0); };
  struct Option {
    std::vector<LinkId> links;
    double rc = 0.0;
  };
  // Per eligible item, every path with its stand-alone reduced cost.
  std::vector<int> eligible;
  std::vector<std::vector<Option>> options;
  for (const DemandItem& it : items) {
    if (slot + it.demand - 1 > instance.spectrum_slots()) continue;
    double price = 0.0;
    for (int k : it.members) price += pos(duals.mu(k));
    std::vector<Option> opts;
    for (const Path& p : enumerate_simple_paths(topo, it.source, it.dest, limits.max_hops)) {
      double rc = price;
      for (LinkId l : p.links) {
        for (int s = slot; s < slot + it.demand; ++s) rc -= pos(duals.mu(l, s));
      }
      opts.push_back(Option{p.links, rc});
    }
    eligible.push_back(it.id);
    options.push_back(std::move(opts));
  }

  std::vector<char> link_used(topo.link_count(), 0);
  std::vector<char> served(instance.request_count(), 0);
  double best = 0.0;
  // Plain recursion over "skip or pick one path" per eligible item.
  auto rec = [&](auto&& self, std::size_t i, double value) -> void {
    best = std::max(best, value);
    if (i == eligible.size()) return;
    self(self, i + 1, value);
    const DemandItem& it = items[eligible[i]];
    for (int k : it.members) {
      if (served[k]) return;
    }
    for (const Option& o : options[i]) {
      bool free = true;
      for (LinkId l : o.links) free = free && !link_used[l];
      if (!free) continue;
      for (LinkId l : o.links) link_used[l] = 1;
      for (int k : it.members) served[k] = 1;
      self(self, i + 1, value + o.rc);
      for (int k : it.members) served[k] = 0;
      for (LinkId l : o.links) link_used[l] = 0;
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

double oracle_max_reduced_cost(const Instance& instance, int slot,
                               const MasterDuals& duals, const OracleLimits& limits) {
  return oracle_max_reduced_cost(instance, singleton_items(instance), slot, duals, limits);
}

PlanScan scan_plan(const Instance& instance, const ProvisioningPlan& plan) {
  PlanScan scan;
  const Topology& topo = instance.topology();
  const int slots = instance.spectrum_slots();
  std::vector<int> cell(static_cast<std::size_t>(topo.link_count()) * slots, 0);
  std::vector<int> times_served(instance.request_count(), 0);
  for (const PlannedLightpath& lp : plan.lightpaths) {
    const int first = lp.start_slot;
    const int last = lp.start_slot + lp.width - 1;
    if (lp.width < 1 || first < 1 || last > slots) ++scan.window_violations;

    bool path_ok = !lp.requests.empty() && !lp.path.links.empty();
    for (LinkId l : lp.path.links) path_ok = path_ok && l >= 0 && l < topo.link_count();
    if (path_ok) {
      // Walk the path by hand rather than trusting is_simple_path.
      std::vector<char> seen(topo.node_count(), 0);
      NodeId at = lp.path.source;
      seen[at] = 1;
      for (LinkId l : lp.path.links) {
        const Link& link = topo.link(l);
        if (!link.touches(at)) {
          path_ok = false;
          break;
        }
        at = link.other(at);
        if (seen[at]++) {
          path_ok = false;
          break;
        }
      }
      path_ok = path_ok && at == lp.path.dest;
    }
    long long need = 0;
    for (int k : lp.requests) {
      if (k < 0 || k >= instance.request_count()) {
        path_ok = false;
        continue;
      }
      const Request& r = instance.request(k);
      const bool ends = (r.source == lp.path.source && r.dest == lp.path.dest) ||
                        (r.source == lp.path.dest && r.dest == lp.path.source);
      path_ok = path_ok && ends;
      if (times_served[k]++ == 0) {
        scan.served_slots += r.demand;
      } else {
        ++scan.duplicate_requests;
      }
      need += r.demand;
    }
    if (!lp.requests.empty()) {
      need -= static_cast<long long>(lp.requests.size()) - 1;  // at most one band saved each
      if (lp.requests.size() == 1 ? lp.width != need : lp.width < need) ++scan.width_violations;
    }
    if (!path_ok) {
      ++scan.path_violations;
      continue;
    }
    for (LinkId l : lp.path.links) {
      for (int s = std::max(first, 1); s <= std::min(last, slots); ++s) {
        if (cell[static_cast<std::size_t>(l) * slots + s - 1]++ == 1) ++scan.conflicts;
      }
    }
  }
  return scan;
}

}  // namespace ncg
