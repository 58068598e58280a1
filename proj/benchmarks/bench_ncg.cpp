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

#include <benchmark/benchmark.h>

#include <memory>
#include <random>

#include "ncg/driver.hpp"
#include "ncg/lp.hpp"
#include "ncg/pricing.hpp"
#include "ncg/topology.hpp"

namespace {

using namespace ncg;

std::shared_ptr<const Topology> spain() {
  static auto topo = std::make_shared<const Topology>(*reference_topology("spain21"));
  return topo;
}

Instance desk_instance(double load_gbps, int slots) {
  return generate_inoc_style(spain(), load_gbps, 5, slots).aggregated();
}

void BM_ShortestPath(benchmark::State& state) {
  const Topology& topo = *spain();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> w(0.0, 5.0);
  std::vector<double> weights(topo.link_count());
  for (double& x : weights) x = w(rng);
  NodeId s = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shortest_path(topo, s, (s + 7) % topo.node_count(), weights));
    s = (s + 1) % topo.node_count();
  }
}
BENCHMARK(BM_ShortestPath);

// Prices one slot against the duals of the first master LP.
void BM_PriceSlot(benchmark::State& state) {
  const Instance inst = desk_instance(2500, 30);
  MasterDuals first;
  SolveConfig cfg;
  cfg.deterministic = true;
  solve(inst, cfg, [&](int it, const MasterDuals& d) {
    if (it == 2) first = d;
  });
  int slot = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(price_slot(inst, slot, first));
    slot = slot % inst.spectrum_slots() + 1;
  }
}
BENCHMARK(BM_PriceSlot)->Unit(benchmark::kMillisecond);

// Random dense-ish packing LP: max c x, A x <= b, 0 <= x <= 1.
void BM_LpSolve(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  lp::Model model;
  std::vector<lp::VarId> vars;
  for (int j = 0; j < n; ++j) {
    vars.push_back(model.add_variable(0.0, 1.0, 1.0 + u(rng)));
  }
  for (int i = 0; i < n / 2; ++i) {
    std::vector<lp::Term> row;
    for (int j = 0; j < n; ++j) {
      if (u(rng) < 0.2) row.push_back({vars[j], u(rng)});
    }
    model.add_constraint(row, 1.0 + u(rng));
  }
  for (auto _ : state) benchmark::DoNotOptimize(lp::solve_lp(model));
}
BENCHMARK(BM_LpSolve)->Arg(50)->Arg(200)->Unit(benchmark::kMillisecond);

void BM_SolveEndToEnd(benchmark::State& state) {
  const Instance inst = desk_instance(static_cast<double>(state.range(0)), 30);
  SolveConfig cfg;
  cfg.deterministic = true;
  for (auto _ : state) benchmark::DoNotOptimize(solve(inst, cfg));
}
BENCHMARK(BM_SolveEndToEnd)->Arg(1000)->Arg(2500)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
