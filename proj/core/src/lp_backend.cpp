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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>

#include "ncg/lp.hpp"
#include "simplex_engine.hpp"

namespace ncg::lp {

using detail::ColStatus;
using detail::EngineStatus;
using detail::SimplexEngine;
using detail::SparseProblem;

struct SimplexBackend::State {
  SimplexEngine engine;
  bool use_previous_basis = true;
  bool warm = false;
  int rows = 0;
  std::vector<int> col_var;  // engine column -> VarId::value
};

SimplexBackend::SimplexBackend() : state_(std::make_unique<State>()) {}
SimplexBackend::~SimplexBackend() = default;
SimplexBackend::SimplexBackend(SimplexBackend&&) noexcept = default;
SimplexBackend& SimplexBackend::operator=(SimplexBackend&&) noexcept = default;

void SimplexBackend::set_use_previous_basis(bool enabled) {
  state_->use_previous_basis = enabled;
  if (!enabled) state_->warm = false;
}

namespace {

struct Built {
  SparseProblem problem;
  std::vector<int> col_var;
  std::vector<int> var_col;  // VarId::value -> column, -1 if absent
};

Built build_problem(const Model& model) {
  Built b;
  SparseProblem& p = b.problem;
  p.rows = model.constraint_count();
  p.cols = model.variable_count();
  p.col_start.reserve(p.cols + 1);
  p.col_start.push_back(0);
  b.var_col.assign(model.variable_capacity(), -1);
  for (VarId id : model.variables()) {
    const Variable& v = model.variable(id);
    b.var_col[id.value] = static_cast<int>(b.col_var.size());
    b.col_var.push_back(id.value);
    for (const auto& e : v.column) {
      p.row_index.push_back(e.row.value);
      p.value.push_back(e.coeff);
    }
    p.col_start.push_back(static_cast<int>(p.row_index.size()));
    p.cost.push_back(-v.objective);
    double lower = v.lower;
    double upper = v.upper;
    if (v.type == VarType::kBinary) {
      lower = std::max(lower, 0.0);
      upper = std::min(upper, 1.0);
    }
    p.lower.push_back(lower);
    p.upper.push_back(upper);
  }
  p.rhs.reserve(p.rows);
  for (const Constraint& c : model.constraints()) p.rhs.push_back(c.rhs);
  return b;
}

Status to_status(EngineStatus s) {
  switch (s) {
    case EngineStatus::kOptimal: return Status::kOptimal;
    case EngineStatus::kInfeasible: return Status::kInfeasible;
    case EngineStatus::kUnbounded: return Status::kUnbounded;
    case EngineStatus::kIterationLimit: return Status::kNumericalFailure;
  }
  return Status::kNumericalFailure;
}

}  // namespace

LpSolution SimplexBackend::solve_lp(const Model& model) {
  State& st = *state_;
  Built built = build_problem(model);
  const int rows = built.problem.rows;
  bool ready = false;
  if (st.use_previous_basis && st.warm) {
    std::vector<int> old_to_new(st.col_var.size(), -1);
    for (std::size_t c = 0; c < st.col_var.size(); ++c) {
      const int var = st.col_var[c];
      if (var < static_cast<int>(built.var_col.size())) old_to_new[c] = built.var_col[var];
    }
    if (rows == st.rows) {
      ready = st.engine.rebase(built.problem, old_to_new);
    }
    if (!ready) {
      // Rows were added (or a basic column vanished): carry statuses over and
      // refactor; new rows start with their slack basic.
      const auto old = st.engine.basis();
      const int old_n = static_cast<int>(st.col_var.size());
      std::vector<ColStatus> statuses(built.problem.cols + rows, ColStatus::kAtLower);
      for (int c = 0; c < old_n; ++c) {
        if (old_to_new[c] >= 0) statuses[old_to_new[c]] = old[c];
      }
      for (int i = 0; i < rows; ++i) {
        statuses[built.problem.cols + i] =
            i < st.rows ? old[old_n + i] : ColStatus::kBasic;
      }
      st.engine.load(built.problem);
      ready = st.engine.set_basis(statuses);
      if (!ready) st.engine.load(std::move(built.problem));
      ready = true;
    }
  } else {
    st.engine.load(std::move(built.problem));
    ready = true;
  }
  st.col_var = built.col_var;
  st.rows = rows;

  const long long before = st.engine.iterations();
  const EngineStatus status = st.engine.solve();
  LpSolution sol;
  sol.status = to_status(status);
  sol.iterations = static_cast<int>(st.engine.iterations() - before);
  st.warm = status == EngineStatus::kOptimal;
  sol.primal.assign(model.variable_capacity(), 0.0);
  sol.reduced_cost.assign(model.variable_capacity(), 0.0);
  sol.basic.assign(model.variable_capacity(), false);
  sol.dual.assign(rows, 0.0);
  if (status != EngineStatus::kOptimal) return sol;

  const auto d = st.engine.reduced_costs();
  for (std::size_t c = 0; c < st.col_var.size(); ++c) {
    const int var = st.col_var[c];
    sol.primal[var] = st.engine.value(static_cast<int>(c));
    sol.reduced_cost[var] = -d[c];
    sol.basic[var] = st.engine.is_basic(static_cast<int>(c));
  }
  const auto y = st.engine.row_duals();
  for (int i = 0; i < rows; ++i) sol.dual[i] = -y[i];
  sol.objective = -st.engine.objective();
  return sol;
}

namespace {

struct Node {
  std::vector<std::pair<int, double>> fixes;  // (column, value)
  double bound = lp::kInfinity;
  std::shared_ptr<const std::vector<ColStatus>> basis;
  long long parent = -1;
};

}  // namespace

MipSolution SimplexBackend::solve_mip(const Model& model, const MipOptions& options) {
  State& st = *state_;
  // The search mutates bounds, so it always works on a fresh engine copy of
  // the problem; the LP warm start is only used to seed the root basis.
  Built built = build_problem(model);
  SimplexEngine engine;
  bool seeded = false;
  if (st.use_previous_basis && st.warm && built.problem.rows == st.rows) {
    std::vector<int> old_to_new(st.col_var.size(), -1);
    for (std::size_t c = 0; c < st.col_var.size(); ++c) {
      const int var = st.col_var[c];
      if (var < static_cast<int>(built.var_col.size())) old_to_new[c] = built.var_col[var];
    }
    const auto old = st.engine.basis();
    const int old_n = static_cast<int>(st.col_var.size());
    std::vector<ColStatus> statuses(built.problem.cols + built.problem.rows,
                                    ColStatus::kAtLower);
    for (int c = 0; c < old_n; ++c) {
      if (old_to_new[c] >= 0) statuses[old_to_new[c]] = old[c];
    }
    for (int i = 0; i < built.problem.rows; ++i) {
      statuses[built.problem.cols + i] = old[old_n + i];
    }
    engine.load(built.problem);
    seeded = engine.set_basis(statuses);
  }
  if (!seeded) engine.load(built.problem);

  std::vector<int> binaries;
  for (int c = 0; c < built.problem.cols; ++c) {
    if (model.variable(VarId{built.col_var[c]}).type == VarType::kBinary) {
      binaries.push_back(c);
    }
  }
  const std::vector<double> base_lower = built.problem.lower;
  const std::vector<double> base_upper = built.problem.upper;

  MipSolution result;
  result.values.assign(model.variable_capacity(), 0.0);
  bool have_incumbent = false;
  double incumbent = -lp::kInfinity;
  double pruned_bound = -lp::kInfinity;  // best bound discarded by the gap rule
  bool numerical_trouble = false;

  auto effective = [&](double bound) {
    return options.integral_objective ? std::floor(bound + 1e-6) : bound;
  };
  // True when a node with this LP bound cannot improve the incumbent enough.
  auto prune = [&](double bound) {
    if (!have_incumbent) return false;
    const double b = effective(bound);
    if (b <= incumbent + 1e-6) return true;
    const double allowance = options.relative_gap * std::max(std::abs(incumbent), 1e-10);
    if (b - incumbent <= allowance) {
      pruned_bound = std::max(pruned_bound, b);
      return true;
    }
    return false;
  };

  std::vector<Node> stack;
  stack.push_back(Node{});
  long long serial = 0;
  long long last_solved = -1;
  bool hit_limit = false;
  const auto started = std::chrono::steady_clock::now();
  auto out_of_time = [&] {
    if (options.time_limit_seconds <= 0) return false;
    const std::chrono::duration<double> spent = std::chrono::steady_clock::now() - started;
    return spent.count() >= options.time_limit_seconds;
  };
  while (!stack.empty()) {
    Node node = std::move(stack.back());
    stack.pop_back();
    if (prune(node.bound)) continue;
    if ((options.node_limit > 0 && result.nodes >= options.node_limit) ||
        (have_incumbent && out_of_time())) {
      stack.push_back(std::move(node));
      hit_limit = true;
      break;
    }
    for (int c : binaries) engine.set_bounds(c, base_lower[c], base_upper[c]);
    for (const auto& [c, v] : node.fixes) engine.set_bounds(c, v, v);
    if (node.parent != last_solved && node.basis) engine.set_basis(*node.basis);
    const EngineStatus status = engine.resolve_after_bound_change();
    ++result.nodes;
    const long long id = serial++;
    last_solved = id;
    if (status == EngineStatus::kUnbounded && node.fixes.empty()) {
      result.status = Status::kUnbounded;
      return result;
    }
    if (status == EngineStatus::kIterationLimit) {
      numerical_trouble = true;
      continue;
    }
    if (status != EngineStatus::kOptimal) continue;
    const double z = -engine.objective();
    if (prune(z)) continue;

    int branch = -1;
    double most = 1e-6;
    for (int c : binaries) {
      const double x = engine.value(c);
      const double frac = std::min(x - std::floor(x), std::ceil(x) - x);
      if (frac > most) {
        most = frac;
        branch = c;
      }
    }
    if (branch < 0) {
      have_incumbent = true;
      incumbent = z;
      for (int c = 0; c < built.problem.cols; ++c) {
        double x = engine.value(c);
        if (model.variable(VarId{built.col_var[c]}).type == VarType::kBinary) {
          x = std::round(x);
        }
        result.values[built.col_var[c]] = x;
      }
      continue;
    }
    auto snapshot = std::make_shared<const std::vector<ColStatus>>(engine.basis());
    Node down{node.fixes, z, snapshot, id};
    down.fixes.emplace_back(branch, 0.0);
    Node up{std::move(node.fixes), z, snapshot, id};
    up.fixes.emplace_back(branch, 1.0);
    stack.push_back(std::move(down));
    stack.push_back(std::move(up));
  }

  if (!have_incumbent) {
    result.status = numerical_trouble || hit_limit ? Status::kNumericalFailure
                                                   : Status::kInfeasible;
    return result;
  }
  double best_bound = std::max(incumbent, pruned_bound);
  for (const Node& open : stack) best_bound = std::max(best_bound, effective(open.bound));
  result.objective = incumbent;
  result.best_bound = best_bound;
  result.gap = (best_bound - incumbent) / std::max(std::abs(incumbent), 1e-10);
  if (result.gap < 0) result.gap = 0;
  result.status = hit_limit ? Status::kLimitReached : Status::kOptimal;
  return result;
}

std::unique_ptr<Backend> make_default_backend() {
  return std::make_unique<SimplexBackend>();
}

LpSolution solve_lp(const Model& model) {
  SimplexBackend backend;
  return backend.solve_lp(model);
}

MipSolution solve_mip(const Model& model, double relative_gap) {
  SimplexBackend backend;
  MipOptions options;
  options.relative_gap = relative_gap;
  return backend.solve_mip(model, options);
}

}  // namespace ncg::lp
