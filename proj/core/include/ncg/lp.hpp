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

// Narrow LP/MIP layer: an incrementally edited maximization model with
// "<=" rows, and a pluggable backend. The bundled backend is a bounded
// variable revised simplex (primal and dual) plus depth-first
// branch-and-bound.

#pragma once

#include <compare>
#include <initializer_list>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ncg::lp {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();
// Primal feasibility and integrality tolerance promised to callers.
inline constexpr double kFeasibilityTolerance = 1e-6;

enum class VarType { kContinuous, kBinary };

struct VarId {
  int value = -1;
  auto operator<=>(const VarId&) const = default;
};

struct RowId {
  int value = -1;
  auto operator<=>(const RowId&) const = default;
};

struct Term {
  VarId var;
  double coeff = 0.0;
};

struct ColumnEntry {
  RowId row;
  double coeff = 0.0;
  bool operator==(const ColumnEntry& o) const {
    return row == o.row && coeff == o.coeff;
  }
};

struct Variable {
  VarId id;
  double lower = 0.0;
  double upper = kInfinity;
  double objective = 0.0;
  VarType type = VarType::kContinuous;
  std::string name;
  std::vector<ColumnEntry> column;

  bool operator==(const Variable&) const = default;
};

struct Constraint {
  RowId id;
  double rhs = 0.0;
  std::string name;

  bool operator==(const Constraint&) const = default;
};

// Maximize sum(objective * x) subject to rows sum(a * x) <= rhs and variable
// bounds. Ids stay valid across edits for the lifetime of the model; removed
// ids are never reused.
class Model {
 public:
  VarId add_variable(double lower, double upper, double objective,
                     VarType type = VarType::kContinuous, std::string name = {});
  // Variable plus its coefficients in existing rows.
  VarId add_column(double lower, double upper, double objective,
                   std::span<const ColumnEntry> entries,
                   VarType type = VarType::kContinuous, std::string name = {});
  RowId add_constraint(std::span<const Term> terms, double rhs,
                       std::string name = {});
  RowId add_constraint(std::initializer_list<Term> terms, double rhs,
                       std::string name = {}) {
    return add_constraint(std::span<const Term>(terms.begin(), terms.size()),
                          rhs, std::move(name));
  }
  void remove_variables(std::span<const VarId> ids);
  void remove_variable(VarId id) { remove_variables(std::span(&id, 1)); }

  void set_bounds(VarId id, double lower, double upper);
  void set_type(VarId id, VarType type);
  void set_objective(VarId id, double objective);

  bool has_variable(VarId id) const;
  const Variable& variable(VarId id) const;
  const Constraint& constraint(RowId id) const;
  // Active variables in insertion order.
  const std::vector<VarId>& variables() const { return order_; }
  int variable_count() const { return static_cast<int>(order_.size()); }
  int constraint_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<Constraint>& constraints() const { return rows_; }
  // One past the largest id ever issued; sizes per-id solution vectors.
  int variable_capacity() const { return static_cast<int>(vars_.size()); }

  // Content equality over the active variables and rows.
  bool operator==(const Model& other) const;

 private:
  Variable& mutable_variable(VarId id);

  std::vector<Variable> vars_;
  std::vector<bool> alive_;
  std::vector<VarId> order_;
  std::vector<Constraint> rows_;
};

enum class Status {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kNumericalFailure,
  // MIP only: node or time limit hit with an incumbent whose gap may exceed the target.
  kLimitReached,
};

const char* to_string(Status status);

struct LpSolution {
  Status status = Status::kNumericalFailure;
  double objective = 0.0;
  // Indexed by VarId::value; entries of removed ids are zero.
  std::vector<double> primal;
  std::vector<double> reduced_cost;
  std::vector<bool> basic;
  // Indexed by RowId::value. Duals of "<=" rows in a maximization, reported
  // without clamping.
  std::vector<double> dual;
  int iterations = 0;

  double value(VarId id) const { return primal.at(id.value); }
  double row_dual(RowId id) const { return dual.at(id.value); }
  bool is_basic(VarId id) const { return basic.at(id.value); }
};

struct MipOptions {
  double relative_gap = 0.0;
  // Lets the search prune with floor(bound) when every integral solution
  // has an integral objective.
  bool integral_objective = false;
  long long node_limit = 0;  // 0 = unlimited
  double time_limit_seconds = 0.0;  // 0 = unlimited
};

struct MipSolution {
  Status status = Status::kNumericalFailure;
  double objective = 0.0;
  double best_bound = 0.0;
  // (best_bound - objective) / max(|objective|, 1e-10); zero when proven optimal.
  double gap = 0.0;
  std::vector<double> values;  // indexed by VarId::value
  long long nodes = 0;

  double value(VarId id) const { return values.at(id.value); }
  bool has_incumbent() const {
    return status == Status::kOptimal || status == Status::kLimitReached;
  }
};

class Backend {
 public:
  virtual ~Backend() = default;
  virtual LpSolution solve_lp(const Model& model) = 0;
  virtual MipSolution solve_mip(const Model& model, const MipOptions& options) = 0;
  // When false every solve starts from the slack basis.
  virtual void set_use_previous_basis(bool enabled) = 0;
  virtual std::string name() const = 0;
};

// Dense revised simplex and branch-and-bound; no external dependency.
class SimplexBackend final : public Backend {
 public:
  SimplexBackend();
  ~SimplexBackend() override;
  SimplexBackend(SimplexBackend&&) noexcept;
  SimplexBackend& operator=(SimplexBackend&&) noexcept;

  LpSolution solve_lp(const Model& model) override;
  MipSolution solve_mip(const Model& model, const MipOptions& options) override;
  void set_use_previous_basis(bool enabled) override;
  std::string name() const override { return "bundled-simplex"; }

 private:
  struct State;
  std::unique_ptr<State> state_;
};

std::unique_ptr<Backend> make_default_backend();

// One-shot helpers on a fresh bundled backend.
LpSolution solve_lp(const Model& model);
MipSolution solve_mip(const Model& model, double relative_gap);

// CPLEX LP-format text, for debugging dumps.
std::string to_lp_format(const Model& model);

}  // namespace ncg::lp
