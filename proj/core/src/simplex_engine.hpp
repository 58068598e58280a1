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

// Bounded-variable revised simplex over
//
//   min c.x   s.t.  A x + s = b,  lower <= x <= upper,  s >= 0
//
// with one slack per row. The basis inverse is kept dense and updated in
// product form; refactorization exploits the fact that most basic columns
// are slacks: with T the rows whose slack is nonbasic and J the basic
// structural columns, only the |T| x |J| block A[T, J] is inverted.

#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ncg::lp::detail {

enum class ColStatus : std::uint8_t { kBasic, kAtLower, kAtUpper };

struct SparseProblem {
  int rows = 0;
  int cols = 0;
  std::vector<int> col_start;  // cols + 1 entries
  std::vector<int> row_index;
  std::vector<double> value;
  std::vector<double> cost;  // minimized
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> rhs;
};

enum class EngineStatus {
  kOptimal,
  kInfeasible,
  kUnbounded,
  kIterationLimit,
};

class SimplexEngine {
 public:
  // Installs a problem with the slack basis and every structural column at
  // its lower bound.
  void load(SparseProblem problem);

  // Replaces the problem while keeping the factorization. `old_to_new` maps
  // each previous structural column to its new index (or -1 if gone). Fails
  // (returns false, engine unchanged) when row counts differ, a basic column
  // disappears, or a removed column was not at a zero lower bound.
  bool rebase(SparseProblem problem, std::span<const int> old_to_new);

  // Statuses for structural then slack columns. Returns false if the
  // basis is not square; the engine then keeps the slack basis.
  bool set_basis(std::span<const ColStatus> statuses);
  std::vector<ColStatus> basis() const;

  void set_bounds(int col, double lower, double upper);
  void set_cost(int col, double cost);

  // Primal phase 1/2 or dual simplex depending on the current basis.
  EngineStatus solve();
  // Dual simplex from a dual-feasible basis, then primal cleanup. Used by
  // branch-and-bound after bound changes.
  EngineStatus resolve_after_bound_change();

  int rows() const { return m_; }
  int cols() const { return n_; }
  double objective() const;
  double value(int col) const { return x_[col]; }
  std::vector<double> row_duals() const;       // y = c_B B^-1
  std::vector<double> reduced_costs() const;   // structural columns
  bool is_basic(int col) const { return status_[col] == ColStatus::kBasic; }
  long long iterations() const { return iterations_; }

 private:
  int total_cols() const { return n_ + m_ + static_cast<int>(art_row_.size()); }
  template <typename F>
  void for_each_entry(int col, F&& f) const;
  double column_dot(int col, std::span<const double> dense) const;

  void reset_slack_basis();
  bool refactor();
  void compute_basic_values();
  void compute_duals(std::vector<double>& y) const;
  double reduced_cost(int col, std::span<const double> y) const;
  void ftran(int col, std::vector<double>& alpha) const;
  void pivot(int position, int entering, std::span<const double> alpha);

  double primal_infeasibility() const;
  bool dual_feasible(std::span<const double> y) const;

  EngineStatus primal_loop();
  EngineStatus dual_loop();
  EngineStatus phase_one();
  void drop_artificials();
  bool verify_and_refresh();

  int m_ = 0;
  int n_ = 0;
  SparseProblem p_;
  // Artificial columns (-e_row) added for phase one; always fixed at zero
  // outside it.
  std::vector<int> art_row_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> cost_;
  std::vector<ColStatus> status_;
  std::vector<int> head_;      // basic column per position
  std::vector<int> position_;  // position per column, -1 if nonbasic
  std::vector<double> x_;
  std::vector<double> binv_;  // m x m, row-major
  int updates_since_refactor_ = 0;
  long long iterations_ = 0;
  long long iteration_limit_ = 0;
};

}  // namespace ncg::lp::detail
