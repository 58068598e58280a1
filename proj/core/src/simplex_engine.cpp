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

#include "simplex_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ncg::lp::detail {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPrimalTol = 1e-9;
// Reduced costs this close to zero count as zero; keeps pivoting choices
// stable under tiny perturbations of the objective.
constexpr double kDualTol = 1e-7;
// Dantzig scores within this of the best are ties, broken by lowest index.
constexpr double kTieTol = 1e-7;
constexpr double kPivotTol = 1e-9;
constexpr double kSingularTol = 1e-11;
constexpr int kRefactorInterval = 100;
// Consecutive degenerate pivots before switching to Bland's rule.
constexpr int kBlandThreshold = 50;

}  // namespace

template <typename F>
void SimplexEngine::for_each_entry(int col, F&& f) const {
  if (col < n_) {
    for (int k = p_.col_start[col]; k < p_.col_start[col + 1]; ++k) {
      f(p_.row_index[k], p_.value[k]);
    }
  } else if (col < n_ + m_) {
    f(col - n_, 1.0);
  } else {
    f(art_row_[col - n_ - m_], -1.0);
  }
}

double SimplexEngine::column_dot(int col, std::span<const double> dense) const {
  double sum = 0.0;
  for_each_entry(col, [&](int row, double v) { sum += v * dense[row]; });
  return sum;
}

void SimplexEngine::load(SparseProblem problem) {
  p_ = std::move(problem);
  m_ = p_.rows;
  n_ = p_.cols;
  art_row_.clear();
  const int total = n_ + m_;
  lower_.assign(total, 0.0);
  upper_.assign(total, kInf);
  cost_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    lower_[j] = p_.lower[j];
    upper_[j] = p_.upper[j];
    cost_[j] = p_.cost[j];
  }
  reset_slack_basis();
}

bool SimplexEngine::rebase(SparseProblem problem, std::span<const int> old_to_new) {
  if (problem.rows != m_ || static_cast<int>(old_to_new.size()) != n_) return false;
  for (int col = n_ + m_; col < total_cols(); ++col) {
    if (status_[col] == ColStatus::kBasic) return false;
  }
  for (int j = 0; j < n_; ++j) {
    if (old_to_new[j] < 0 &&
        (status_[j] != ColStatus::kAtLower || lower_[j] != 0.0)) {
      return false;
    }
  }
  const int new_n = problem.cols;
  std::vector<ColStatus> status(new_n + m_, ColStatus::kAtLower);
  for (int j = 0; j < n_; ++j) {
    if (old_to_new[j] >= 0) status[old_to_new[j]] = status_[j];
  }
  for (int i = 0; i < m_; ++i) status[new_n + i] = status_[n_ + i];
  std::vector<int> head(m_);
  for (int r = 0; r < m_; ++r) {
    const int col = head_[r];
    head[r] = col < n_ ? old_to_new[col] : col - n_ + new_n;
  }

  p_ = std::move(problem);
  n_ = new_n;
  art_row_.clear();
  const int total = n_ + m_;
  lower_.assign(total, 0.0);
  upper_.assign(total, kInf);
  cost_.assign(total, 0.0);
  for (int j = 0; j < n_; ++j) {
    lower_[j] = p_.lower[j];
    upper_[j] = p_.upper[j];
    cost_[j] = p_.cost[j];
    if (status[j] == ColStatus::kAtUpper && !std::isfinite(upper_[j])) {
      status[j] = ColStatus::kAtLower;
    }
  }
  status_ = std::move(status);
  head_ = std::move(head);
  position_.assign(total, -1);
  for (int r = 0; r < m_; ++r) position_[head_[r]] = r;
  x_.assign(total, 0.0);
  compute_basic_values();
  return true;
}

void SimplexEngine::reset_slack_basis() {
  art_row_.clear();
  const int total = n_ + m_;
  lower_.resize(total);
  upper_.resize(total);
  cost_.resize(total);
  status_.assign(total, ColStatus::kAtLower);
  position_.assign(total, -1);
  head_.resize(m_);
  for (int i = 0; i < m_; ++i) {
    status_[n_ + i] = ColStatus::kBasic;
    head_[i] = n_ + i;
    position_[n_ + i] = i;
  }
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
  updates_since_refactor_ = 0;
  x_.assign(total, 0.0);
  compute_basic_values();
}

bool SimplexEngine::set_basis(std::span<const ColStatus> statuses) {
  if (static_cast<int>(statuses.size()) != n_ + m_) return false;
  const auto basic = std::count(statuses.begin(), statuses.end(), ColStatus::kBasic);
  if (basic != m_) return false;
  art_row_.clear();
  const int total = n_ + m_;
  lower_.resize(total);
  upper_.resize(total);
  cost_.resize(total);
  status_.assign(statuses.begin(), statuses.end());
  for (int j = 0; j < total; ++j) {
    if (status_[j] == ColStatus::kAtUpper && !std::isfinite(upper_[j])) {
      status_[j] = ColStatus::kAtLower;
    }
  }
  position_.assign(total, -1);
  int r = 0;
  for (int j = 0; j < total; ++j) {
    if (status_[j] == ColStatus::kBasic) {
      head_[r] = j;
      position_[j] = r;
      ++r;
    }
  }
  x_.assign(total, 0.0);
  if (!refactor()) {
    reset_slack_basis();
    return false;
  }
  compute_basic_values();
  return true;
}

std::vector<ColStatus> SimplexEngine::basis() const {
  return std::vector<ColStatus>(status_.begin(), status_.begin() + n_ + m_);
}

void SimplexEngine::set_bounds(int col, double lower, double upper) {
  lower_[col] = lower;
  upper_[col] = upper;
  p_.lower[col] = lower;
  p_.upper[col] = upper;
  if (status_[col] == ColStatus::kAtUpper && !std::isfinite(upper)) {
    status_[col] = ColStatus::kAtLower;
  }
}

void SimplexEngine::set_cost(int col, double cost) {
  cost_[col] = cost;
  p_.cost[col] = cost;
}

bool SimplexEngine::refactor() {
  // Basic non-slack columns J and rows T whose slack is nonbasic.
  std::vector<int> cols_j;
  std::vector<int> rows_t;
  std::vector<int> t_index(m_, -1);
  for (int i = 0; i < m_; ++i) {
    if (status_[n_ + i] != ColStatus::kBasic) {
      t_index[i] = static_cast<int>(rows_t.size());
      rows_t.push_back(i);
    }
  }
  for (int j = 0; j < total_cols(); ++j) {
    if (status_[j] == ColStatus::kBasic && !(j >= n_ && j < n_ + m_)) {
      cols_j.push_back(j);
    }
  }
  const int p = static_cast<int>(cols_j.size());
  if (p != static_cast<int>(rows_t.size())) return false;

  // Gauss-Jordan on [M | I] with partial pivoting, M = A[T, J].
  const std::size_t w = 2 * static_cast<std::size_t>(p);
  std::vector<double> aug(static_cast<std::size_t>(p) * w, 0.0);
  for (int q = 0; q < p; ++q) {
    for_each_entry(cols_j[q], [&](int row, double v) {
      if (t_index[row] >= 0) aug[t_index[row] * w + q] += v;
    });
  }
  for (int a = 0; a < p; ++a) aug[a * w + p + a] = 1.0;
  for (int c = 0; c < p; ++c) {
    int piv = c;
    double best = std::abs(aug[c * w + c]);
    for (int a = c + 1; a < p; ++a) {
      const double v = std::abs(aug[a * w + c]);
      if (v > best) {
        best = v;
        piv = a;
      }
    }
    if (best < kSingularTol) return false;
    if (piv != c) {
      std::swap_ranges(aug.begin() + piv * w, aug.begin() + (piv + 1) * w,
                       aug.begin() + c * w);
    }
    double* prow = &aug[c * w];
    const double inv = 1.0 / prow[c];
    for (std::size_t k = 0; k < w; ++k) prow[k] *= inv;
    for (int a = 0; a < p; ++a) {
      if (a == c) continue;
      double* row = &aug[a * w];
      const double f = row[c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < w; ++k) row[k] -= f * prow[k];
    }
  }
  // Minv[q][a] = aug[q * w + p + a].
  binv_.assign(static_cast<std::size_t>(m_) * m_, 0.0);
  for (int i = 0; i < m_; ++i) {
    if (t_index[i] < 0) binv_[static_cast<std::size_t>(i) * m_ + i] = 1.0;
  }
  for (int q = 0; q < p; ++q) {
    const int tq = rows_t[q];
    double* brow = &binv_[static_cast<std::size_t>(tq) * m_];
    const double* minv = &aug[q * w + p];
    for (int a = 0; a < p; ++a) brow[rows_t[a]] = minv[a];
  }
  for (int q = 0; q < p; ++q) {
    const double* minv = &aug[q * w + p];
    for_each_entry(cols_j[q], [&](int row, double v) {
      if (t_index[row] >= 0) return;
      double* brow = &binv_[static_cast<std::size_t>(row) * m_];
      for (int a = 0; a < p; ++a) brow[rows_t[a]] -= v * minv[a];
    });
  }
  std::fill(position_.begin(), position_.end(), -1);
  for (int i = 0; i < m_; ++i) {
    if (t_index[i] < 0) {
      head_[i] = n_ + i;
      position_[n_ + i] = i;
    }
  }
  for (int q = 0; q < p; ++q) {
    head_[rows_t[q]] = cols_j[q];
    position_[cols_j[q]] = rows_t[q];
  }
  updates_since_refactor_ = 0;
  return true;
}

void SimplexEngine::compute_basic_values() {
  const int total = total_cols();
  std::vector<double> residual(p_.rhs.begin(), p_.rhs.end());
  for (int j = 0; j < total; ++j) {
    if (status_[j] == ColStatus::kBasic) continue;
    x_[j] = status_[j] == ColStatus::kAtUpper ? upper_[j] : lower_[j];
    if (x_[j] == 0.0) continue;
    for_each_entry(j, [&](int row, double v) { residual[row] -= v * x_[j]; });
  }
  for (int r = 0; r < m_; ++r) {
    const double* brow = &binv_[static_cast<std::size_t>(r) * m_];
    double sum = 0.0;
    for (int i = 0; i < m_; ++i) sum += brow[i] * residual[i];
    x_[head_[r]] = sum;
  }
}

void SimplexEngine::compute_duals(std::vector<double>& y) const {
  y.assign(m_, 0.0);
  for (int r = 0; r < m_; ++r) {
    const double c = cost_[head_[r]];
    if (c == 0.0) continue;
    const double* brow = &binv_[static_cast<std::size_t>(r) * m_];
    for (int i = 0; i < m_; ++i) y[i] += c * brow[i];
  }
}

double SimplexEngine::reduced_cost(int col, std::span<const double> y) const {
  return cost_[col] - column_dot(col, y);
}

void SimplexEngine::ftran(int col, std::vector<double>& alpha) const {
  alpha.assign(m_, 0.0);
  for_each_entry(col, [&](int row, double v) {
    for (int r = 0; r < m_; ++r) alpha[r] += v * binv_[static_cast<std::size_t>(r) * m_ + row];
  });
}

void SimplexEngine::pivot(int position, int entering, std::span<const double> alpha) {
  double* prow = &binv_[static_cast<std::size_t>(position) * m_];
  const double inv = 1.0 / alpha[position];
  for (int i = 0; i < m_; ++i) prow[i] *= inv;
  for (int r = 0; r < m_; ++r) {
    if (r == position) continue;
    const double f = alpha[r];
    if (std::abs(f) < 1e-14) continue;
    double* row = &binv_[static_cast<std::size_t>(r) * m_];
    for (int i = 0; i < m_; ++i) row[i] -= f * prow[i];
  }
  const int leaving = head_[position];
  position_[leaving] = -1;
  head_[position] = entering;
  position_[entering] = position;
  status_[entering] = ColStatus::kBasic;
  if (++updates_since_refactor_ >= kRefactorInterval) {
    if (refactor()) compute_basic_values();
  }
}

double SimplexEngine::primal_infeasibility() const {
  double worst = 0.0;
  for (int r = 0; r < m_; ++r) {
    const int j = head_[r];
    worst = std::max({worst, lower_[j] - x_[j], x_[j] - upper_[j]});
  }
  return worst;
}

bool SimplexEngine::dual_feasible(std::span<const double> y) const {
  for (int j = 0; j < total_cols(); ++j) {
    if (status_[j] == ColStatus::kBasic || upper_[j] <= lower_[j]) continue;
    const double d = reduced_cost(j, y);
    if (status_[j] == ColStatus::kAtLower && d < -kDualTol) return false;
    if (status_[j] == ColStatus::kAtUpper && d > kDualTol) return false;
  }
  return true;
}

EngineStatus SimplexEngine::primal_loop() {
  std::vector<double> y;
  std::vector<double> alpha;
  int degenerate = 0;
  const int total = total_cols();
  for (;;) {
    if (iterations_ >= iteration_limit_) return EngineStatus::kIterationLimit;
    const bool bland = degenerate >= kBlandThreshold;
    compute_duals(y);
    int entering = -1;
    int direction = 0;
    double best = 0.0;
    for (int j = 0; j < total; ++j) {
      if (status_[j] == ColStatus::kBasic || upper_[j] <= lower_[j]) continue;
      const double d = reduced_cost(j, y);
      double score = 0.0;
      int dir = 0;
      if (status_[j] == ColStatus::kAtLower && d < -kDualTol) {
        score = -d;
        dir = 1;
      } else if (status_[j] == ColStatus::kAtUpper && d > kDualTol) {
        score = d;
        dir = -1;
      } else {
        continue;
      }
      if (bland) {
        entering = j;
        direction = dir;
        break;
      }
      if (score > best + kTieTol) {
        best = score;
        entering = j;
        direction = dir;
      }
    }
    if (entering < 0) return EngineStatus::kOptimal;

    ftran(entering, alpha);
    const double flip = upper_[entering] - lower_[entering];
    // Harris pass one: loosened bound on the step.
    double theta_max = flip;
    for (int r = 0; r < m_; ++r) {
      const double a = direction * alpha[r];
      const int j = head_[r];
      if (a > kPivotTol) {
        theta_max = std::min(theta_max, (x_[j] - lower_[j] + kPrimalTol) / a);
      } else if (a < -kPivotTol && std::isfinite(upper_[j])) {
        theta_max = std::min(theta_max, (upper_[j] - x_[j] + kPrimalTol) / -a);
      }
    }
    if (!std::isfinite(theta_max)) return EngineStatus::kUnbounded;
    // Pass two: largest pivot among rows blocking within theta_max.
    int leave = -1;
    double leave_ratio = kInf;
    double leave_mag = 0.0;
    for (int r = 0; r < m_; ++r) {
      const double a = direction * alpha[r];
      const int j = head_[r];
      double ratio;
      if (a > kPivotTol) {
        ratio = (x_[j] - lower_[j]) / a;
      } else if (a < -kPivotTol && std::isfinite(upper_[j])) {
        ratio = (upper_[j] - x_[j]) / -a;
      } else {
        continue;
      }
      ratio = std::max(ratio, 0.0);
      if (bland) {
        if (ratio < leave_ratio - 1e-12 ||
            (ratio <= leave_ratio + 1e-12 && leave >= 0 && j < head_[leave])) {
          leave = r;
          leave_ratio = ratio;
        }
      } else if (ratio <= theta_max && std::abs(a) > leave_mag) {
        leave = r;
        leave_ratio = ratio;
        leave_mag = std::abs(a);
      }
    }
    const bool bound_flip = leave < 0 || flip <= leave_ratio;
    const double step = bound_flip ? flip : leave_ratio;
    ++iterations_;
    degenerate = step <= 1e-12 ? degenerate + 1 : 0;
    if (step != 0.0) {
      for (int r = 0; r < m_; ++r) {
        if (alpha[r] != 0.0) x_[head_[r]] -= direction * alpha[r] * step;
      }
    }
    if (bound_flip) {
      status_[entering] = direction > 0 ? ColStatus::kAtUpper : ColStatus::kAtLower;
      x_[entering] = direction > 0 ? upper_[entering] : lower_[entering];
      continue;
    }
    x_[entering] += direction * step;
    const int leaving = head_[leave];
    const double a = direction * alpha[leave];
    if (a > 0) {
      status_[leaving] = ColStatus::kAtLower;
      x_[leaving] = lower_[leaving];
    } else {
      status_[leaving] = ColStatus::kAtUpper;
      x_[leaving] = upper_[leaving];
    }
    pivot(leave, entering, alpha);
  }
}

EngineStatus SimplexEngine::dual_loop() {
  std::vector<double> y;
  std::vector<double> alpha;
  std::vector<double> rho(m_);
  const int total = total_cols();
  for (;;) {
    if (iterations_ >= iteration_limit_) return EngineStatus::kIterationLimit;
    int leave = -1;
    double worst = kPrimalTol;
    bool to_upper = false;
    for (int r = 0; r < m_; ++r) {
      const int j = head_[r];
      if (lower_[j] - x_[j] > worst) {
        worst = lower_[j] - x_[j];
        leave = r;
        to_upper = false;
      } else if (x_[j] - upper_[j] > worst) {
        worst = x_[j] - upper_[j];
        leave = r;
        to_upper = true;
      }
    }
    if (leave < 0) return EngineStatus::kOptimal;

    compute_duals(y);
    std::copy_n(&binv_[static_cast<std::size_t>(leave) * m_], m_, rho.begin());
    // Leaving variable must increase (to_upper == false) or decrease.
    std::vector<std::pair<int, double>> candidates;
    double theta_max = kInf;
    for (int j = 0; j < total; ++j) {
      if (status_[j] == ColStatus::kBasic || upper_[j] <= lower_[j]) continue;
      const double arj = column_dot(j, rho);
      const bool at_lower = status_[j] == ColStatus::kAtLower;
      bool eligible;
      if (!to_upper) {
        eligible = (at_lower && arj < -kPivotTol) || (!at_lower && arj > kPivotTol);
      } else {
        eligible = (at_lower && arj > kPivotTol) || (!at_lower && arj < -kPivotTol);
      }
      if (!eligible) continue;
      const double d = reduced_cost(j, y);
      const double slack = at_lower ? std::max(d, 0.0) : std::max(-d, 0.0);
      theta_max = std::min(theta_max, (slack + kDualTol) / std::abs(arj));
      candidates.emplace_back(j, arj);
    }
    if (candidates.empty()) return EngineStatus::kInfeasible;
    int entering = -1;
    double best_mag = 0.0;
    for (const auto& [j, arj] : candidates) {
      const double d = reduced_cost(j, y);
      const bool at_lower = status_[j] == ColStatus::kAtLower;
      const double slack = at_lower ? std::max(d, 0.0) : std::max(-d, 0.0);
      if (slack / std::abs(arj) <= theta_max && std::abs(arj) > best_mag) {
        best_mag = std::abs(arj);
        entering = j;
      }
    }
    ftran(entering, alpha);
    if (std::abs(alpha[leave]) < kPivotTol) {
      // Row and column disagree: the factorization drifted.
      if (!refactor()) return EngineStatus::kIterationLimit;
      compute_basic_values();
      ++iterations_;
      continue;
    }
    const int leaving = head_[leave];
    const double target = to_upper ? upper_[leaving] : lower_[leaving];
    const double dx = (x_[leaving] - target) / alpha[leave];
    for (int r = 0; r < m_; ++r) {
      if (alpha[r] != 0.0) x_[head_[r]] -= alpha[r] * dx;
    }
    x_[entering] += dx;
    x_[leaving] = target;
    status_[leaving] = to_upper ? ColStatus::kAtUpper : ColStatus::kAtLower;
    ++iterations_;
    pivot(leave, entering, alpha);
  }
}

EngineStatus SimplexEngine::phase_one() {
  reset_slack_basis();
  std::vector<int> infeasible_rows;
  for (int i = 0; i < m_; ++i) {
    if (x_[n_ + i] < -kPrimalTol) infeasible_rows.push_back(i);
  }
  if (infeasible_rows.empty()) return EngineStatus::kOptimal;
  const std::vector<double> real_cost = cost_;
  std::fill(cost_.begin(), cost_.end(), 0.0);
  for (int i : infeasible_rows) {
    const int col = total_cols();
    art_row_.push_back(i);
    lower_.push_back(0.0);
    upper_.push_back(kInf);
    cost_.push_back(1.0);
    x_.push_back(-x_[n_ + i]);
    status_.push_back(ColStatus::kBasic);
    position_.push_back(i);
    // Swap the slack of row i for the artificial: B^-1 row i flips sign.
    status_[n_ + i] = ColStatus::kAtLower;
    position_[n_ + i] = -1;
    x_[n_ + i] = 0.0;
    head_[i] = col;
    binv_[static_cast<std::size_t>(i) * m_ + i] = -1.0;
  }
  const EngineStatus status = primal_loop();
  double infeasibility = 0.0;
  for (int k = 0; k < static_cast<int>(art_row_.size()); ++k) {
    infeasibility += x_[n_ + m_ + k];
  }
  cost_ = real_cost;
  cost_.resize(total_cols(), 0.0);
  for (int k = 0; k < static_cast<int>(art_row_.size()); ++k) {
    upper_[n_ + m_ + k] = 0.0;
  }
  if (status == EngineStatus::kIterationLimit) return status;
  if (infeasibility > 1e-7) return EngineStatus::kInfeasible;
  drop_artificials();
  compute_basic_values();
  return EngineStatus::kOptimal;
}

void SimplexEngine::drop_artificials() {
  std::vector<double> rho(m_);
  std::vector<double> alpha;
  for (int k = 0; k < static_cast<int>(art_row_.size()); ++k) {
    const int art = n_ + m_ + k;
    if (status_[art] != ColStatus::kBasic) continue;
    const int r = position_[art];
    std::copy_n(&binv_[static_cast<std::size_t>(r) * m_], m_, rho.begin());
    int best = -1;
    double best_mag = 1e-7;
    for (int j = 0; j < n_ + m_; ++j) {
      if (status_[j] == ColStatus::kBasic) continue;
      const double mag = std::abs(column_dot(j, rho));
      if (mag > best_mag) {
        best_mag = mag;
        best = j;
      }
    }
    if (best < 0) continue;
    ftran(best, alpha);
    status_[art] = ColStatus::kAtLower;
    x_[art] = 0.0;
    pivot(r, best, alpha);
  }
}

bool SimplexEngine::verify_and_refresh() {
  if (updates_since_refactor_ > 0 && !refactor()) {
    reset_slack_basis();
    return false;
  }
  compute_basic_values();
  return primal_infeasibility() <= 1e-7;
}

EngineStatus SimplexEngine::solve() {
  iteration_limit_ = iterations_ + 50LL * (m_ + total_cols()) + 10000;
  compute_basic_values();
  for (int attempt = 0; attempt < 3; ++attempt) {
    EngineStatus status;
    if (primal_infeasibility() <= kPrimalTol) {
      status = primal_loop();
    } else {
      std::vector<double> y;
      compute_duals(y);
      if (dual_feasible(y)) {
        status = dual_loop();
        if (status == EngineStatus::kOptimal) status = primal_loop();
      } else {
        status = phase_one();
        if (status == EngineStatus::kOptimal) status = primal_loop();
      }
    }
    if (status != EngineStatus::kOptimal) return status;
    if (verify_and_refresh()) return EngineStatus::kOptimal;
  }
  return EngineStatus::kIterationLimit;
}

EngineStatus SimplexEngine::resolve_after_bound_change() { return solve(); }

double SimplexEngine::objective() const {
  double sum = 0.0;
  for (int j = 0; j < n_; ++j) sum += p_.cost[j] * x_[j];
  return sum;
}

std::vector<double> SimplexEngine::row_duals() const {
  std::vector<double> y;
  compute_duals(y);
  return y;
}

std::vector<double> SimplexEngine::reduced_costs() const {
  std::vector<double> y;
  compute_duals(y);
  std::vector<double> d(n_);
  for (int j = 0; j < n_; ++j) d[j] = reduced_cost(j, y);
  return d;
}

}  // namespace ncg::lp::detail
