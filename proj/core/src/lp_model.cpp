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
#include <cmath>
#include <sstream>

#include "ncg/error.hpp"
#include "ncg/lp.hpp"

namespace ncg::lp {

VarId Model::add_variable(double lower, double upper, double objective,
                          VarType type, std::string name) {
  return add_column(lower, upper, objective, {}, type, std::move(name));
}

VarId Model::add_column(double lower, double upper, double objective,
                        std::span<const ColumnEntry> entries, VarType type,
                        std::string name) {
  if (!std::isfinite(lower)) {
    throw InvariantViolation("variable lower bounds must be finite");
  }
  if (upper < lower) throw InvariantViolation("variable upper bound below lower");
  for (const auto& e : entries) {
    if (e.row.value < 0 || e.row.value >= constraint_count()) {
      throw UnknownId("column references unknown row " +
                      std::to_string(e.row.value));
    }
  }
  Variable v;
  v.id = VarId{static_cast<int>(vars_.size())};
  v.lower = lower;
  v.upper = upper;
  v.objective = objective;
  v.type = type;
  v.name = std::move(name);
  v.column.assign(entries.begin(), entries.end());
  vars_.push_back(std::move(v));
  alive_.push_back(true);
  order_.push_back(vars_.back().id);
  return vars_.back().id;
}

RowId Model::add_constraint(std::span<const Term> terms, double rhs,
                            std::string name) {
  if (!std::isfinite(rhs)) throw InvariantViolation("row rhs must be finite");
  for (const auto& t : terms) {
    if (!has_variable(t.var)) {
      throw UnknownId("constraint references unknown variable " +
                      std::to_string(t.var.value));
    }
  }
  const RowId id{static_cast<int>(rows_.size())};
  rows_.push_back(Constraint{id, rhs, std::move(name)});
  for (const auto& t : terms) {
    if (t.coeff != 0.0) vars_[t.var.value].column.push_back({id, t.coeff});
  }
  return id;
}

void Model::remove_variables(std::span<const VarId> ids) {
  for (VarId id : ids) {
    if (!has_variable(id)) {
      throw UnknownId("cannot remove unknown variable " + std::to_string(id.value));
    }
  }
  for (VarId id : ids) {
    alive_[id.value] = false;
    vars_[id.value].column.clear();
    vars_[id.value].column.shrink_to_fit();
  }
  std::erase_if(order_, [&](VarId id) { return !alive_[id.value]; });
}

void Model::set_bounds(VarId id, double lower, double upper) {
  if (!std::isfinite(lower) || upper < lower) {
    throw InvariantViolation("invalid bounds");
  }
  Variable& v = mutable_variable(id);
  v.lower = lower;
  v.upper = upper;
}

void Model::set_type(VarId id, VarType type) { mutable_variable(id).type = type; }

void Model::set_objective(VarId id, double objective) {
  mutable_variable(id).objective = objective;
}

bool Model::has_variable(VarId id) const {
  return id.value >= 0 && id.value < static_cast<int>(vars_.size()) &&
         alive_[id.value];
}

const Variable& Model::variable(VarId id) const {
  if (!has_variable(id)) {
    throw UnknownId("unknown variable " + std::to_string(id.value));
  }
  return vars_[id.value];
}

Variable& Model::mutable_variable(VarId id) {
  if (!has_variable(id)) {
    throw UnknownId("unknown variable " + std::to_string(id.value));
  }
  return vars_[id.value];
}

const Constraint& Model::constraint(RowId id) const {
  if (id.value < 0 || id.value >= constraint_count()) {
    throw UnknownId("unknown row " + std::to_string(id.value));
  }
  return rows_[id.value];
}

bool Model::operator==(const Model& other) const {
  if (rows_ != other.rows_ || order_ != other.order_) return false;
  for (VarId id : order_) {
    if (!(vars_[id.value] == other.vars_[id.value])) return false;
  }
  return true;
}

const char* to_string(Status status) {
  switch (status) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kNumericalFailure: return "numerical-failure";
    case Status::kLimitReached: return "limit-reached";
  }
  return "unknown";
}

namespace {

std::string var_name(const Variable& v) {
  return v.name.empty() ? "x" + std::to_string(v.id.value) : v.name;
}

void write_term(std::ostringstream& out, double coeff, const std::string& name,
                bool first) {
  if (coeff < 0) {
    out << (first ? "- " : " - ");
  } else if (!first) {
    out << " + ";
  }
  const double mag = std::abs(coeff);
  if (mag != 1.0) out << mag << ' ';
  out << name;
}

}  // namespace

std::string to_lp_format(const Model& model) {
  std::ostringstream out;
  out.precision(17);
  out << "Maximize\n obj:";
  bool first = true;
  for (VarId id : model.variables()) {
    const Variable& v = model.variable(id);
    if (v.objective == 0.0) continue;
    out << ' ';
    write_term(out, v.objective, var_name(v), first);
    first = false;
  }
  if (first) out << " 0";
  out << "\nSubject To\n";
  std::vector<std::vector<std::pair<double, std::string>>> rows(
      model.constraint_count());
  for (VarId id : model.variables()) {
    const Variable& v = model.variable(id);
    for (const auto& e : v.column) rows[e.row.value].emplace_back(e.coeff, var_name(v));
  }
  for (const Constraint& c : model.constraints()) {
    out << ' ' << (c.name.empty() ? "c" + std::to_string(c.id.value) : c.name)
        << ':';
    bool head = true;
    for (const auto& [coeff, name] : rows[c.id.value]) {
      out << ' ';
      write_term(out, coeff, name, head);
      head = false;
    }
    if (head) out << " 0 x_empty";
    out << " <= " << c.rhs << '\n';
  }
  out << "Bounds\n";
  std::vector<std::string> binaries;
  for (VarId id : model.variables()) {
    const Variable& v = model.variable(id);
    if (v.type == VarType::kBinary) binaries.push_back(var_name(v));
    out << ' ' << v.lower << " <= " << var_name(v) << " <= ";
    if (std::isinf(v.upper)) {
      out << "+inf\n";
    } else {
      out << v.upper << '\n';
    }
  }
  if (!binaries.empty()) {
    out << "Binaries\n";
    for (const auto& b : binaries) out << ' ' << b << '\n';
  }
  out << "End\n";
  return out.str();
}

}  // namespace ncg::lp
