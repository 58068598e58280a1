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

// Command-line front end. The entry point takes its streams as arguments so
// the tests can drive it in-process.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ncg/driver.hpp"
#include "ncg/instance.hpp"
#include "ncg/master.hpp"

namespace ncg::cli {

// Exit codes. Batch scripts gate on these.
inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitUncertified = 2;
inline constexpr int kExitUsage = 64;

// One line of the results table: dataset, solution quality, CPU time.
struct RunRow {
  std::string instance;
  int spectrum_slots = 0;
  int requests = 0;
  double load_tbps = 0.0;
  double z_lp_tbps = 0.0;
  double z_ilp_tbps = 0.0;
  std::optional<double> epsilon_percent;  // table variant, relative to z_ILP
  double gos_percent = 0.0;
  double lp_seconds = 0.0;
  double ilp_seconds = 0.0;
  double total_seconds = 0.0;
  bool certified = false;

  bool operator==(const RunRow&) const = default;
};

RunRow make_row(const SolveReport& report);

std::string csv_header();
// Full precision, so parse_csv_row(to_csv(r)) == r.
std::string to_csv(const RunRow& row);
// Throws ParseError.
RunRow parse_csv_row(std::string_view line);
std::string to_csv(const std::vector<RunRow>& rows);  // header + rows

// Table with one-decimal display, one line per row in input order.
std::string to_markdown(const std::vector<RunRow>& rows);

std::string report_json(const SolveReport& report, int indent = 2);
std::string plan_json(const Instance& instance, const ProvisioningPlan& plan, int indent = 2);

// argv[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ncg::cli
