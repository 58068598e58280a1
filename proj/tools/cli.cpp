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

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ncg/error.hpp"
#include "ncg/guardband.hpp"
#include "ncg/oracle.hpp"
#include "ncg/topology.hpp"

namespace ncg::cli {

namespace {

using nlohmann::json;

std::string exact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string one_decimal(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", round1(v));
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else if (c != '\r' && c != '\n') {
      out.back() += c;
    }
  }
  if (quoted) throw ParseError("unterminated quote in CSV row");
  return out;
}

double to_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError(std::string("bad ") + what + " '" + s + "'");
}

int to_int(const std::string& s, const char* what) {
  const double v = to_double(s, what);
  if (v != static_cast<int>(v)) throw ParseError(std::string("bad ") + what + " '" + s + "'");
  return static_cast<int>(v);
}

// Named reference topology, else a topology file.
std::shared_ptr<const Topology> resolve_topology(const std::string& spec) {
  if (auto t = reference_topology(spec)) return std::make_shared<const Topology>(std::move(*t));
  if (!std::filesystem::exists(spec)) {
    throw ParseError("unknown topology '" + spec + "' (not a built-in name or a file)");
  }
  return std::make_shared<const Topology>(load_topology_file(spec));
}

std::string load_label(double tbps) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tbps);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path);
  f << text;
  if (!f) throw Error("cannot write " + path.string());
}

struct Options {
  std::vector<std::string> instances;
  std::string topology;
  double load_tbps = 0.0;
  std::uint64_t seed = 1;
  int spectrum = 0;
  bool aggregate = false;
  double gap = 0.1;
  double tolerance = kImprovementTolerance;
  int threads = 1;
  bool deterministic = false;
  bool guardband = false;
  double time_limit = 0.0;
  bool require_certified = false;
  std::string out_dir = ".";
  std::string out;
  std::string format = "md";
};

void add_source_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--instance", o.instances, "Instance file (repeatable)");
  cmd.add_option("--topology", o.topology, "Built-in topology name or topology file");
  cmd.add_option("--load-tbps", o.load_tbps, "Offered load to generate, Tbps")->check(CLI::PositiveNumber);
  cmd.add_option("--seed", o.seed, "Traffic seed");
  cmd.add_option("--spectrum", o.spectrum, "Spectrum slots |S| (overrides the file)")
      ->check(CLI::PositiveNumber);
  cmd.add_flag("--aggregate", o.aggregate, "Merge requests per node pair first");
}

void add_solver_flags(CLI::App& cmd, Options& o) {
  cmd.add_option("--gap", o.gap, "Relative gap of the final ILP")->check(CLI::Range(0.0, 0.999999));
  cmd.add_option("--tolerance", o.tolerance, "Reduced-cost tolerance")->check(CLI::PositiveNumber);
  cmd.add_option("--threads", o.threads, "Pricing threads (0 = all cores)")->check(CLI::NonNegativeNumber);
  cmd.add_flag("--deterministic", o.deterministic, "Sequential pricing in slot order");
  cmd.add_flag("--guardband", o.guardband, "Price with derived guard-band requests");
  cmd.add_option("--time-limit", o.time_limit, "Seconds; 0 = none")->check(CLI::NonNegativeNumber);
}

std::vector<Instance> gather_instances(const Options& o) {
  std::vector<Instance> out;
  for (const std::string& path : o.instances) {
    Instance inst = load_instance_file(path);
    if (inst.name().empty()) inst = inst.with_name(std::filesystem::path(path).stem().string());
    out.push_back(std::move(inst));
  }
  if (!o.topology.empty()) {
    auto topo = resolve_topology(o.topology);
    const std::string base = topo->name().empty() ? std::filesystem::path(o.topology).stem().string()
                                                  : topo->name();
    out.push_back(generate_inoc_style(topo, o.load_tbps * 1000.0, o.seed,
                                      o.spectrum > 0 ? o.spectrum : 320)
                      .with_name(base + "_" + load_label(o.load_tbps)));
  }
  for (Instance& inst : out) {
    if (o.spectrum > 0 && inst.spectrum_slots() != o.spectrum) {
      inst = Instance(inst.topology_ptr(), o.spectrum, inst.requests(), inst.slot_rate_gbps(),
                      inst.name());
    }
    if (o.aggregate) inst = inst.aggregated();
  }
  return out;
}

SolveConfig solve_config(const Options& o) {
  SolveConfig c;
  c.final_ilp_relative_gap = o.gap;
  c.tolerance = o.tolerance;
  c.threads = o.threads;
  c.parallel_pricing = o.threads != 1;
  c.deterministic = o.deterministic;
  c.guardband = o.guardband;
  c.time_limit_seconds = o.time_limit;
  return c;
}

int cmd_generate(const Options& o, std::ostream& out) {
  auto topo = resolve_topology(o.topology);
  const std::string base = topo->name().empty() ? std::filesystem::path(o.topology).stem().string()
                                                : topo->name();
  Instance inst = generate_inoc_style(topo, o.load_tbps * 1000.0, o.seed,
                                      o.spectrum > 0 ? o.spectrum : 320)
                      .with_name(base + "_" + load_label(o.load_tbps));
  if (o.aggregate) inst = inst.aggregated();
  const std::string text = save_instance(inst);
  if (o.out == "-") {
    out << text << "\n";
    return kExitOk;
  }
  std::filesystem::path path = o.out;
  if (path.empty()) {
    std::filesystem::create_directories(o.out_dir);
    path = std::filesystem::path(o.out_dir) / (inst.name() + ".json");
  }
  write_file(path, text + "\n");
  out << "wrote " << path.string() << ": " << inst.request_count() << " requests, "
      << inst.total_demand_slots() << " slots, " << one_decimal(inst.offered_load_gbps() / 1000.0)
      << " Tbps\n";
  return kExitOk;
}

int cmd_solve(const Options& o, std::ostream& out, std::ostream& err) {
  const std::vector<Instance> instances = gather_instances(o);
  const SolveConfig config = solve_config(o);
  std::vector<RunRow> rows;
  json plans = json::array();
  json runs = json::array();
  bool all_certified = true;
  for (const Instance& inst : instances) {
    const SolveOutcome result = solve(inst, config);
    rows.push_back(make_row(result.report));
    plans.push_back(json::parse(plan_json(inst, result.plan)));
    runs.push_back(json::parse(report_json(result.report)));
    if (!result.report.certified) {
      all_certified = false;
      err << "warning: " << inst.name() << ": pricing bound not certified"
          << (result.report.timed_out ? " (time limit)" : "") << "\n";
    }
  }
  const std::filesystem::path dir = o.out_dir;
  std::filesystem::create_directories(dir);
  write_file(dir / "report.csv", to_csv(rows));
  write_file(dir / "report.md", to_markdown(rows));
  write_file(dir / "plan.json", plans.dump(2) + "\n");
  write_file(dir / "run.json", runs.dump(2) + "\n");

  if (o.format == "csv") {
    out << to_csv(rows);
  } else if (o.format == "json") {
    out << runs.dump(2) << "\n";
  } else {
    out << to_markdown(rows);
  }
  return o.require_certified && !all_certified ? kExitUncertified : kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const std::vector<Instance> instances = gather_instances(o);
  SolveConfig config = solve_config(o);
  config.final_ilp_relative_gap = o.gap;
  config.deterministic = true;
  bool ok = true;
  for (const Instance& inst : instances) {
    const auto items = o.guardband ? derived_items(inst) : singleton_items(inst);
    const OracleResult oracle = oracle_solve(inst, items);  // throws LimitsExceeded first
    const SolveReport rep = solve(inst, config).report;
    const bool holds = rep.z_ilp_tilde <= static_cast<double>(oracle.optimum) &&
                       static_cast<double>(oracle.optimum) <= rep.z_lp_star + 1e-6;
    out << inst.name() << ": z_ILP " << rep.z_ilp_tilde << " <= z_oracle " << oracle.optimum
        << " <= z_LP* " << exact(rep.z_lp_star) << " (slots) "
        << (holds ? "holds" : rep.certified ? "VIOLATED" : "fails, run not certified") << "\n";
    ok = ok && (holds || !rep.certified);
  }
  return ok ? kExitOk : kExitFailure;
}

}  // namespace

RunRow make_row(const SolveReport& r) {
  RunRow row;
  row.instance = r.instance_name;
  row.spectrum_slots = r.spectrum_slots;
  row.requests = r.requests;
  row.load_tbps = r.offered_load_tbps();
  row.z_lp_tbps = r.z_lp_star_tbps();
  row.z_ilp_tbps = r.z_ilp_tilde_tbps();
  row.epsilon_percent = r.epsilon_tab;
  row.gos_percent = r.gos_percent;
  row.lp_seconds = r.timings.lp_phase;
  row.ilp_seconds = r.timings.ilp_phase;
  row.total_seconds = r.timings.total;
  row.certified = r.certified;
  return row;
}

std::string csv_header() {
  return "instance,spectrum_slots,requests,load_tbps,z_lp_tbps,z_ilp_tbps,epsilon_percent,"
         "gos_percent,lp_seconds,ilp_seconds,total_seconds,certified";
}

std::string to_csv(const RunRow& r) {
  std::string s = csv_field(r.instance);
  s += "," + std::to_string(r.spectrum_slots) + "," + std::to_string(r.requests);
  for (double v : {r.load_tbps, r.z_lp_tbps, r.z_ilp_tbps}) s += "," + exact(v);
  s += "," + (r.epsilon_percent ? exact(*r.epsilon_percent) : std::string());
  for (double v : {r.gos_percent, r.lp_seconds, r.ilp_seconds, r.total_seconds}) s += "," + exact(v);
  s += r.certified ? ",true" : ",false";
  return s;
}

RunRow parse_csv_row(std::string_view line) {
  const std::vector<std::string> f = split_csv(line);
  if (f.size() != 12) {
    throw ParseError("expected 12 CSV fields, got " + std::to_string(f.size()));
  }
  RunRow r;
  r.instance = f[0];
  r.spectrum_slots = to_int(f[1], "spectrum_slots");
  r.requests = to_int(f[2], "requests");
  r.load_tbps = to_double(f[3], "load_tbps");
  r.z_lp_tbps = to_double(f[4], "z_lp_tbps");
  r.z_ilp_tbps = to_double(f[5], "z_ilp_tbps");
  if (!f[6].empty()) r.epsilon_percent = to_double(f[6], "epsilon_percent");
  r.gos_percent = to_double(f[7], "gos_percent");
  r.lp_seconds = to_double(f[8], "lp_seconds");
  r.ilp_seconds = to_double(f[9], "ilp_seconds");
  r.total_seconds = to_double(f[10], "total_seconds");
  if (f[11] != "true" && f[11] != "false") throw ParseError("bad certified '" + f[11] + "'");
  r.certified = f[11] == "true";
  return r;
}

std::string to_csv(const std::vector<RunRow>& rows) {
  std::string s = csv_header() + "\n";
  for (const RunRow& r : rows) s += to_csv(r) + "\n";
  return s;
}

std::string to_markdown(const std::vector<RunRow>& rows) {
  std::string s =
      "| Instance | \\|S\\| | \\|D\\| | Load (Tbps) | z_LP* (Tbps) | z_ILP (Tbps) | eps (%) "
      "| GoS (%) | LP (s) | ILP (s) | Total (s) | Certified |\n"
      "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|---:|:---:|\n";
  for (const RunRow& r : rows) {
    s += "| " + r.instance + " | " + std::to_string(r.spectrum_slots) + " | " +
         std::to_string(r.requests) + " | " + one_decimal(r.load_tbps) + " | " +
         one_decimal(r.z_lp_tbps) + " | " + one_decimal(r.z_ilp_tbps) + " | " +
         (r.epsilon_percent ? one_decimal(*r.epsilon_percent) : std::string("-")) + " | " +
         one_decimal(r.gos_percent) + " | " + one_decimal(r.lp_seconds) + " | " +
         one_decimal(r.ilp_seconds) + " | " + one_decimal(r.total_seconds) + " | " +
         (r.certified ? "yes" : "no") + " |\n";
  }
  return s;
}

std::string report_json(const SolveReport& r, int indent) {
  json j;
  j["instance"] = r.instance_name;
  j["spectrum_slots"] = r.spectrum_slots;
  j["requests"] = r.requests;
  j["offered_load_gbps"] = r.offered_load_gbps;
  j["slot_rate_gbps"] = r.slot_rate_gbps;
  j["z_lp_star_slots"] = r.z_lp_star;
  j["z_ilp_slots"] = r.z_ilp_tilde;
  j["z_lp_star_tbps"] = r.z_lp_star_tbps();
  j["z_ilp_tbps"] = r.z_ilp_tilde_tbps();
  j["ilp_gap"] = r.ilp_gap;
  j["epsilon_lp_percent"] = r.epsilon_lp;
  j["epsilon_tab_percent"] = r.epsilon_tab ? json(*r.epsilon_tab) : json(nullptr);
  j["gos_percent"] = r.gos_percent;
  j["certified"] = r.certified;
  j["timed_out"] = r.timed_out;
  j["columns_generated"] = r.columns_generated;
  j["columns_final"] = r.columns_final;
  j["outer_iterations"] = r.outer_iterations;
  j["seconds"] = {{"lp", r.timings.lp_phase}, {"ilp", r.timings.ilp_phase},
                  {"total", r.timings.total}};
  j["lp_trace"] = r.lp_trace;
  j["lp_trace_after_prune"] = r.lp_trace_after_prune;
  j["final_rc_lp_star"] = r.final_rc_lp_star;
  return j.dump(indent);
}

std::string plan_json(const Instance& instance, const ProvisioningPlan& plan, int indent) {
  const Topology& topo = instance.topology();
  json served = json::array();
  for (const PlannedLightpath& lp : plan.lightpaths) {
    json nodes = json::array();
    for (NodeId n : path_nodes(topo, lp.path)) nodes.push_back(topo.node_name(n));
    for (int k : lp.requests) {
      const Request& r = instance.request(k);
      json e;
      e["request"] = k;
      e["source"] = topo.node_name(r.source);
      e["dest"] = topo.node_name(r.dest);
      e["demand_slots"] = r.demand;
      e["path"] = nodes;
      e["start_slot"] = lp.start_slot;
      e["width"] = lp.width;
      if (lp.requests.size() > 1) e["shared_with"] = lp.requests;
      served.push_back(std::move(e));
    }
  }
  json j;
  j["instance"] = instance.name();
  j["spectrum_slots"] = instance.spectrum_slots();
  j["slot_rate_gbps"] = plan.slot_rate_gbps;
  j["served_slots"] = plan.served_slots;
  j["throughput_tbps"] = plan.throughput_tbps();
  j["lightpaths"] = plan.lightpaths.size();
  j["requests"] = std::move(served);
  return j.dump(indent);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Routing and spectrum assignment by nested column generation", "ncg"};
  app.require_subcommand(1);
  Options o;

  CLI::App* gen = app.add_subcommand("generate", "Write a seeded random instance");
  gen->add_option("--topology", o.topology, "Built-in topology name or topology file")->required();
  gen->add_option("--load-tbps", o.load_tbps, "Offered load, Tbps")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", o.seed, "Traffic seed");
  gen->add_option("--spectrum", o.spectrum, "Spectrum slots |S| (default 320)")->check(CLI::PositiveNumber);
  gen->add_flag("--aggregate", o.aggregate, "Merge requests per node pair");
  gen->add_option("--out", o.out, "Output file; '-' for stdout (default <out-dir>/<name>.json)");
  gen->add_option("--out-dir", o.out_dir, "Output directory");

  CLI::App* sol = app.add_subcommand("solve", "Solve instances and write plan and report");
  add_source_flags(*sol, o);
  add_solver_flags(*sol, o);
  sol->add_flag("--require-certified", o.require_certified, "Exit 2 unless every run is certified");
  sol->add_option("--out-dir", o.out_dir, "Output directory");
  sol->add_option("--format", o.format, "Table printed on stdout")
      ->check(CLI::IsMember({"csv", "md", "json"}));

  CLI::App* ver = app.add_subcommand("verify", "Compare the solver with the exhaustive oracle");
  add_source_flags(*ver, o);
  add_solver_flags(*ver, o);
  ver->get_option("--gap")->default_val(0.0);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    for (CLI::App* cmd : {sol, ver}) {
      if (!cmd->parsed()) continue;
      if (o.instances.empty() && o.topology.empty()) {
        throw CLI::ValidationError("need --instance or --topology with --load-tbps");
      }
      if (!o.topology.empty() && o.load_tbps <= 0.0) {
        throw CLI::ValidationError("--topology needs --load-tbps");
      }
    }
  } catch (const CLI::CallForHelp&) {
    const CLI::App* shown = &app;
    for (const CLI::App* cmd : {gen, sol, ver}) {
      if (cmd->parsed()) shown = cmd;
    }
    out << shown->help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_generate(o, out);
    if (sol->parsed()) return cmd_solve(o, out, err);
    return cmd_verify(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ncg::cli
