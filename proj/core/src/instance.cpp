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

#include "ncg/instance.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include <json.hpp>

#include "ncg/error.hpp"

namespace ncg {

using nlohmann::json;

Instance::Instance(std::shared_ptr<const Topology> topology,
                   int spectrum_slots, std::vector<Request> requests,
                   double slot_rate_gbps, std::string name)
    : topology_(std::move(topology)),
      spectrum_slots_(spectrum_slots),
      slot_rate_gbps_(slot_rate_gbps),
      requests_(std::move(requests)),
      name_(std::move(name)) {
  if (!topology_) throw InvariantViolation("instance needs a topology");
  if (spectrum_slots_ <= 0) {
    throw InvariantViolation("spectrum must have at least one slot");
  }
  if (!(slot_rate_gbps_ > 0.0)) {
    throw InvariantViolation("slot rate must be positive");
  }
  const int n = topology_->node_count();
  for (std::size_t i = 0; i < requests_.size(); ++i) {
    Request& r = requests_[i];
    r.id = static_cast<int>(i);
    if (r.source < 0 || r.source >= n || r.dest < 0 || r.dest >= n) {
      throw UnknownNode("request " + std::to_string(i) +
                        " references a node outside the topology");
    }
    if (r.source == r.dest) {
      throw InvariantViolation("request " + std::to_string(i) +
                               " has identical endpoints");
    }
    if (r.demand < 1) {
      throw InvariantViolation("request " + std::to_string(i) +
                               " has non-positive demand");
    }
  }
}

long long Instance::total_demand_slots() const {
  long long total = 0;
  for (const auto& r : requests_) total += r.demand;
  return total;
}

Instance Instance::aggregated() const {
  return Instance(topology_, spectrum_slots_,
                  aggregate_per_node_pair(requests_), slot_rate_gbps_, name_);
}

Instance Instance::with_name(std::string name) const {
  Instance copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

bool Instance::operator==(const Instance& other) const {
  return *topology_ == *other.topology_ &&
         spectrum_slots_ == other.spectrum_slots_ &&
         slot_rate_gbps_ == other.slot_rate_gbps_ &&
         requests_ == other.requests_ && name_ == other.name_;
}

std::vector<Request> aggregate_per_node_pair(const std::vector<Request>& requests) {
  std::vector<Request> out;
  std::map<std::pair<NodeId, NodeId>, std::size_t> slot_of;
  for (const Request& r : requests) {
    const auto key = std::minmax(r.source, r.dest);
    auto [it, inserted] = slot_of.emplace(key, out.size());
    if (inserted) {
      Request merged;
      merged.id = static_cast<int>(out.size());
      merged.source = r.source;
      merged.dest = r.dest;
      merged.demand = 0;
      out.push_back(merged);
    }
    Request& target = out[it->second];
    target.demand += r.demand;
    if (r.members.empty()) {
      target.members.push_back(r.id);
    } else {
      target.members.insert(target.members.end(), r.members.begin(),
                            r.members.end());
    }
  }
  return out;
}

DemandSampler::DemandSampler(std::uint64_t seed) : engine_(seed) {}

double DemandSampler::unit() {
  // 53 high bits -> [0, 1); the engine is portable, std distributions are not.
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::uint64_t DemandSampler::below(std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = engine_.max() - engine_.max() % bound;
  std::uint64_t draw;
  do {
    draw = engine_();
  } while (draw >= limit);
  return draw % bound;
}

int DemandSampler::next() {
  const double u = unit();
  if (u < 0.7) return 4;
  if (u < 0.9) return 8;
  return 16;
}

Instance generate_inoc_style(std::shared_ptr<const Topology> topology,
                             double target_load_gbps, std::uint64_t seed,
                             int spectrum_slots, double slot_rate_gbps) {
  if (!(target_load_gbps > 0.0)) {
    throw InvariantViolation("target load must be positive");
  }
  if (topology->node_count() < 2) {
    throw InvariantViolation("generator needs at least two nodes");
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  for (NodeId a = 0; a < topology->node_count(); ++a) {
    for (NodeId b = a + 1; b < topology->node_count(); ++b) {
      pairs.emplace_back(a, b);
    }
  }
  DemandSampler sampler(seed);
  for (std::size_t i = pairs.size(); i > 1; --i) {
    std::swap(pairs[i - 1], pairs[sampler.below(i)]);
  }
  std::vector<Request> requests;
  double load = 0.0;
  std::size_t cursor = 0;
  while (load < target_load_gbps) {
    const auto& [a, b] = pairs[cursor];
    cursor = (cursor + 1) % pairs.size();
    Request r;
    r.source = a;
    r.dest = b;
    r.demand = sampler.next();
    load += r.demand * slot_rate_gbps;
    requests.push_back(r);
  }
  std::ostringstream name;
  name << (topology->name().empty() ? "net" : topology->name()) << '_'
       << target_load_gbps / 1000.0 << "T_s" << seed;
  return Instance(std::move(topology), spectrum_slots, std::move(requests),
                  slot_rate_gbps, name.str());
}

namespace {

std::string node_field(const json& value, const char* what, std::size_t index) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw ParseError("requests[" + std::to_string(index) + "]." + what +
                   " must be a node id");
}

}  // namespace

Instance load_instance(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("instance: top level must be an object");

  std::shared_ptr<const Topology> topology;
  if (doc.contains("topology")) {
    const json& inline_topology = doc.at("topology");
    topology = std::make_shared<Topology>(load_topology(
        inline_topology.is_string() ? inline_topology.get<std::string>()
                                    : inline_topology.dump()));
  } else if (doc.contains("topology_id")) {
    const std::string id = doc.at("topology_id").get<std::string>();
    auto ref = reference_topology(id);
    if (!ref) throw ParseError("instance: unknown topology_id '" + id + "'");
    topology = std::make_shared<Topology>(std::move(*ref));
  } else {
    throw ParseError("instance: needs 'topology' or 'topology_id'");
  }

  if (!doc.contains("spectrum_slots") ||
      !doc.at("spectrum_slots").is_number_integer()) {
    throw ParseError("instance: 'spectrum_slots' must be an integer");
  }
  const long long spectrum = doc.at("spectrum_slots").get<long long>();
  if (spectrum <= 0) throw ParseError("instance: spectrum_slots must be positive");
  const double rate = doc.value("slot_rate_gbps", kDefaultSlotRateGbps);
  if (!(rate > 0.0)) throw ParseError("instance: slot_rate_gbps must be positive");

  std::vector<Request> requests;
  const json requests_doc = doc.value("requests", json::array());
  if (!requests_doc.is_array()) throw ParseError("instance: 'requests' must be an array");
  for (std::size_t i = 0; i < requests_doc.size(); ++i) {
    const json& entry = requests_doc[i];
    if (!entry.is_object() || !entry.contains("src") || !entry.contains("dst") ||
        !entry.contains("demand_slots")) {
      throw ParseError("instance: requests[" + std::to_string(i) +
                       "] needs src, dst and demand_slots");
    }
    const std::string src = node_field(entry.at("src"), "src", i);
    const std::string dst = node_field(entry.at("dst"), "dst", i);
    auto s = topology->find_node(src);
    auto d = topology->find_node(dst);
    if (!s || !d) {
      throw UnknownNode("instance: requests[" + std::to_string(i) +
                        "] cites unknown node '" + (s ? dst : src) + "'");
    }
    if (!entry.at("demand_slots").is_number_integer()) {
      throw ParseError("instance: requests[" + std::to_string(i) +
                       "].demand_slots must be an integer");
    }
    const long long demand = entry.at("demand_slots").get<long long>();
    if (demand < 1) {
      throw ParseError("instance: requests[" + std::to_string(i) +
                       "].demand_slots must be positive");
    }
    Request r;
    r.source = *s;
    r.dest = *d;
    r.demand = static_cast<int>(demand);
    if (entry.contains("members")) r.members = entry.at("members").get<std::vector<int>>();
    requests.push_back(std::move(r));
  }
  try {
    return Instance(std::move(topology), static_cast<int>(spectrum),
                    std::move(requests), rate, doc.value("name", std::string{}));
  } catch (const InvariantViolation& e) {
    throw ParseError(std::string("instance: ") + e.what());
  }
}

Instance load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open instance file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_instance(buffer.str());
}

std::string save_instance(const Instance& instance) {
  json doc;
  if (!instance.name().empty()) doc["name"] = instance.name();
  const Topology& topology = instance.topology();
  auto reference = reference_topology(topology.name());
  if (reference && *reference == topology) {
    doc["topology_id"] = topology.name();
  } else {
    json t;
    if (!topology.name().empty()) t["name"] = topology.name();
    t["nodes"] = topology.node_names();
    t["links"] = json::array();
    for (const Link& link : topology.links()) {
      t["links"].push_back({topology.node_name(link.a), topology.node_name(link.b)});
    }
    doc["topology"] = std::move(t);
  }
  doc["spectrum_slots"] = instance.spectrum_slots();
  doc["slot_rate_gbps"] = instance.slot_rate_gbps();
  doc["requests"] = json::array();
  for (const Request& r : instance.requests()) {
    json entry = {{"src", topology.node_name(r.source)},
                  {"dst", topology.node_name(r.dest)},
                  {"demand_slots", r.demand}};
    if (!r.members.empty()) entry["members"] = r.members;
    doc["requests"].push_back(std::move(entry));
  }
  return doc.dump(2) + "\n";
}

}  // namespace ncg
