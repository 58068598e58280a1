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

#include "ncg/topology.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ncg/error.hpp"

namespace ncg {

Topology::Topology(std::vector<std::string> node_names,
                   std::vector<std::pair<NodeId, NodeId>> edges,
                   std::string name)
    : name_(std::move(name)), node_names_(std::move(node_names)) {
  const int n = node_count();
  std::set<std::string> seen_names;
  for (const auto& node : node_names_) {
    if (node.empty()) throw InvariantViolation("empty node name");
    if (!seen_names.insert(node).second) {
      throw InvariantViolation("duplicate node '" + node + "'");
    }
  }
  adjacency_.assign(n, {});
  std::set<std::pair<NodeId, NodeId>> seen_edges;
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) {
      throw InvariantViolation("link endpoint outside the node list");
    }
    if (a == b) {
      throw InvariantViolation("self loop on node '" + node_names_[a] + "'");
    }
    if (!seen_edges.insert(std::minmax(a, b)).second) {
      throw InvariantViolation("duplicate link " + node_names_[a] + "-" +
                               node_names_[b]);
    }
    const LinkId id = link_count();
    links_.push_back(Link{id, a, b});
    adjacency_[a].push_back(id);
    adjacency_[b].push_back(id);
  }
}

std::optional<NodeId> Topology::find_node(std::string_view name) const {
  auto it = std::find(node_names_.begin(), node_names_.end(), name);
  if (it == node_names_.end()) return std::nullopt;
  return static_cast<NodeId>(it - node_names_.begin());
}

std::optional<LinkId> Topology::link_between(NodeId a, NodeId b) const {
  for (LinkId id : adjacency_.at(a)) {
    if (links_[id].other(a) == b) return id;
  }
  return std::nullopt;
}

bool Topology::connected() const {
  if (node_count() == 0) return true;
  std::vector<bool> seen(node_count(), false);
  std::vector<NodeId> stack = {0};
  seen[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    NodeId u = stack.back();
    stack.pop_back();
    for (LinkId id : adjacency_[u]) {
      NodeId v = links_[id].other(u);
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == node_count();
}

std::vector<NodeId> path_nodes(const Topology& topology, const Path& path) {
  std::vector<NodeId> nodes = {path.source};
  NodeId at = path.source;
  for (LinkId id : path.links) {
    if (id < 0 || id >= topology.link_count()) {
      throw InvariantViolation("path references unknown link " +
                               std::to_string(id));
    }
    const Link& link = topology.link(id);
    if (!link.touches(at)) {
      throw InvariantViolation("path links do not chain");
    }
    at = link.other(at);
    nodes.push_back(at);
  }
  if (at != path.dest) throw InvariantViolation("path does not reach dest");
  return nodes;
}

bool is_simple_path(const Topology& topology, const Path& path) {
  if (path.links.empty() || path.source == path.dest) return false;
  std::vector<NodeId> nodes;
  try {
    nodes = path_nodes(topology, path);
  } catch (const InvariantViolation&) {
    return false;
  }
  std::sort(nodes.begin(), nodes.end());
  return std::adjacent_find(nodes.begin(), nodes.end()) == nodes.end();
}

namespace {

struct Label {
  double weight = std::numeric_limits<double>::infinity();
  int hops = std::numeric_limits<int>::max();

  bool reached() const { return hops != std::numeric_limits<int>::max(); }
};

bool better(const Label& x, const Label& y, double tol) {
  if (!y.reached()) return x.reached();
  if (!x.reached()) return false;
  if (x.weight < y.weight - tol) return true;
  if (x.weight > y.weight + tol) return false;
  return x.hops < y.hops;
}

}  // namespace

std::optional<ShortestPath> shortest_path(const Topology& topology,
                                          NodeId source, NodeId dest,
                                          std::span<const double> weights,
                                          double tie_tolerance) {
  const int n = topology.node_count();
  if (source < 0 || source >= n || dest < 0 || dest >= n) {
    throw UnknownNode("shortest_path endpoint outside the topology");
  }
  if (static_cast<int>(weights.size()) != topology.link_count()) {
    throw InvariantViolation("one weight per link expected");
  }
  if (source == dest) return ShortestPath{Path{source, dest, {}}, 0.0};

  // Labels are distances *to* dest so the forward walk below can pick the
  // smallest link id at every step among links that stay on an optimal
  // (weight, hops) path.
  std::vector<Label> label(n);
  std::vector<bool> done(n, false);
  label[dest] = Label{0.0, 0};
  for (int round = 0; round < n; ++round) {
    NodeId u = -1;
    for (NodeId v = 0; v < n; ++v) {
      if (!done[v] && label[v].reached() &&
          (u < 0 || better(label[v], label[u], 0.0))) {
        u = v;
      }
    }
    if (u < 0) break;
    done[u] = true;
    for (LinkId id : topology.incident(u)) {
      NodeId v = topology.link(id).other(u);
      if (done[v]) continue;
      Label candidate{label[u].weight + weights[id], label[u].hops + 1};
      if (better(candidate, label[v], tie_tolerance)) label[v] = candidate;
    }
  }
  if (!label[source].reached()) return std::nullopt;

  ShortestPath result;
  result.path.source = source;
  result.path.dest = dest;
  NodeId at = source;
  while (at != dest) {
    const Label& here = label[at];
    LinkId chosen = -1;
    for (LinkId id : topology.incident(at)) {
      NodeId v = topology.link(id).other(at);
      const Label& next = label[v];
      if (!next.reached() || next.hops + 1 != here.hops) continue;
      if (std::abs(next.weight + weights[id] - here.weight) <= tie_tolerance) {
        chosen = id;
        break;
      }
    }
    if (chosen < 0) {
      throw Error("shortest_path: inconsistent labels while tracing");
    }
    result.path.links.push_back(chosen);
    result.weight += weights[chosen];
    at = topology.link(chosen).other(at);
  }
  return result;
}

namespace {

std::string trim(std::string_view s) {
  const auto* ws = " \t\r\n";
  const auto first = s.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(ws);
  return std::string(s.substr(first, last - first + 1));
}

std::string json_node_name(const nlohmann::json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  throw ParseError("topology: node ids must be strings or integers");
}

Topology parse_json_topology(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("topology: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("nodes") || !doc.contains("links")) {
    throw ParseError("topology: expected an object with 'nodes' and 'links'");
  }
  std::vector<std::string> names;
  for (const auto& node : doc.at("nodes")) names.push_back(json_node_name(node));
  std::vector<std::pair<NodeId, NodeId>> edges;
  auto lookup = [&](const std::string& name) {
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
      throw InvariantViolation("topology: link references unknown node '" +
                               name + "'");
    }
    return static_cast<NodeId>(it - names.begin());
  };
  std::size_t index = 0;
  for (const auto& link : doc.at("links")) {
    if (!link.is_array() || link.size() != 2) {
      throw ParseError("topology: links[" + std::to_string(index) +
                       "] must be a two-element array");
    }
    edges.emplace_back(lookup(json_node_name(link[0])),
                       lookup(json_node_name(link[1])));
    ++index;
  }
  std::string name = doc.value("name", std::string{});
  return Topology(std::move(names), std::move(edges), std::move(name));
}

Topology parse_text_topology(std::string_view text) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> raw_links;
  std::vector<int> link_lines;
  std::string name;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string keyword;
    fields >> keyword;
    std::vector<std::string> args;
    for (std::string arg; fields >> arg;) args.push_back(arg);
    if (keyword == "name") {
      if (args.size() != 1) {
        throw ParseError("topology line " + std::to_string(line_no) +
                         ": 'name' takes one field");
      }
      name = args[0];
    } else if (keyword == "nodes" || keyword == "node") {
      if (args.empty()) {
        throw ParseError("topology line " + std::to_string(line_no) +
                         ": 'nodes' needs at least one id");
      }
      names.insert(names.end(), args.begin(), args.end());
    } else if (keyword == "link") {
      if (args.size() != 2) {
        throw ParseError("topology line " + std::to_string(line_no) +
                         ": 'link' takes two endpoints");
      }
      raw_links.emplace_back(args[0], args[1]);
      link_lines.push_back(line_no);
    } else {
      throw ParseError("topology line " + std::to_string(line_no) +
                       ": unknown keyword '" + keyword + "'");
    }
  }
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (std::size_t i = 0; i < raw_links.size(); ++i) {
    auto lookup = [&](const std::string& node) {
      auto it = std::find(names.begin(), names.end(), node);
      if (it == names.end()) {
        throw InvariantViolation("topology line " +
                                 std::to_string(link_lines[i]) +
                                 ": unknown node '" + node + "'");
      }
      return static_cast<NodeId>(it - names.begin());
    };
    edges.emplace_back(lookup(raw_links[i].first), lookup(raw_links[i].second));
  }
  try {
    return Topology(std::move(names), std::move(edges), std::move(name));
  } catch (const InvariantViolation& e) {
    throw InvariantViolation(std::string("topology: ") + e.what());
  }
}

}  // namespace

Topology load_topology(std::string_view text) {
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') return parse_json_topology(body);
  return parse_text_topology(text);
}

Topology load_topology_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open topology file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_topology(buffer.str());
}

std::string save_topology(const Topology& topology) {
  std::ostringstream out;
  if (!topology.name().empty()) out << "name " << topology.name() << '\n';
  out << "nodes";
  for (const auto& node : topology.node_names()) out << ' ' << node;
  out << '\n';
  for (const Link& link : topology.links()) {
    out << "link " << topology.node_name(link.a) << ' '
        << topology.node_name(link.b) << '\n';
  }
  return out.str();
}

}  // namespace ncg
