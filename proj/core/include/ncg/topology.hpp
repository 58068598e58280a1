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

// Undirected fiber topology and the shortest-path query used by the
// lightpath generator.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ncg {

using NodeId = int;
using LinkId = int;

struct Link {
  LinkId id = 0;
  NodeId a = 0;
  NodeId b = 0;

  NodeId other(NodeId n) const { return n == a ? b : a; }
  bool touches(NodeId n) const { return n == a || n == b; }
  bool operator==(const Link&) const = default;
};

// Simple undirected graph. Nodes are dense indices 0..|V|-1 carrying a
// printable name; link ids are dense indices 0..|L|-1 in insertion order.
// Immutable once built, so concurrent read-only queries are safe.
class Topology {
 public:
  Topology() = default;

  // Throws InvariantViolation on self loops, duplicate links, duplicate
  // node names or endpoints outside the node list.
  Topology(std::vector<std::string> node_names,
           std::vector<std::pair<NodeId, NodeId>> edges,
           std::string name = {});

  const std::string& name() const { return name_; }
  int node_count() const { return static_cast<int>(node_names_.size()); }
  int link_count() const { return static_cast<int>(links_.size()); }

  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::string& node_name(NodeId n) const { return node_names_.at(n); }
  std::optional<NodeId> find_node(std::string_view name) const;

  const std::vector<Link>& links() const { return links_; }
  const Link& link(LinkId id) const { return links_.at(id); }
  // Link ids incident to a node, ascending.
  std::span<const LinkId> incident(NodeId n) const { return adjacency_.at(n); }
  std::optional<LinkId> link_between(NodeId a, NodeId b) const;

  bool connected() const;

  // Structural equality; the display name is ignored.
  bool operator==(const Topology& other) const {
    return node_names_ == other.node_names_ && links_ == other.links_;
  }

 private:
  std::string name_;
  std::vector<std::string> node_names_;
  std::vector<Link> links_;
  std::vector<std::vector<LinkId>> adjacency_;
};

// A routing path: link ids in travel order from source to destination.
struct Path {
  NodeId source = 0;
  NodeId dest = 0;
  std::vector<LinkId> links;

  int hops() const { return static_cast<int>(links.size()); }
  bool operator==(const Path&) const = default;
  auto operator<=>(const Path&) const = default;
};

// Node sequence implied by a path; throws InvariantViolation when the links
// do not chain from source to destination.
std::vector<NodeId> path_nodes(const Topology& topology, const Path& path);

// True when the links chain from source to dest without revisiting a node.
bool is_simple_path(const Topology& topology, const Path& path);

struct ShortestPath {
  Path path;
  double weight = 0.0;
};

// Minimum total weight path under non-negative per-link weights. Ties are
// broken by fewest hops, then by the lexicographically smallest link-id
// sequence. Weights within `tie_tolerance` of each other compare equal.
// Returns nullopt when dest is unreachable.
std::optional<ShortestPath> shortest_path(const Topology& topology,
                                          NodeId source, NodeId dest,
                                          std::span<const double> weights,
                                          double tie_tolerance = 1e-9);

// Parses the text or JSON topology format (chosen by sniffing the first
// non-blank character). Text format:
//
//   # comment
//   name spain21
//   nodes A B C
//   link A B
//   link B C
//
// JSON format: {"name": "...", "nodes": ["A", ...], "links": [["A","B"], ...]}
Topology load_topology(std::string_view text);
Topology load_topology_file(const std::string& path);
std::string save_topology(const Topology& topology);

// Built-in reference networks: "spain21" (21 nodes, 35 links) and "usa24"
// (24 nodes, 43 links).
std::vector<std::string> reference_topology_names();
std::optional<Topology> reference_topology(std::string_view name);
// Text-format source of a reference network, identical to the shipped
// data/topologies/<name>.txt file.
std::optional<std::string_view> reference_topology_text(std::string_view name);

}  // namespace ncg
