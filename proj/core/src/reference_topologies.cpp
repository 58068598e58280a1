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

#include <array>
#include <string_view>

#include "ncg/topology.hpp"

namespace ncg {
namespace {

// Keep in sync with data/topologies/*.txt (checked by the topology tests).
constexpr std::string_view kSpain21 = R"topo(# Spain backbone: 21 nodes, 35 links
# Reference topology shipped with ncg-rsa. Link ids follow file order.
name spain21
nodes Coruna Vigo Oviedo Leon Santander Bilbao Pamplona Zaragoza
nodes Barcelona Valladolid Salamanca Madrid Caceres Badajoz Toledo Valencia
nodes Albacete Murcia Sevilla Cordoba Malaga
link Coruna Vigo
link Coruna Oviedo
link Coruna Leon
link Vigo Leon
link Vigo Salamanca
link Oviedo Leon
link Oviedo Santander
link Leon Valladolid
link Santander Bilbao
link Santander Valladolid
link Bilbao Pamplona
link Bilbao Zaragoza
link Pamplona Zaragoza
link Zaragoza Barcelona
link Zaragoza Madrid
link Zaragoza Valencia
link Barcelona Valencia
link Valladolid Salamanca
link Valladolid Madrid
link Salamanca Caceres
link Salamanca Madrid
link Madrid Toledo
link Madrid Albacete
link Madrid Valencia
link Caceres Badajoz
link Caceres Toledo
link Badajoz Sevilla
link Toledo Cordoba
link Valencia Albacete
link Valencia Murcia
link Albacete Murcia
link Murcia Malaga
link Sevilla Cordoba
link Sevilla Malaga
link Cordoba Malaga
)topo";

constexpr std::string_view kUsa24 = R"topo(# US backbone: 24 nodes, 43 links
# Reference topology shipped with ncg-rsa. Link ids follow file order.
name usa24
nodes Seattle Portland SanFrancisco LosAngeles SanDiego SaltLakeCity Denver Phoenix
nodes Albuquerque Dallas Houston KansasCity Omaha Minneapolis Chicago StLouis
nodes Nashville Atlanta Miami Detroit Cleveland Pittsburgh WashingtonDC NewYork
link Seattle Portland
link Seattle SaltLakeCity
link Seattle Minneapolis
link Portland SanFrancisco
link Portland SaltLakeCity
link SanFrancisco LosAngeles
link SanFrancisco SaltLakeCity
link SanFrancisco Denver
link LosAngeles SanDiego
link LosAngeles Phoenix
link SanDiego Phoenix
link SaltLakeCity Denver
link Denver Albuquerque
link Denver Omaha
link Denver KansasCity
link Phoenix Albuquerque
link Phoenix Dallas
link Albuquerque Dallas
link Dallas Houston
link Dallas KansasCity
link Dallas Atlanta
link Houston Atlanta
link Houston Miami
link KansasCity Omaha
link KansasCity StLouis
link Omaha Minneapolis
link Omaha Chicago
link Minneapolis Chicago
link Chicago StLouis
link Chicago Detroit
link Chicago Cleveland
link StLouis Nashville
link Nashville Atlanta
link Nashville Cleveland
link Atlanta Miami
link Atlanta WashingtonDC
link Miami WashingtonDC
link Detroit Cleveland
link Detroit NewYork
link Cleveland Pittsburgh
link Pittsburgh WashingtonDC
link Pittsburgh NewYork
link WashingtonDC NewYork
)topo";

struct NamedText {
  std::string_view name;
  std::string_view text;
};

constexpr std::array<NamedText, 2> kReferences = {{
    {"spain21", kSpain21},
    {"usa24", kUsa24},
}};

}  // namespace

std::vector<std::string> reference_topology_names() {
  std::vector<std::string> names;
  for (const auto& ref : kReferences) names.emplace_back(ref.name);
  return names;
}

std::optional<std::string_view> reference_topology_text(std::string_view name) {
  for (const auto& ref : kReferences) {
    if (ref.name == name) return ref.text;
  }
  return std::nullopt;
}

std::optional<Topology> reference_topology(std::string_view name) {
  auto text = reference_topology_text(name);
  if (!text) return std::nullopt;
  return load_topology(*text);
}

}  // namespace ncg
