// Copyright 2026 The L2P Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "l2p/query/query_io.h"

#include <fstream>

#include "l2p/common/errors.h"

namespace l2p {

nlohmann::json query_to_json(const GraphQuery& q) {
  nlohmann::json nodes = nlohmann::json::array();
  for (std::size_t i = 0; i < q.node_labels.size(); ++i) nodes.push_back({{"id", i}, {"label", q.node_labels[i]}});
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : q.edges) edges.push_back({{"src", e.src}, {"label", e.label}, {"dst", e.dst}});
  return {{"id", q.id}, {"nodes", nodes}, {"edges", edges}};
}

GraphQuery query_from_json(const nlohmann::json& j) {
  try {
    GraphQuery q;
    q.id = j.value("id", std::string{});
    const auto& nodes = j.at("nodes");
    q.node_labels.resize(nodes.size());
    std::vector<bool> seen(nodes.size(), false);
    for (const auto& n : nodes) {
      auto id = n.at("id").get<std::size_t>();
      if (id >= nodes.size() || seen[id]) throw ParseError("query '" + q.id + "': node ids must be dense 0..n-1");
      seen[id] = true;
      q.node_labels[id] = n.at("label").get<std::string>();
    }
    for (const auto& e : j.at("edges")) {
      q.edges.push_back({e.at("src").get<QueryNodeId>(), e.at("label").get<std::string>(), e.at("dst").get<QueryNodeId>()});
    }
    q.validate();
    return q;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed query JSON: ") + e.what());
  }
}

std::vector<GraphQuery> load_queries(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError("cannot open " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(file.string() + ": " + e.what());
  }
  const nlohmann::json& list = j.is_array() ? j : j.at("queries");
  std::vector<GraphQuery> out;
  out.reserve(list.size());
  for (const auto& item : list) out.push_back(query_from_json(item));
  return out;
}

void save_queries(const std::vector<GraphQuery>& queries, const std::filesystem::path& file) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& q : queries) list.push_back(query_to_json(q));
  std::ofstream out(file);
  if (!out) throw ParseError("cannot write " + file.string());
  out << nlohmann::json{{"queries", list}}.dump(1) << '\n';
}

}  // namespace l2p
