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

#include "l2p/query/match.h"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "l2p/common/errors.h"
#include "l2p/graph/label_similarity.h"

namespace l2p {

double score_match(const GraphQuery& q, const Mapping& phi, const DataGraph& g) {
  if (phi.size() != q.num_nodes()) throw InvalidMatchError("mapping size does not match the query");
  std::unordered_set<NodeId> images;
  double score = 0.0;
  for (QueryNodeId u = 0; u < q.num_nodes(); ++u) {
    if (phi[u] == kNoNode) continue;
    if (phi[u] >= g.num_nodes()) throw InvalidMatchError("mapping targets a node outside the graph");
    if (!images.insert(phi[u]).second) throw InvalidMatchError("mapping is not injective");
    score += label_similarity(q.node_labels[u], g.node_label_text(phi[u]));
  }
  for (const auto& e : q.edges) {
    if (phi[e.src] == kNoNode || phi[e.dst] == kNoNode) continue;
    auto labels = g.edge_labels_between(phi[e.src], phi[e.dst]);
    if (labels.empty()) {
      throw InvalidMatchError("query edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) +
                              " is not realized in the data graph");
    }
    double best = 0.0;
    for (LabelId l : labels) best = std::max(best, label_similarity(e.label, g.edge_labels().text(l)));
    score += best;
  }
  return score;
}

Mapping to_mapping(const PartialMatch& m, const StarQuery& star, std::size_t num_query_nodes) {
  Mapping phi(num_query_nodes, kNoNode);
  for (std::size_t p = 0; p < m.binding.size(); ++p) phi[star.node_at(p)] = m.binding[p];
  return phi;
}

std::optional<CompleteMatch> join(const PartialMatch& m1, const PartialMatch& m2, const std::vector<StarQuery>& stars,
                                  const GraphQuery& q, const DataGraph& g) {
  if (m1.star == m2.star) throw InvalidMatchError("join requires partial matches of distinct stars");
  Mapping phi = to_mapping(m1, stars.at(m1.star), q.num_nodes());
  const auto& s2 = stars.at(m2.star);
  for (std::size_t p = 0; p < m2.binding.size(); ++p) {
    QueryNodeId u = s2.node_at(p);
    if (phi[u] == kNoNode) {
      phi[u] = m2.binding[p];
    } else if (phi[u] != m2.binding[p]) {
      return std::nullopt;
    }
  }
  std::vector<NodeId> images;
  for (NodeId v : phi) {
    if (v != kNoNode) images.push_back(v);
  }
  std::sort(images.begin(), images.end());
  if (std::adjacent_find(images.begin(), images.end()) != images.end()) return std::nullopt;
  // An edge of a third star between two mapped nodes may be unrealized; such a
  // union cannot grow into a complete match.
  for (const auto& e : q.edges) {
    if (phi[e.src] != kNoNode && phi[e.dst] != kNoNode && g.edge_labels_between(phi[e.src], phi[e.dst]).empty()) {
      return std::nullopt;
    }
  }
  double score = score_match(q, phi, g);
  return CompleteMatch{std::move(phi), score};
}

}  // namespace l2p
