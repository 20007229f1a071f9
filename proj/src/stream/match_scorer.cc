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

#include "l2p/stream/match_scorer.h"

#include <algorithm>

#include "l2p/graph/label_similarity.h"

namespace l2p {

MatchScorer::MatchScorer(const DataGraph& g, const GraphQuery& q, double theta) : graph_(&g), theta_(theta) {
  node_rows_.reserve(q.num_nodes());
  for (const auto& label : q.node_labels) {
    node_rows_.push_back(g.node_labels().similarity_row(utf8_to_code_points(label)));
  }
  edge_rows_.reserve(q.num_edges());
  for (const auto& e : q.edges) edge_rows_.push_back(g.edge_labels().similarity_row(utf8_to_code_points(e.label)));
}

double MatchScorer::edge_score(std::size_t e, NodeId src, NodeId dst) const {
  auto labels = graph_->edge_labels_between(src, dst);
  double best = -1.0;
  for (LabelId l : labels) best = std::max(best, edge_rows_[e][l]);
  return best;
}

std::vector<Candidate> MatchScorer::candidates(QueryNodeId u) const {
  const auto& row = node_rows_[u];
  std::vector<Candidate> out;
  for (LabelId l = 0; l < row.size(); ++l) {
    if (row[l] < theta_) continue;
    for (NodeId v : graph_->nodes_with_label(l)) out.push_back({v, row[l]});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.node < b.node;
  });
  return out;
}

double MatchScorer::score(const GraphQuery& q, const std::vector<NodeId>& mapping) const {
  double total = 0.0;
  for (QueryNodeId u = 0; u < q.num_nodes(); ++u) {
    if (mapping[u] != kNoNode) total += node_score(u, mapping[u]);
  }
  for (std::size_t e = 0; e < q.num_edges(); ++e) {
    const auto& edge = q.edges[e];
    if (mapping[edge.src] == kNoNode || mapping[edge.dst] == kNoNode) continue;
    total += edge_score(e, mapping[edge.src], mapping[edge.dst]);
  }
  return total;
}

}  // namespace l2p
