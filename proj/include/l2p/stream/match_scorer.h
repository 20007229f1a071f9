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

#pragma once

#include <vector>

#include "l2p/graph/data_graph.h"
#include "l2p/query/graph_query.h"

namespace l2p {

/// Per-query similarity tables over a data graph. Node and edge scores are
/// label similarities looked up by label id; this is also where structural
/// scoring terms would be folded in.
class MatchScorer {
 public:
  MatchScorer(const DataGraph& g, const GraphQuery& q, double theta);

  const DataGraph& graph() const { return *graph_; }
  double theta() const { return theta_; }

  double node_score(QueryNodeId u, NodeId v) const { return node_rows_[u][graph_->node_label(v)]; }
  bool admits(QueryNodeId u, NodeId v) const { return node_score(u, v) >= theta_; }

  /// Best label similarity over the data edges src -> dst for query edge `e`;
  /// negative when no such data edge exists.
  double edge_score(std::size_t e, NodeId src, NodeId dst) const;

  /// Nodes admitted for query node `u`, by score descending then id.
  std::vector<Candidate> candidates(QueryNodeId u) const;

  /// Reference score of a full or partial mapping, summed with nodes in id
  /// order, then edges in query order. Matches score_match bit for bit.
  double score(const GraphQuery& q, const std::vector<NodeId>& mapping) const;

 private:
  const DataGraph* graph_;
  double theta_;
  std::vector<std::vector<double>> node_rows_;  // [query node][node label id]
  std::vector<std::vector<double>> edge_rows_;  // [query edge][edge label id]
};

}  // namespace l2p
