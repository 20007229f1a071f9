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

#include <compare>
#include <optional>
#include <vector>

#include "l2p/common/types.h"
#include "l2p/graph/data_graph.h"
#include "l2p/query/graph_query.h"

namespace l2p {

/// Query node -> data node, indexed by query node id; kNoNode marks unmapped.
using Mapping = std::vector<NodeId>;

/// A match of one star. `binding[p]` is the image of star.node_at(p).
struct PartialMatch {
  StarIndex star = 0;
  std::vector<NodeId> binding;
  double score = 0.0;
};

struct CompleteMatch {
  Mapping mapping;
  double score = 0.0;
};

/// Score-descending order with lexicographic mapping as tie-break.
inline bool ranks_before(const CompleteMatch& a, const CompleteMatch& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.mapping < b.mapping;
}

/// Label similarity of every mapped node plus every query edge whose ends are
/// both mapped. A parallel data edge set scores by its best-matching label.
/// Throws InvalidMatchError on a non-injective mapping or an unrealized edge.
double score_match(const GraphQuery& q, const Mapping& phi, const DataGraph& g);

/// Expands a partial match into a query-wide mapping.
Mapping to_mapping(const PartialMatch& m, const StarQuery& star, std::size_t num_query_nodes);

/// Union of two partial matches from distinct stars, or nullopt when they
/// disagree on a shared query node or the union is not injective. The score
/// counts shared nodes once and equals score_match of the union.
std::optional<CompleteMatch> join(const PartialMatch& m1, const PartialMatch& m2, const std::vector<StarQuery>& stars,
                                  const GraphQuery& q, const DataGraph& g);

}  // namespace l2p
