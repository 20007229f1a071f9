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

#include <cstddef>
#include <string>
#include <vector>

#include "l2p/common/types.h"

namespace l2p {

struct QueryEdge {
  QueryNodeId src;
  std::string label;
  QueryNodeId dst;
  bool operator==(const QueryEdge&) const = default;
};

/// A labeled query graph. Node ids are positions in `node_labels`.
struct GraphQuery {
  std::string id;
  std::vector<std::string> node_labels;
  std::vector<QueryEdge> edges;

  std::size_t num_nodes() const { return node_labels.size(); }
  std::size_t num_edges() const { return edges.size(); }
  /// |Q| = |V_Q| + |E_Q|.
  std::size_t size() const { return num_nodes() + num_edges(); }

  /// Throws ValidationError unless the query is connected, has at least one
  /// edge, no self-loops, valid endpoints and at most one edge per node pair.
  void validate() const;

  bool operator==(const GraphQuery&) const = default;
};

/// One edge of a star: the leaf node and how it attaches to the pivot.
struct StarLeaf {
  QueryNodeId node;
  std::size_t edge;  // index into GraphQuery::edges
  bool outgoing;     // true when the query edge is pivot -> leaf
};

struct StarQuery {
  StarIndex index = 0;
  QueryNodeId pivot = 0;
  std::vector<StarLeaf> leaves;  // ascending by leaf node id

  std::size_t num_nodes() const { return leaves.size() + 1; }
  std::size_t num_edges() const { return leaves.size(); }
  /// Query node bound at binding position p: pivot at 0, then leaves in order.
  QueryNodeId node_at(std::size_t p) const { return p == 0 ? pivot : leaves[p - 1].node; }
};

/// Greedy star cover: repeatedly take the node with the largest residual
/// degree (ties to the lowest id) as pivot and consume all its residual edges.
/// The stars partition E_Q.
std::vector<StarQuery> decompose(const GraphQuery& q);

}  // namespace l2p
