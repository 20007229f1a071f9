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

#include "l2p/query/graph_query.h"

#include <algorithm>
#include <set>
#include <utility>

#include "l2p/common/errors.h"

namespace l2p {

void GraphQuery::validate() const {
  const std::size_t n = num_nodes();
  if (n == 0) throw ValidationError("query '" + id + "' has no nodes");
  if (edges.empty()) throw ValidationError("query '" + id + "' has no edges");
  std::set<std::pair<QueryNodeId, QueryNodeId>> pairs;
  std::vector<std::vector<QueryNodeId>> adj(n);
  for (const auto& e : edges) {
    if (e.src >= n || e.dst >= n) throw ValidationError("query '" + id + "' has an edge with an invalid endpoint");
    if (e.src == e.dst) throw ValidationError("query '" + id + "' has a self-loop");
    if (!pairs.insert(std::minmax(e.src, e.dst)).second) {
      throw ValidationError("query '" + id + "' has more than one edge between a node pair");
    }
    adj[e.src].push_back(e.dst);
    adj[e.dst].push_back(e.src);
  }
  std::vector<bool> seen(n, false);
  std::vector<QueryNodeId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    for (auto w : adj[u]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw ValidationError("query '" + id + "' is disconnected");
}

std::vector<StarQuery> decompose(const GraphQuery& q) {
  q.validate();
  const std::size_t n = q.num_nodes();
  std::vector<bool> used(q.num_edges(), false);
  std::vector<std::size_t> degree(n, 0);
  for (const auto& e : q.edges) {
    ++degree[e.src];
    ++degree[e.dst];
  }
  std::size_t remaining = q.num_edges();
  std::vector<StarQuery> stars;
  while (remaining > 0) {
    QueryNodeId pivot = 0;
    for (QueryNodeId v = 1; v < n; ++v) {
      if (degree[v] > degree[pivot]) pivot = v;
    }
    StarQuery star;
    star.index = static_cast<StarIndex>(stars.size());
    star.pivot = pivot;
    for (std::size_t i = 0; i < q.num_edges(); ++i) {
      if (used[i]) continue;
      const auto& e = q.edges[i];
      if (e.src != pivot && e.dst != pivot) continue;
      bool outgoing = e.src == pivot;
      QueryNodeId leaf = outgoing ? e.dst : e.src;
      star.leaves.push_back({leaf, i, outgoing});
      used[i] = true;
      --degree[e.src];
      --degree[e.dst];
      --remaining;
    }
    std::sort(star.leaves.begin(), star.leaves.end(),
              [](const StarLeaf& a, const StarLeaf& b) { return a.node < b.node; });
    stars.push_back(std::move(star));
  }
  return stars;
}

}  // namespace l2p
