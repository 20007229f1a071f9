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

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "l2p/graph/data_graph.h"
#include "l2p/query/graph_query.h"
#include "l2p/stream/match_scorer.h"
#include "l2p/stream/star_stream.h"

namespace l2p {

/// Everything about one (graph, query, k, theta) instance that search states
/// share: the decomposition, similarity tables, stream logs and join indexes.
/// Not thread-safe; one context per query per thread.
class QueryContext {
 public:
  QueryContext(const DataGraph& g, GraphQuery q, int k, double theta);
  QueryContext(const QueryContext&) = delete;
  QueryContext& operator=(const QueryContext&) = delete;

  const DataGraph& graph() const { return *graph_; }
  const GraphQuery& query() const { return query_; }
  const std::vector<StarQuery>& stars() const { return stars_; }
  std::size_t num_stars() const { return stars_.size(); }
  const MatchScorer& scorer() const { return scorer_; }
  int k() const { return k_; }
  double theta() const { return theta_; }

  StreamLog& log(StarIndex i) { return *logs_[i]; }
  const StreamLog& log(StarIndex i) const { return *logs_[i]; }

  std::size_t pivot_candidates(StarIndex i) const { return pivot_candidates_[i]; }
  /// Query nodes of star i that also occur in another star.
  std::size_t joinable_nodes(StarIndex i) const { return joinable_[i]; }
  /// Subtracted from summed star bounds: theta for every repeated occurrence
  /// of a shared query node (its true score is at least theta).
  double overlap_correction() const { return overlap_correction_; }

  /// Star visiting order used when joining a new match of star `from`.
  const std::vector<StarIndex>& join_order(StarIndex from) const { return join_orders_[from]; }

  /// Indices (< limit, ascending) of star `target`'s emissions whose bindings
  /// on the nodes already fixed when joining from `from` hash like `mapping`.
  /// Candidates still need an explicit compatibility check.
  const std::vector<std::uint32_t>& join_bucket(StarIndex from, StarIndex target, const std::vector<NodeId>& mapping,
                                                std::uint32_t limit);

 private:
  struct JoinIndex {
    std::vector<std::size_t> key_positions;  // binding positions in the target star
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> buckets;
    std::vector<std::uint32_t> all;
    std::size_t indexed = 0;
  };

  const DataGraph* graph_;
  GraphQuery query_;
  int k_;
  double theta_;
  std::vector<StarQuery> stars_;
  MatchScorer scorer_;
  std::vector<std::unique_ptr<StreamLog>> logs_;
  std::vector<std::size_t> pivot_candidates_;
  std::vector<std::size_t> joinable_;
  double overlap_correction_ = 0.0;
  std::vector<std::vector<StarIndex>> join_orders_;
  std::vector<std::vector<JoinIndex>> join_index_;  // [from][target]
  std::vector<std::uint32_t> empty_;
};

}  // namespace l2p
