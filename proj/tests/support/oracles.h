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


// Independent reference implementations used as test oracles. Nothing here
// calls into the engine's matching or similarity code.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "l2p/graph/data_graph.h"
#include "l2p/query/graph_query.h"

namespace l2p::testing {

/// Full O(nm) edit-distance table over bytes (labels in tests are ASCII).
int edit_distance(const std::string& a, const std::string& b);
double ref_similarity(const std::string& a, const std::string& b);

struct RefMatch {
  std::vector<NodeId> mapping;  // indexed by query node
  double score;
};

/// Every injective embedding of q whose nodes all clear theta, with its
/// score summed term by term.
std::vector<RefMatch> all_matches(const DataGraph& g, const GraphQuery& q, double theta);

/// The k best scores, descending.
std::vector<double> brute_topk_scores(const DataGraph& g, const GraphQuery& q, double theta, int k);

/// Every injective binding of one star (pivot first, then leaves), score over
/// the star's nodes and edges only, sorted descending.
std::vector<RefMatch> star_matches(const DataGraph& g, const GraphQuery& q, const StarQuery& star, double theta);

struct Instance {
  DataGraph graph;
  GraphQuery query;
  int k;
};

/// A seeded desk-scale instance: a graph with at most `max_nodes` nodes over a
/// small confusable vocabulary and a query of 2..max_query_nodes nodes mined
/// from an embedding, with some labels perturbed.
Instance random_instance(std::uint64_t seed, std::size_t max_nodes = 200, std::size_t max_query_nodes = 5);

DataGraph toy_graph();

}  // namespace l2p::testing
