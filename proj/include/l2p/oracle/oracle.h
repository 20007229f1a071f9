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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "l2p/plan/executor.h"
#include "l2p/plan/query_context.h"

namespace l2p {

/// w for H(s) = w1*h1 + w3*h3 - w2*h2 (lower is better).
struct HeuristicWeights {
  std::array<double, 3> w{1.0, 1.0, 1.0};
  /// Throws ConfigError unless finite, non-negative, and not all zero.
  void validate() const;
  bool operator==(const HeuristicWeights&) const = default;
};

struct OracleConfig {
  std::size_t beam_width = 10;
  /// Depth budget as a multiple of the TA trace length.
  std::size_t depth_factor = 4;
  /// Absolute depth budget; 0 means depth_factor x TA steps.
  std::size_t max_depth = 0;
  std::size_t bo_iterations = 100;
  std::size_t bo_initial = 8;
  std::uint64_t seed = 1;
  unsigned threads = 0;
  void validate() const;
};

/// What the TA run on a query provides to the oracle: A^P, cost(TA), and the
/// list lengths of s^P.
struct TaReference {
  PlanTrace trace;
  std::vector<std::uint32_t> list_lengths;
  double answer_score = 0.0;
};

TaReference make_reference(QueryContext& ctx);

/// (h1, h2, h3). Throws DegenerateReferenceError when cost(TA) = 0 or every
/// list of s^P is empty.
std::array<double, 3> heuristics(const SearchState& s, const TaReference& ref);

double heuristic_value(const std::array<double, 3>& h, const HeuristicWeights& w);

/// Definition 1: the state's answers equal A^P.
bool is_terminal(const SearchState& s, const TaReference& ref);

struct TargetPlan {
  std::string query_id;
  std::vector<Action> actions;  // from s_0, fetch actions only
  std::uint64_t cost = 0;
  std::uint64_t ta_cost = 0;
  std::uint64_t fetches = 0;
  std::uint64_t ta_fetches = 0;
  /// cost(TA) / cost(plan), with the plan cost floored at 1.
  double quality = 0.0;
};

double plan_quality(std::uint64_t ta_cost, std::uint64_t plan_cost);

/// Breadth-first beam search from `start` (s_0 when omitted) to the cheapest
/// terminal state in the first beam that holds one. nullopt when the depth
/// budget runs out or no successor remains.
std::optional<TargetPlan> beam_search_tqp(QueryContext& ctx, const TaReference& ref, const HeuristicWeights& w,
                                          const OracleConfig& cfg, const SearchState* start = nullptr);

/// A training query with its TA reference, ready for repeated oracle runs.
struct OracleInstance {
  std::unique_ptr<QueryContext> ctx;
  TaReference ref;
};

std::vector<OracleInstance> prepare_instances(const DataGraph& g, const std::vector<GraphQuery>& queries, int k,
                                              double theta, unsigned threads = 0);

/// Mean plan quality over the instances; not-found plans count 0.
double plan_value(const HeuristicWeights& w, std::vector<OracleInstance>& instances, const OracleConfig& cfg);

/// One plan per instance (nullopt where not found).
std::vector<std::optional<TargetPlan>> compute_plans(const HeuristicWeights& w, std::vector<OracleInstance>& instances,
                                                     const OracleConfig& cfg);

}  // namespace l2p
