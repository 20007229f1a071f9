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
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "l2p/plan/plan_trace.h"

namespace l2p {

/// Per-query outcome of one method.
struct QueryResult {
  std::string query_id;
  std::vector<CompleteMatch> answers;
  std::uint64_t cost = 0;
  double wall_ms = 0.0;  // informational only
  std::uint64_t fetches = 0;
  std::uint64_t joins = 0;
  std::uint64_t ml_overhead = 0;
  Termination termination = Termination::kNatural;
};

QueryResult result_of(const PlanTrace& t, double wall_ms = 0.0);

/// ta.cost / p.cost. Throws ValidationError when p.cost is zero or the
/// results belong to different queries.
double speedup(const QueryResult& ta, const QueryResult& p);

/// As speedup, with both costs floored at one unit so halting before any work
/// stays finite.
double floored_speedup(const QueryResult& ta, const QueryResult& p);

/// Sum of predicted scores over the sum of correct scores: 1 when both are
/// empty, 0 when only the prediction is.
double accuracy(const QueryResult& correct, const QueryResult& predicted);

/// 1 - accuracy.
double loss(const QueryResult& correct, const QueryResult& predicted);

double mean(const std::vector<double>& xs);

}  // namespace l2p
