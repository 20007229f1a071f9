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


#include "l2p/eval/metrics.h"

#include <algorithm>
#include <numeric>

#include "l2p/common/errors.h"
#include "l2p/plan/search_state.h"

namespace l2p {

QueryResult result_of(const PlanTrace& t, double wall_ms) {
  QueryResult r;
  r.query_id = t.query_id;
  r.answers = t.answers;
  r.cost = t.cost;
  r.wall_ms = wall_ms;
  r.fetches = t.fetches;
  r.joins = t.joins;
  r.ml_overhead = t.overhead.total();
  r.termination = t.termination;
  return r;
}

double speedup(const QueryResult& ta, const QueryResult& p) {
  if (ta.query_id != p.query_id) throw ValidationError("speedup compares results of different queries");
  if (p.cost == 0) throw ValidationError("speedup is undefined for a zero-cost result");
  return static_cast<double>(ta.cost) / static_cast<double>(p.cost);
}

double floored_speedup(const QueryResult& ta, const QueryResult& p) {
  if (ta.query_id != p.query_id) throw ValidationError("speedup compares results of different queries");
  return static_cast<double>(std::max<std::uint64_t>(ta.cost, 1)) /
         static_cast<double>(std::max<std::uint64_t>(p.cost, 1));
}

double accuracy(const QueryResult& correct, const QueryResult& predicted) {
  if (correct.answers.empty()) return predicted.answers.empty() ? 1.0 : 0.0;
  if (predicted.answers.empty()) return 0.0;
  const double want = total_score(correct.answers);
  if (want <= 0.0) return 1.0;
  return total_score(predicted.answers) / want;
}

double loss(const QueryResult& correct, const QueryResult& predicted) { return 1.0 - accuracy(correct, predicted); }

double mean(const std::vector<double>& xs) {
  if (xs.empty()) return 0.0;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace l2p
