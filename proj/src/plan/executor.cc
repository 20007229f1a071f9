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

#include "l2p/plan/executor.h"

#include "l2p/common/errors.h"

namespace l2p {

PlanTrace trace_of(const SearchState& s, const std::vector<TraceStep>& steps, Termination termination) {
  PlanTrace t;
  t.query_id = s.context().query().id;
  t.steps = steps;
  t.termination = termination;
  t.answers = s.answers();
  t.cost = s.cost();
  t.fetches = s.fetch_count();
  t.joins = s.join_attempts();
  t.expansions = s.expansions();
  t.final_lb = s.lower_bound();
  t.final_ub = s.upper_bound();
  return t;
}

PlanTrace execute_policy(QueryContext& ctx, const Policy& policy, std::size_t budget) {
  if (budget < 1) throw PlanningError("action budget must be at least 1");
  SearchState s = SearchState::initial(ctx);
  std::vector<TraceStep> steps;
  OverheadMeter meter;
  Termination why = Termination::kNatural;
  for (;;) {
    if (s.is_natural_termination()) {
      why = Termination::kNatural;
      break;
    }
    if (steps.size() >= budget) {
      why = Termination::kBudget;
      break;
    }
    auto star = policy.select(s, meter);
    if (!star) {
      why = Termination::kHalt;
      break;
    }
    if (*star >= s.num_stars()) {
      throw PlanningError("policy selected star " + std::to_string(*star + 1) + " of " +
                          std::to_string(s.num_stars()));
    }
    int delta = policy.fetch(s, *star, meter);
    Action a = Action::fetch(*star, delta);
    s.apply_in_place(a);
    steps.push_back({a, s.lower_bound(), s.upper_bound(), s.cost()});
  }
  PlanTrace t = trace_of(s, steps, why);
  t.overhead = meter;
  return t;
}

PlanTrace run_ta(QueryContext& ctx) {
  SearchState s = SearchState::initial(ctx);
  std::vector<TraceStep> steps;
  const std::size_t t = s.num_stars();
  std::size_t cursor = 0;
  while (!s.is_natural_termination()) {
    // Next unexhausted star at or after the cursor.
    std::size_t i = cursor;
    while (s.star(static_cast<StarIndex>(i % t)).exhausted) ++i;
    auto star = static_cast<StarIndex>(i % t);
    Action a = Action::fetch(star, ctx.k());
    s.apply_in_place(a);
    steps.push_back({a, s.lower_bound(), s.upper_bound(), s.cost()});
    cursor = star + 1;
  }
  return trace_of(s, steps, Termination::kNatural);
}

PlanTrace replay(QueryContext& ctx, const std::vector<Action>& actions, Termination termination) {
  SearchState s = SearchState::initial(ctx);
  std::vector<TraceStep> steps;
  steps.reserve(actions.size());
  for (const auto& a : actions) {
    s.apply_in_place(a);
    steps.push_back({a, s.lower_bound(), s.upper_bound(), s.cost()});
  }
  return trace_of(s, steps, termination);
}

}  // namespace l2p
