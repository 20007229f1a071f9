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
#include <vector>

#include "l2p/plan/plan_trace.h"
#include "l2p/plan/policy.h"

namespace l2p {

inline constexpr std::size_t kDefaultActionBudget = 100000;

/// Greedy plan execution: ask the policy for a star (or HALT) and a fetch
/// size until HALT, natural termination or the action budget. Natural
/// termination is honored whatever the policy says.
PlanTrace execute_policy(QueryContext& ctx, const Policy& policy, std::size_t budget = kDefaultActionBudget);

/// The TA baseline: round-robin over unexhausted stars, k matches per fetch,
/// until natural termination.
PlanTrace run_ta(QueryContext& ctx);

/// Re-executes `actions` from s_0 and closes the trace with `termination`.
PlanTrace replay(QueryContext& ctx, const std::vector<Action>& actions, Termination termination);

/// Summarizes a state reached by `actions` into a trace.
PlanTrace trace_of(const SearchState& s, const std::vector<TraceStep>& steps, Termination termination);

}  // namespace l2p
