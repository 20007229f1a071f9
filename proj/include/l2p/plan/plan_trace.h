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
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "l2p/plan/search_state.h"

namespace l2p {

/// Work a policy spends deciding: one unit per feature extraction and one per
/// model evaluation.
struct OverheadMeter {
  std::uint64_t feature_extractions = 0;
  std::uint64_t model_evaluations = 0;
  std::uint64_t total() const { return feature_extractions + model_evaluations; }
};

enum class Termination : std::uint8_t { kHalt, kNatural, kBudget };

struct TraceStep {
  Action action;
  double lb;  // after the action
  double ub;
  std::uint64_t cost;
};

/// An executed plan: every fetch with the bounds and cost after it, then the
/// terminating event.
struct PlanTrace {
  std::string query_id;
  std::vector<TraceStep> steps;  // fetch actions only
  Termination termination = Termination::kNatural;
  std::vector<CompleteMatch> answers;
  std::uint64_t cost = 0;
  std::uint64_t fetches = 0;  // fetches that reached a stream
  std::uint64_t joins = 0;    // join attempts
  std::uint64_t expansions = 0;
  OverheadMeter overhead;
  double final_lb = kNegInf;
  double final_ub = kNegInf;

  std::vector<Action> actions() const;
};

/// One line per step: step<TAB>star<TAB>delta<TAB>LB<TAB>UB<TAB>cost, with
/// one-based star indices and a last line whose star column is HALT,
/// NATURAL or BUDGET. Doubles print round-trip exact.
void write_trace_log(const PlanTrace& trace, std::ostream& out);
std::string trace_log(const PlanTrace& trace);

struct LoggedStep {
  std::size_t step;
  std::string star;  // one-based index or a termination word
  int delta;
  double lb;
  double ub;
  std::uint64_t cost;
};
std::vector<LoggedStep> read_trace_log(std::istream& in);

std::string format_score(double v);
double parse_score(const std::string& s);

}  // namespace l2p
