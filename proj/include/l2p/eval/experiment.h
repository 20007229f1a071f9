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
#include <string>
#include <vector>

#include <json.hpp>

#include "l2p/eval/metrics.h"
#include "l2p/oracle/oracle.h"
#include "l2p/plan/policy.h"

namespace l2p {

/// A row of the comparison: TA, the oracle, a random policy, a learned
/// policy, or a learned policy's fetch model under TA selection.
struct MethodSpec {
  enum class Kind : std::uint8_t { kTa, kOracle, kRandom, kPolicy, kFetchOnly };
  std::string name;
  Kind kind = Kind::kTa;
  const Policy* policy = nullptr;  // kPolicy and kFetchOnly
};

struct ExperimentConfig {
  int k = 10;
  double theta = 0.5;
  std::size_t repeats = 3;  // runs of stochastic methods
  std::uint64_t seed = 1;
  HeuristicWeights weights;  // for the oracle row
  OracleConfig oracle;
  bool wall_clock = false;  // off keeps reports byte-reproducible
  unsigned threads = 0;
};

/// Aggregate quality and work counters for one method.
struct MethodRow {
  std::string method;
  double speedup = 0.0;   // mean of per-query floored cost ratios against TA
  double accuracy = 0.0;  // mean per-query accuracy against TA
  double cost = 0.0;      // mean cost units
  double fetches = 0.0;
  double joins = 0.0;
  double ml_overhead = 0.0;
  double wall_ms = 0.0;
  bool operator==(const MethodRow&) const = default;
};

/// Per-query results of one method, one vector per repeat.
struct MethodRuns {
  std::string method;
  std::vector<std::vector<QueryResult>> repeats;
};

struct ExperimentReport {
  std::string label;
  int k = 0;
  double theta = 0.0;
  std::size_t repeats = 0;
  std::uint64_t seed = 0;
  bool wall_clock = false;
  std::vector<MethodRuns> runs;  // first entry is TA
  std::vector<MethodRow> rows;
};

/// Runs every method on every query. TA always runs and comes first. Oracle
/// queries without a plan fall back to the TA result.
ExperimentReport run_experiment(const DataGraph& g, const std::vector<GraphQuery>& queries,
                                const std::vector<MethodSpec>& methods, const ExperimentConfig& cfg,
                                const std::string& label = "");

/// Aggregates runs against the first (TA) entry; stochastic methods average
/// their per-repeat aggregates.
std::vector<MethodRow> summarize(const std::vector<MethodRuns>& runs);

nlohmann::ordered_json report_to_json(const ExperimentReport& r);
/// Reads a report back; rows are recomputed from the stored runs and must
/// agree with the stored rows (ValidationError otherwise).
ExperimentReport report_from_json(const nlohmann::json& j);

/// Human-readable dump of both blocks.
std::string format_report(const ExperimentReport& r);

/// Parses "ta,oracle,random,l2p" style lists; ConfigError on unknown names.
std::vector<std::string> parse_method_list(const std::string& list);

}  // namespace l2p
