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
#include <vector>

#include "l2p/learning/features.h"
#include "l2p/learning/gbdt.h"
#include "l2p/learning/learned_policy.h"
#include "l2p/oracle/oracle.h"

namespace l2p {

/// One selection decision: a feature vector per candidate (open stars in
/// index order, HALT last) and the index of the labeled candidate.
struct SelectExample {
  std::string query_id;
  std::vector<FeatureVector> candidates;
  std::vector<std::optional<StarIndex>> ids;  // nullopt is HALT
  std::size_t label = 0;
  bool operator==(const SelectExample&) const = default;
};

struct FetchExample {
  std::string query_id;
  FeatureVector features;
  int delta = kDeltaMin;
  bool operator==(const FetchExample&) const = default;
};

struct ImitationDataset {
  std::vector<SelectExample> select;  // D1
  std::vector<FetchExample> fetch;    // D2
  void append(const ImitationDataset& other);
  bool operator==(const ImitationDataset&) const = default;
};

/// Candidates at `s`: every open star, then HALT.
SelectExample make_select_example(const SearchState& s, std::optional<StarIndex> label, const std::string& query_id);

/// Replays each found plan from s_0. Every fetch yields one selection and one
/// fetch example; the terminal state yields a HALT selection example. Plans are
/// matched to instances by query id; missing plans are skipped. Throws
/// ValidationError naming the query when a plan does not replay to its
/// recorded cost and to TA's answers.
ImitationDataset build_exact_imitation(std::vector<OracleInstance>& instances,
                                       const std::vector<std::optional<TargetPlan>>& plans);

struct LearnerConfig {
  GbdtConfig select;
  GbdtConfig fetch;
};

/// Fits both models. A dataset whose selection labels are all the same kind
/// (all HALT or never HALT) is legal but logs a warning.
LearnedPolicy train(const ImitationDataset& data, const LearnerConfig& cfg, PolicyMetadata meta = {"exact", 1, 0, 0, 0});

struct DaggerConfig {
  std::size_t iterations = 5;
  double beta0 = 0.8;
  std::uint64_t seed = 1;
  LearnerConfig learner;
  HeuristicWeights weights;
  OracleConfig oracle;
  /// Depth budget of off-path reruns, in units of the s_0 oracle plan length.
  std::size_t rerun_depth_factor = 2;
  unsigned threads = 0;
};

/// beta0^iteration.
double mixture_probability(double beta0, std::size_t iteration);

struct DaggerResult {
  std::vector<LearnedPolicy> policies;        // one per iteration, first is exact imitation
  std::vector<std::size_t> select_examples;   // aggregate sizes after each iteration
  std::vector<std::size_t> fetch_examples;
  std::size_t skipped_states = 0;             // oracle reruns that found nothing
};

/// Iteration 1 trains on `initial`. Later iterations roll out the beta-mixture
/// of oracle and learner on every instance and add oracle-labeled examples
/// wherever the learner disagrees.
DaggerResult dagger(std::vector<OracleInstance>& instances, const ImitationDataset& initial, const DaggerConfig& cfg);

struct PolicyScore {
  double accuracy = 0.0;
  double speedup = 0.0;  // floored
};

PolicyScore score_policy(const Policy& policy, std::vector<OracleInstance>& validation, unsigned threads = 0);

/// Highest accuracy, then higher speedup, then the earliest candidate.
std::size_t select_best(const std::vector<PolicyScore>& scores);

/// Scores every candidate on the validation instances and returns the index
/// chosen by select_best.
std::size_t select_policy(const std::vector<const Policy*>& candidates, std::vector<OracleInstance>& validation,
                          std::vector<PolicyScore>* scores = nullptr, unsigned threads = 0);

/// Random search over rounds, depth and learning rate, scored on validation.
LearnerConfig tune_learner(const ImitationDataset& data, std::vector<OracleInstance>& validation, std::size_t trials,
                           std::uint64_t seed, unsigned threads = 0);

}  // namespace l2p
