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

#include "l2p/eval/experiment.h"
#include "l2p/learning/imitation.h"
#include "l2p/oracle/bayes_opt.h"
#include "l2p/oracle/plan_corpus.h"
#include "l2p/workload/workload.h"

namespace l2p {

/// Everything one generate -> TA -> oracle -> train -> eval run needs.
struct PipelineConfig {
  std::uint64_t seed = 1;
  std::size_t templates = 20;
  std::size_t per_template = 20;
  double perturbation = 0.3;
  SplitFractions fractions;
  std::size_t test_queries = 100;  // 0 keeps the whole test split
  int k = 3;
  double theta = 0.5;
  OracleConfig oracle;
  /// BO tuning runs on the first `tune_queries` training queries (0 = all);
  /// 0 BO iterations skips tuning and uses unit weights.
  std::size_t tune_queries = 50;
  LearnerConfig learner;
  std::size_t dagger_iterations = 5;  // 0 skips DAgger
  double beta0 = 0.8;
  std::size_t repeats = 3;
  bool fetch_only = true;
  unsigned threads = 0;
};

struct PipelineResult {
  WorkloadSplit split;
  HeuristicWeights weights;
  BoResult bo;
  PlanCorpus corpus;
  ImitationDataset dataset;
  std::optional<LearnedPolicy> exact;
  DaggerResult dagger;
  std::size_t selected = 0;  // index into dagger.policies
  std::vector<PolicyScore> validation;
  ExperimentReport report;
};

/// Runs the whole protocol on `g` with the workload mined from it.
PipelineResult run_pipeline(const DataGraph& g, const PipelineConfig& cfg, const std::string& label = "");

/// Same protocol on a prepared split.
PipelineResult run_pipeline(const DataGraph& g, WorkloadSplit split, const PipelineConfig& cfg,
                            const std::string& label = "");

struct TransferCell {
  std::string train;
  std::string test;
  double speedup = 0.0;
  double accuracy = 0.0;
};

struct TransferMatrix {
  std::vector<std::string> train_sources;  // each graph, then "combined"
  std::vector<std::string> test_graphs;
  std::vector<TransferCell> cells;         // row-major over train_sources x test_graphs
  std::vector<ExperimentReport> reports;   // one per cell, same order
};

struct NamedGraph {
  std::string name;
  const DataGraph* graph = nullptr;
};

/// Trains an exact-imitation policy per graph and one on the union of their
/// datasets, then evaluates every policy on every graph's test split.
TransferMatrix transfer_protocol(const std::vector<NamedGraph>& graphs, const PipelineConfig& cfg);

nlohmann::ordered_json transfer_to_json(const TransferMatrix& m);
std::string format_transfer(const TransferMatrix& m);

}  // namespace l2p
