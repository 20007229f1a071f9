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

#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "l2p/oracle/oracle.h"

namespace l2p {

struct PlanRecord {
  std::string query_id;
  std::optional<TargetPlan> plan;  // nullopt when the oracle found none
};

/// Target-plan corpus: the run parameters plus one record per query.
struct PlanCorpus {
  int k = 1;
  double theta = 0.5;
  HeuristicWeights weights;
  std::vector<PlanRecord> records;
};

/// Line format after a two-line header:
/// query_id TAB found TAB cost TAB ta_cost TAB fetches TAB ta_fetches TAB quality TAB actions
/// where actions is "star:delta" pairs (one-based stars) separated by spaces, or "-".
void write_plan_corpus(const PlanCorpus& corpus, std::ostream& out);
void write_plan_corpus(const PlanCorpus& corpus, const std::filesystem::path& file);
PlanCorpus read_plan_corpus(std::istream& in, const std::string& name = "plans");
PlanCorpus read_plan_corpus(const std::filesystem::path& file);

}  // namespace l2p
