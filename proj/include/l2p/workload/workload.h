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
#include <filesystem>
#include <string>
#include <vector>

#include "l2p/graph/data_graph.h"
#include "l2p/query/graph_query.h"

namespace l2p {

/// Truncated Zipf over ranks 0..n-1: P(r) proportional to 1 / (r+1)^s.
class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent);
  std::size_t size() const { return cdf_.size(); }
  double probability(std::size_t rank) const;
  /// Rank for a uniform draw u in [0,1).
  std::size_t sample(double u) const;

 private:
  std::vector<double> cdf_;
};

/// Pronounceable labels in families of near-duplicates (one or two edits
/// apart), so similar labels compete as candidates.
std::vector<std::string> make_vocabulary(std::size_t size, std::uint64_t seed);

struct GraphGenConfig {
  std::size_t nodes = 2000;
  std::size_t edges = 6000;
  std::size_t node_vocab = 200;
  std::size_t edge_vocab = 20;
  double exponent = 1.1;
  std::uint64_t seed = 1;
};

/// Connected directed graph: a random spanning tree plus random extra edges,
/// node and edge labels drawn from Zipf-skewed vocabularies.
DataGraph generate_graph(const GraphGenConfig& cfg);

enum class Shape : std::uint8_t { kPath, kStar, kCycle, kTree, kFlower };
std::string shape_name(Shape s);

struct TemplateSpec {
  std::size_t id = 0;
  Shape shape = Shape::kPath;
  GraphQuery pattern;             // topology with its label slots filled
  std::vector<NodeId> embedding;  // the data nodes it was mined from
};

/// Labels of the top 20% most frequent node labels (count desc, then text).
std::vector<std::string> frequent_labels(const DataGraph& g, double fraction = 0.2);

/// Templates mined from embeddings in g whose nodes all carry frequent
/// labels; shapes cycle through path, star, cycle, tree, flower.
std::vector<TemplateSpec> generate_templates(const DataGraph& g, std::size_t count, std::uint64_t seed,
                                             std::size_t max_nodes = 6);

struct WorkloadSplit {
  std::vector<GraphQuery> train;
  std::vector<GraphQuery> validation;
  std::vector<GraphQuery> test;
  std::size_t size() const { return train.size() + validation.size() + test.size(); }
};

struct SplitFractions {
  double train = 0.5;
  double validation = 0.2;
};

/// per_template queries per template, each label independently replaced by
/// a one-character edit with probability `perturbation`; seeded 50/20/30 split.
WorkloadSplit instantiate(const std::vector<TemplateSpec>& templates, std::size_t per_template, double perturbation,
                          std::uint64_t seed, SplitFractions fractions = {});

/// Forest-fire node sample of round(fraction * |V|) nodes, returned as the
/// induced subgraph (ids renumbered in original order).
DataGraph forest_fire_sample(const DataGraph& g, double fraction, std::uint64_t seed, double forward = 0.7);

void save_workload(const WorkloadSplit& split, const std::filesystem::path& dir, std::uint64_t seed);
WorkloadSplit load_workload(const std::filesystem::path& dir);

}  // namespace l2p
