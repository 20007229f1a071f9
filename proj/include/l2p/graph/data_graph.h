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
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "l2p/common/types.h"

namespace l2p {

/// Interned label strings with their code-point form cached for similarity.
class LabelTable {
 public:
  LabelId intern(std::string_view text);
  std::optional<LabelId> find(std::string_view text) const;

  std::size_t size() const { return text_.size(); }
  const std::string& text(LabelId id) const { return text_[id]; }
  const std::u32string& code_points(LabelId id) const { return code_points_[id]; }

  /// similarity(query, label) for every label in the table, indexed by LabelId.
  std::vector<double> similarity_row(std::u32string_view query) const;

  bool operator==(const LabelTable& other) const { return text_ == other.text_; }

 private:
  std::vector<std::string> text_;
  std::vector<std::u32string> code_points_;
  std::unordered_map<std::string, LabelId> index_;
};

struct EdgeTriple {
  NodeId src;
  std::string label;
  NodeId dst;
};

/// Labeled directed graph, immutable after construction. Parallel edges with
/// distinct labels are kept; identical (src, label, dst) triples collapse.
class DataGraph {
 public:
  DataGraph() = default;

  /// Builds a graph from node labels (node id = position) and edge triples.
  /// Throws IntegrityError on a dangling endpoint.
  static DataGraph build(const std::vector<std::string>& node_labels, const std::vector<EdgeTriple>& edges);

  std::size_t num_nodes() const { return node_label_.size(); }
  std::size_t num_edges() const { return num_edges_; }

  LabelId node_label(NodeId v) const { return node_label_[v]; }
  const std::string& node_label_text(NodeId v) const { return node_labels_.text(node_label_[v]); }
  const LabelTable& node_labels() const { return node_labels_; }
  const LabelTable& edge_labels() const { return edge_labels_; }

  /// Sorted, duplicate-free neighbor ids.
  std::span<const NodeId> out_neighbors(NodeId v) const { return slice(out_, v); }
  std::span<const NodeId> in_neighbors(NodeId v) const { return slice(in_, v); }

  /// Labels of every edge src -> dst; empty when the edge does not exist.
  std::span<const LabelId> edge_labels_between(NodeId src, NodeId dst) const;

  /// Nodes carrying `label`, ascending. Empty for unknown labels.
  std::span<const NodeId> nodes_with_label(std::string_view label) const;
  std::span<const NodeId> nodes_with_label(LabelId label) const;

  /// Every unique edge, ordered by (src, dst, label text).
  std::vector<EdgeTriple> edge_list() const;

  bool operator==(const DataGraph& other) const;

 private:
  struct Adjacency {
    std::vector<std::size_t> offsets;        // per node, into neighbors
    std::vector<NodeId> neighbors;
    std::vector<std::size_t> label_offsets;  // per neighbor slot, into labels
    std::vector<LabelId> labels;
  };

  static std::span<const NodeId> slice(const Adjacency& adj, NodeId v) {
    return {adj.neighbors.data() + adj.offsets[v], adj.offsets[v + 1] - adj.offsets[v]};
  }

  static Adjacency build_adjacency(std::size_t n, std::vector<std::tuple<NodeId, NodeId, LabelId>>& triples);

  LabelTable node_labels_;
  LabelTable edge_labels_;
  std::vector<LabelId> node_label_;
  std::vector<std::vector<NodeId>> label_index_;
  Adjacency out_;
  Adjacency in_;
  std::size_t num_edges_ = 0;
};

/// A scored candidate node for a query label.
struct Candidate {
  NodeId node;
  double score;
};

/// Nodes whose label similarity to `query_label` is at least `threshold`,
/// ordered by score descending then node id ascending.
std::vector<Candidate> candidates(const DataGraph& g, std::string_view query_label, double threshold);

}  // namespace l2p
