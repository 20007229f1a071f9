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

#include "l2p/graph/data_graph.h"

#include <algorithm>
#include <span>
#include <tuple>

#include "l2p/common/errors.h"
#include "l2p/graph/label_similarity.h"
#include "l2p/simd/kernels.h"

namespace l2p {

LabelId LabelTable::intern(std::string_view text) {
  if (auto it = index_.find(std::string(text)); it != index_.end()) return it->second;
  auto id = static_cast<LabelId>(text_.size());
  text_.emplace_back(text);
  code_points_.push_back(utf8_to_code_points(text));
  index_.emplace(text_.back(), id);
  return id;
}

std::optional<LabelId> LabelTable::find(std::string_view text) const {
  if (auto it = index_.find(std::string(text)); it != index_.end()) return it->second;
  return std::nullopt;
}

std::vector<double> LabelTable::similarity_row(std::u32string_view query) const {
  std::vector<simd::CodePoints> views;
  views.reserve(code_points_.size());
  for (const auto& cp : code_points_) views.emplace_back(cp.data(), cp.size());
  std::vector<std::int32_t> dist(views.size());
  simd::active_kernels().levenshtein_batch(simd::CodePoints(query.data(), query.size()), views, dist);
  std::vector<double> row(views.size());
  for (std::size_t i = 0; i < views.size(); ++i) {
    std::size_t longest = std::max(query.size(), views[i].size());
    row[i] = longest == 0 ? 1.0 : 1.0 - static_cast<double>(dist[i]) / static_cast<double>(longest);
  }
  return row;
}

DataGraph::Adjacency DataGraph::build_adjacency(std::size_t n,
                                                std::vector<std::tuple<NodeId, NodeId, LabelId>>& triples) {
  std::sort(triples.begin(), triples.end());
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  adj.label_offsets.push_back(0);
  std::size_t i = 0;
  for (NodeId v = 0; v < n; ++v) {
    adj.offsets[v] = adj.neighbors.size();
    while (i < triples.size() && std::get<0>(triples[i]) == v) {
      NodeId w = std::get<1>(triples[i]);
      adj.neighbors.push_back(w);
      while (i < triples.size() && std::get<0>(triples[i]) == v && std::get<1>(triples[i]) == w) {
        adj.labels.push_back(std::get<2>(triples[i]));
        ++i;
      }
      adj.label_offsets.push_back(adj.labels.size());
    }
  }
  adj.offsets[n] = adj.neighbors.size();
  return adj;
}

DataGraph DataGraph::build(const std::vector<std::string>& node_labels, const std::vector<EdgeTriple>& edges) {
  DataGraph g;
  const std::size_t n = node_labels.size();
  g.node_label_.reserve(n);
  for (const auto& label : node_labels) g.node_label_.push_back(g.node_labels_.intern(label));
  g.label_index_.resize(g.node_labels_.size());
  for (NodeId v = 0; v < n; ++v) g.label_index_[g.node_label_[v]].push_back(v);

  std::vector<std::tuple<NodeId, NodeId, LabelId>> fwd, bwd;
  fwd.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.src >= n || e.dst >= n) {
      throw IntegrityError("edge endpoint out of range: " + std::to_string(e.src) + " -> " + std::to_string(e.dst) +
                           " with " + std::to_string(n) + " nodes");
    }
    fwd.emplace_back(e.src, e.dst, g.edge_labels_.intern(e.label));
  }
  std::sort(fwd.begin(), fwd.end());
  fwd.erase(std::unique(fwd.begin(), fwd.end()), fwd.end());
  g.num_edges_ = fwd.size();
  bwd.reserve(fwd.size());
  for (const auto& [s, d, l] : fwd) bwd.emplace_back(d, s, l);
  g.out_ = build_adjacency(n, fwd);
  g.in_ = build_adjacency(n, bwd);
  return g;
}

std::span<const LabelId> DataGraph::edge_labels_between(NodeId src, NodeId dst) const {
  auto nbrs = out_neighbors(src);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), dst);
  if (it == nbrs.end() || *it != dst) return {};
  std::size_t slot = out_.offsets[src] + static_cast<std::size_t>(it - nbrs.begin());
  return {out_.labels.data() + out_.label_offsets[slot], out_.label_offsets[slot + 1] - out_.label_offsets[slot]};
}

std::span<const NodeId> DataGraph::nodes_with_label(std::string_view label) const {
  auto id = node_labels_.find(label);
  if (!id) return {};
  return nodes_with_label(*id);
}

std::span<const NodeId> DataGraph::nodes_with_label(LabelId label) const {
  if (label >= label_index_.size()) return {};
  return label_index_[label];
}

std::vector<EdgeTriple> DataGraph::edge_list() const {
  std::vector<EdgeTriple> out;
  out.reserve(num_edges_);
  for (NodeId v = 0; v < num_nodes(); ++v) {
    for (NodeId w : out_neighbors(v)) {
      std::vector<std::string> labels;
      for (LabelId l : edge_labels_between(v, w)) labels.push_back(edge_labels_.text(l));
      std::sort(labels.begin(), labels.end());
      for (auto& l : labels) out.push_back({v, std::move(l), w});
    }
  }
  return out;
}

bool DataGraph::operator==(const DataGraph& other) const {
  if (num_nodes() != other.num_nodes() || num_edges() != other.num_edges()) return false;
  for (NodeId v = 0; v < num_nodes(); ++v) {
    if (node_label_text(v) != other.node_label_text(v)) return false;
  }
  auto a = edge_list();
  auto b = other.edge_list();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].src != b[i].src || a[i].dst != b[i].dst || a[i].label != b[i].label) return false;
  }
  return true;
}

std::vector<Candidate> candidates(const DataGraph& g, std::string_view query_label, double threshold) {
  auto row = g.node_labels().similarity_row(utf8_to_code_points(query_label));
  std::vector<Candidate> out;
  for (LabelId l = 0; l < row.size(); ++l) {
    if (row[l] < threshold) continue;
    for (NodeId v : g.nodes_with_label(l)) out.push_back({v, row[l]});
  }
  std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.node < b.node;
  });
  return out;
}

}  // namespace l2p
