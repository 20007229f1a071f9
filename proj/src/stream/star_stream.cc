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

#include "l2p/stream/star_stream.h"

#include <algorithm>

namespace l2p {

StarStream::StarStream(const MatchScorer& scorer, const StarQuery& star) : scorer_(&scorer), star_(&star) {
  const double optimism = kLeafOptimism * static_cast<double>(star.leaves.size());
  for (const auto& c : scorer.candidates(star.pivot)) frontier_.push(Entry{c.score + optimism, c.score, c.node, {}});
  exhausted_ = frontier_.empty();
}

void StarStream::expand(const Entry& e) {
  const std::size_t j = e.leaves.size();
  const StarLeaf& leaf = star_->leaves[j];
  const DataGraph& g = scorer_->graph();
  const double remaining = kLeafOptimism * static_cast<double>(star_->leaves.size() - j - 1);
  auto neighbors = leaf.outgoing ? g.out_neighbors(e.pivot) : g.in_neighbors(e.pivot);
  for (NodeId w : neighbors) {
    if (w == e.pivot || std::find(e.leaves.begin(), e.leaves.end(), w) != e.leaves.end()) continue;
    double node = scorer_->node_score(leaf.node, w);
    if (node < scorer_->theta()) continue;
    double edge = leaf.outgoing ? scorer_->edge_score(leaf.edge, e.pivot, w) : scorer_->edge_score(leaf.edge, w, e.pivot);
    Entry child{0.0, e.exact + node + edge, e.pivot, e.leaves};
    child.leaves.push_back(w);
    child.key = child.exact + remaining;
    frontier_.push(std::move(child));
  }
}

std::optional<PartialMatch> StarStream::next() {
  while (!frontier_.empty()) {
    Entry top = frontier_.top();
    frontier_.pop();
    ++pops_;
    if (top.leaves.size() == star_->leaves.size()) {
      ++emitted_;
      last_score_ = top.exact;
      PartialMatch m;
      m.star = star_->index;
      m.binding.reserve(top.leaves.size() + 1);
      m.binding.push_back(top.pivot);
      m.binding.insert(m.binding.end(), top.leaves.begin(), top.leaves.end());
      m.score = top.exact;
      return m;
    }
    expand(top);
  }
  exhausted_ = true;
  return std::nullopt;
}

std::vector<PartialMatch> StarStream::fetch(int delta) {
  std::vector<PartialMatch> out;
  while (static_cast<int>(out.size()) < delta) {
    auto m = next();
    if (!m) break;
    out.push_back(std::move(*m));
  }
  return out;
}

double StarStream::upper_bound() const {
  if (exhausted_) return kNegInf;
  double head = frontier_.empty() ? kNegInf : frontier_.top().key;
  return std::max(head, last_score_);
}

StreamLog::StreamLog(const MatchScorer& scorer, const StarQuery& star) : stream_(scorer, star) {
  cost_at_.push_back(0);
  bound_at_.push_back(stream_.upper_bound());
  if (stream_.exhausted()) drained_ = true;
}

void StreamLog::ensure(std::size_t count) {
  while (emitted_.size() < count && !drained_) {
    auto m = stream_.next();
    if (!m) {
      drained_ = true;
      cost_at_drain_ = stream_.cost();
      break;
    }
    emitted_.push_back(std::move(*m));
    cost_at_.push_back(stream_.cost());
    bound_at_.push_back(stream_.upper_bound());
  }
}

StreamAdvance StreamLog::advance(std::uint32_t position, bool exhausted, int delta) {
  if (exhausted) return {position, true, 0};
  const std::size_t target = static_cast<std::size_t>(position) + static_cast<std::size_t>(std::max(delta, 0));
  ensure(target);
  if (emitted_.size() >= target) {
    return {static_cast<std::uint32_t>(target), false, cost_at_[target] - cost_at_[position]};
  }
  return {static_cast<std::uint32_t>(emitted_.size()), true, cost_at_drain_ - cost_at_[position]};
}

double StreamLog::upper_bound_at(std::uint32_t position, bool exhausted) const {
  return exhausted ? kNegInf : bound_at_[position];
}

}  // namespace l2p
