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

#include "l2p/plan/query_context.h"

#include <algorithm>

#include "l2p/common/errors.h"
#include "l2p/common/hash.h"

namespace l2p {
namespace {

constexpr std::uint64_t kKeySeed = 0x51ed27a3f0c1b2d4ULL;

}  // namespace

QueryContext::QueryContext(const DataGraph& g, GraphQuery q, int k, double theta)
    : graph_(&g), query_(std::move(q)), k_(k), theta_(theta), stars_(decompose(query_)), scorer_(g, query_, theta) {
  if (k < 1) throw ValidationError("k must be at least 1");
  const std::size_t t = stars_.size();
  logs_.reserve(t);
  for (const auto& star : stars_) logs_.push_back(std::make_unique<StreamLog>(scorer_, star));

  std::vector<std::size_t> occurrences(query_.num_nodes(), 0);
  for (const auto& star : stars_) {
    for (std::size_t p = 0; p < star.num_nodes(); ++p) ++occurrences[star.node_at(p)];
  }
  for (auto c : occurrences) {
    if (c > 1) overlap_correction_ += theta_ * static_cast<double>(c - 1);
  }
  for (const auto& star : stars_) {
    pivot_candidates_.push_back(scorer_.candidates(star.pivot).size());
    std::size_t shared = 0;
    for (std::size_t p = 0; p < star.num_nodes(); ++p) shared += occurrences[star.node_at(p)] > 1 ? 1 : 0;
    joinable_.push_back(shared);
  }

  join_orders_.resize(t);
  join_index_.resize(t);
  for (StarIndex from = 0; from < t; ++from) {
    for (StarIndex j = 0; j < t; ++j) {
      if (j != from) join_orders_[from].push_back(j);
    }
    join_index_[from].resize(t);
    std::vector<bool> fixed(query_.num_nodes(), false);
    for (std::size_t p = 0; p < stars_[from].num_nodes(); ++p) fixed[stars_[from].node_at(p)] = true;
    for (StarIndex j : join_orders_[from]) {
      auto& idx = join_index_[from][j];
      for (std::size_t p = 0; p < stars_[j].num_nodes(); ++p) {
        if (fixed[stars_[j].node_at(p)]) idx.key_positions.push_back(p);
      }
      for (std::size_t p = 0; p < stars_[j].num_nodes(); ++p) fixed[stars_[j].node_at(p)] = true;
    }
  }
}

const std::vector<std::uint32_t>& QueryContext::join_bucket(StarIndex from, StarIndex target,
                                                            const std::vector<NodeId>& mapping, std::uint32_t limit) {
  auto& idx = join_index_[from][target];
  const StreamLog& lg = *logs_[target];
  const StarQuery& star = stars_[target];
  const auto& pos = idx.key_positions;
  while (idx.indexed < std::min<std::size_t>(limit, lg.materialized())) {
    const auto& m = lg.at(idx.indexed);
    if (idx.key_positions.empty()) {
      idx.all.push_back(static_cast<std::uint32_t>(idx.indexed));
    } else {
      std::uint64_t h = kKeySeed;
      for (std::size_t p : pos) h = hash_combine(h, m.binding[p]);
      idx.buckets[h].push_back(static_cast<std::uint32_t>(idx.indexed));
    }
    ++idx.indexed;
  }
  if (pos.empty()) return idx.all;
  std::uint64_t h = kKeySeed;
  for (std::size_t p : pos) h = hash_combine(h, mapping[star.node_at(p)]);
  auto it = idx.buckets.find(h);
  return it == idx.buckets.end() ? empty_ : it->second;
}

}  // namespace l2p
