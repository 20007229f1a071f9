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
#include <queue>
#include <vector>

#include "l2p/query/match.h"
#include "l2p/stream/match_scorer.h"

namespace l2p {

/// Optimistic contribution of one unbound leaf: its node score plus its edge score.
inline constexpr double kLeafOptimism = 2.0;

/// Sorted access over the matches of one star. Best-first expansion over a
/// heap of partially bound matches keyed by an admissible optimistic score;
/// matches are emitted in non-increasing score order without materializing
/// the full match set. One heap pop is one cost unit.
class StarStream {
 public:
  StarStream(const MatchScorer& scorer, const StarQuery& star);

  /// The next match, or nullopt once the frontier is empty.
  std::optional<PartialMatch> next();

  /// Up to `delta` further matches; fewer only at exhaustion.
  std::vector<PartialMatch> fetch(int delta);

  /// max(head key, last emitted score) while unexhausted, else kNegInf.
  double upper_bound() const;

  bool exhausted() const { return exhausted_; }
  std::uint64_t cost() const { return pops_; }
  std::uint64_t emitted() const { return emitted_; }
  const StarQuery& star() const { return *star_; }

 private:
  struct Entry {
    double key;
    double exact;
    NodeId pivot;
    std::vector<NodeId> leaves;  // images of the first leaves.size() leaves
  };
  // Heap order: key descending, then pivot id, then leaf bindings lexicographically.
  struct Worse {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.key != b.key) return a.key < b.key;
      if (a.pivot != b.pivot) return a.pivot > b.pivot;
      return a.leaves > b.leaves;
    }
  };

  void expand(const Entry& e);

  const MatchScorer* scorer_;
  const StarQuery* star_;
  std::priority_queue<Entry, std::vector<Entry>, Worse> frontier_;
  std::uint64_t pops_ = 0;
  std::uint64_t emitted_ = 0;
  double last_score_ = kNegInf;
  bool exhausted_ = false;
};

/// Outcome of advancing a cursor over a StreamLog.
struct StreamAdvance {
  std::uint32_t position;
  bool exhausted;
  std::uint64_t cost;
};

/// Lazily materialized emissions of a StarStream, shared by every search
/// state of one query. A state only keeps a cursor (position, exhausted);
/// advancing the cursor reproduces exactly what fetch() on a private stream
/// would return and charge.
class StreamLog {
 public:
  StreamLog(const MatchScorer& scorer, const StarQuery& star);

  StreamAdvance advance(std::uint32_t position, bool exhausted, int delta);

  /// Stream bound after `position` emissions (kNegInf when exhausted).
  double upper_bound_at(std::uint32_t position, bool exhausted) const;

  const PartialMatch& at(std::size_t i) const { return emitted_[i]; }
  std::size_t materialized() const { return emitted_.size(); }
  const StarQuery& star() const { return stream_.star(); }

 private:
  void ensure(std::size_t count);

  StarStream stream_;
  std::vector<PartialMatch> emitted_;
  std::vector<std::uint64_t> cost_at_;  // cost_at_[n]: pops when the n-th emission returned
  std::vector<double> bound_at_;        // bound_at_[n]: upper bound after n emissions
  bool drained_ = false;
  std::uint64_t cost_at_drain_ = 0;
};

}  // namespace l2p
