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

#include "l2p/plan/query_context.h"
#include "l2p/query/match.h"

namespace l2p {

/// Fetch(star, delta) or HALT.
struct Action {
  enum class Kind : std::uint8_t { kFetch, kHalt };
  Kind kind = Kind::kHalt;
  StarIndex star = 0;
  int delta = 0;

  static Action fetch(StarIndex star, int delta) { return {Kind::kFetch, star, delta}; }
  static Action halt() { return {}; }
  bool is_halt() const { return kind == Kind::kHalt; }
  bool operator==(const Action&) const = default;
};

/// Valid learned/oracle fetch sizes: delta_min, 2*delta_min, ..., delta_max.
std::vector<int> fetch_sizes();
/// Rounds to the nearest multiple of delta_min and clamps to [delta_min, delta_max].
int discretize_delta(double raw);

struct StarProgress {
  std::uint32_t position = 0;  // length of the fetched list
  bool exhausted = false;
  std::uint32_t fetches = 0;   // fetch actions that reached the stream
  std::uint64_t cost = 0;      // expansions + join attempts charged to this star
  bool operator==(const StarProgress&) const = default;
};

/// A node of the plan search space. Fetched lists are prefixes of the shared
/// stream logs, so copying a state copies cursors and the top-k buffer only.
class SearchState {
 public:
  /// s_0: one empty list per star.
  static SearchState initial(QueryContext& ctx);

  QueryContext& context() const { return *ctx_; }
  std::size_t num_stars() const { return stars_.size(); }
  const StarProgress& star(StarIndex i) const { return stars_[i]; }
  const std::vector<StarProgress>& stars() const { return stars_; }

  /// Current top-k answers, best first.
  const std::vector<CompleteMatch>& answers() const { return topk_; }
  std::uint64_t complete_matches_found() const { return found_; }

  /// k-th best complete score, kNegInf while fewer than k are known.
  double lower_bound() const { return lb_; }
  /// Bound on any complete match not yet assembled; kNegInf when none can exist.
  double upper_bound() const { return ub_; }
  /// Stream bound of star i at this state (kNegInf when exhausted).
  double star_upper_bound(StarIndex i) const;
  /// Best score any match of star i can have (first emission once fetched).
  double star_top_score(StarIndex i) const;

  std::uint64_t cost() const { return expansions_ + join_attempts_; }
  std::uint64_t expansions() const { return expansions_; }
  std::uint64_t join_attempts() const { return join_attempts_; }
  std::uint32_t fetch_count() const { return fetch_count_; }
  const std::vector<Action>& history() const { return history_; }

  bool all_exhausted() const;
  /// (UB <= LB with k answers) or nothing left to find.
  bool is_natural_termination() const;

  /// Successor state; this state is left untouched. HALT throws PlanningError.
  SearchState apply(const Action& a) const;
  /// Returns false when the action was a no-op on an exhausted star.
  bool apply_in_place(const Action& a);

  /// Grows the most recent fetch by `extra` matches, as if it had asked for
  /// delta + extra. Returns false (and changes nothing) when the star is
  /// exhausted. Requires the last history entry to be a fetch.
  bool extend_last_fetch(int extra);

  /// Identity of the fetched lists (positions and exhaustion), for memoization.
  std::string digest() const;

 private:
  explicit SearchState(QueryContext& ctx) : ctx_(&ctx) {}

  void join_new_match(StarIndex from, const PartialMatch& m);
  void join_recursive(StarIndex from, std::size_t depth, std::vector<NodeId>& mapping);
  void offer(std::vector<NodeId> mapping);
  void refresh_bounds();

  QueryContext* ctx_;
  std::vector<StarProgress> stars_;
  std::vector<CompleteMatch> topk_;
  std::uint64_t found_ = 0;
  double lb_ = kNegInf;
  double ub_ = kNegInf;
  std::uint64_t expansions_ = 0;
  std::uint64_t join_attempts_ = 0;
  std::uint32_t fetch_count_ = 0;
  std::vector<Action> history_;
};

/// Multiset equality of answer scores within kScoreEps (Definition of a terminal state).
bool same_answers(const std::vector<CompleteMatch>& a, const std::vector<CompleteMatch>& b);
/// Strict mode: identical mappings in identical order.
bool same_answers_strict(const std::vector<CompleteMatch>& a, const std::vector<CompleteMatch>& b);
double total_score(const std::vector<CompleteMatch>& answers);

}  // namespace l2p
