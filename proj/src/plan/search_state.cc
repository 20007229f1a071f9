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

#include "l2p/plan/search_state.h"

#include <algorithm>
#include <cmath>

#include "l2p/common/errors.h"

namespace l2p {

std::vector<int> fetch_sizes() {
  std::vector<int> out;
  for (int d = kDeltaMin; d <= kDeltaMax; d += kDeltaMin) out.push_back(d);
  return out;
}

int discretize_delta(double raw) {
  if (!std::isfinite(raw)) return kDeltaMin;
  double steps = std::round(raw / kDeltaMin);
  int delta = static_cast<int>(std::clamp(steps, 1.0, static_cast<double>(kDeltaMax / kDeltaMin))) * kDeltaMin;
  return delta;
}

SearchState SearchState::initial(QueryContext& ctx) {
  SearchState s(ctx);
  s.stars_.resize(ctx.num_stars());
  s.refresh_bounds();
  return s;
}

double SearchState::star_upper_bound(StarIndex i) const {
  return ctx_->log(i).upper_bound_at(stars_[i].position, stars_[i].exhausted);
}

double SearchState::star_top_score(StarIndex i) const {
  if (stars_[i].position > 0) return ctx_->log(i).at(0).score;
  if (stars_[i].exhausted) return kNegInf;
  return ctx_->log(i).upper_bound_at(0, false);
}

bool SearchState::all_exhausted() const {
  return std::all_of(stars_.begin(), stars_.end(), [](const StarProgress& p) { return p.exhausted; });
}

bool SearchState::is_natural_termination() const {
  if (all_exhausted() || ub_ == kNegInf) return true;
  return topk_.size() == static_cast<std::size_t>(ctx_->k()) && ub_ <= lb_ + kScoreEps;
}

SearchState SearchState::apply(const Action& a) const {
  SearchState next = *this;
  next.apply_in_place(a);
  return next;
}

bool SearchState::apply_in_place(const Action& a) {
  if (a.is_halt()) throw PlanningError("HALT is not an applicable fetch action");
  if (a.star >= stars_.size()) throw PlanningError("fetch targets star " + std::to_string(a.star + 1) + " of " +
                                                   std::to_string(stars_.size()));
  if (a.delta < 1) throw PlanningError("fetch size must be positive");
  history_.push_back(a);
  StarProgress& sp = stars_[a.star];
  if (sp.exhausted) return false;

  StreamLog& lg = ctx_->log(a.star);
  const std::uint32_t old = sp.position;
  StreamAdvance adv = lg.advance(old, false, a.delta);
  sp.position = adv.position;
  sp.exhausted = adv.exhausted;
  ++sp.fetches;
  ++fetch_count_;
  expansions_ += adv.cost;
  const std::uint64_t joins_before = join_attempts_;
  for (std::uint32_t i = old; i < adv.position; ++i) join_new_match(a.star, lg.at(i));
  sp.cost += adv.cost + (join_attempts_ - joins_before);
  refresh_bounds();
  return true;
}

bool SearchState::extend_last_fetch(int extra) {
  if (history_.empty() || history_.back().is_halt()) throw PlanningError("no fetch to extend");
  if (extra < 1) throw PlanningError("fetch size must be positive");
  const StarIndex i = history_.back().star;
  StarProgress& sp = stars_[i];
  if (sp.exhausted) return false;
  history_.back().delta += extra;
  StreamLog& lg = ctx_->log(i);
  const std::uint32_t old = sp.position;
  StreamAdvance adv = lg.advance(old, false, extra);
  sp.position = adv.position;
  sp.exhausted = adv.exhausted;
  expansions_ += adv.cost;
  const std::uint64_t joins_before = join_attempts_;
  for (std::uint32_t j = old; j < adv.position; ++j) join_new_match(i, lg.at(j));
  sp.cost += adv.cost + (join_attempts_ - joins_before);
  refresh_bounds();
  return true;
}

void SearchState::join_new_match(StarIndex from, const PartialMatch& m) {
  std::vector<NodeId> mapping(ctx_->query().num_nodes(), kNoNode);
  const StarQuery& star = ctx_->stars()[from];
  for (std::size_t p = 0; p < m.binding.size(); ++p) mapping[star.node_at(p)] = m.binding[p];
  join_recursive(from, 0, mapping);
}

void SearchState::join_recursive(StarIndex from, std::size_t depth, std::vector<NodeId>& mapping) {
  const auto& order = ctx_->join_order(from);
  if (depth == order.size()) {
    offer(mapping);
    return;
  }
  const StarIndex j = order[depth];
  const std::uint32_t limit = stars_[j].position;
  // Nested-loop accounting: every stored match of star j is one attempt.
  join_attempts_ += limit;
  if (limit == 0) return;
  const StarQuery& star = ctx_->stars()[j];
  const StreamLog& lg = ctx_->log(j);
  const auto& bucket = ctx_->join_bucket(from, j, mapping, limit);
  std::vector<QueryNodeId> assigned;
  for (std::uint32_t idx : bucket) {
    if (idx >= limit) break;
    const PartialMatch& pm = lg.at(idx);
    bool ok = true;
    assigned.clear();
    for (std::size_t p = 0; p < pm.binding.size() && ok; ++p) {
      QueryNodeId u = star.node_at(p);
      NodeId v = pm.binding[p];
      if (mapping[u] != kNoNode) {
        ok = mapping[u] == v;
        continue;
      }
      if (std::find(mapping.begin(), mapping.end(), v) != mapping.end()) {
        ok = false;
        continue;
      }
      mapping[u] = v;
      assigned.push_back(u);
    }
    if (ok) join_recursive(from, depth + 1, mapping);
    for (QueryNodeId u : assigned) mapping[u] = kNoNode;
  }
}

void SearchState::offer(std::vector<NodeId> mapping) {
  ++found_;
  CompleteMatch cm{std::move(mapping), 0.0};
  cm.score = ctx_->scorer().score(ctx_->query(), cm.mapping);
  const auto k = static_cast<std::size_t>(ctx_->k());
  if (topk_.size() == k && !ranks_before(cm, topk_.back())) return;
  auto pos = std::upper_bound(topk_.begin(), topk_.end(), cm, ranks_before);
  topk_.insert(pos, std::move(cm));
  if (topk_.size() > k) topk_.pop_back();
}

void SearchState::refresh_bounds() {
  const auto k = static_cast<std::size_t>(ctx_->k());
  lb_ = topk_.size() == k ? topk_.back().score : kNegInf;

  const std::size_t t = stars_.size();
  std::vector<double> top(t);
  for (StarIndex i = 0; i < t; ++i) {
    top[i] = star_top_score(i);
    if (top[i] == kNegInf) {
      // A star without any match rules out every complete match.
      ub_ = kNegInf;
      return;
    }
  }
  double best = kNegInf;
  for (StarIndex i = 0; i < t; ++i) {
    if (stars_[i].exhausted) continue;
    double term = star_upper_bound(i);
    for (StarIndex j = 0; j < t; ++j) {
      if (j != i) term += top[j];
    }
    best = std::max(best, term);
  }
  ub_ = best == kNegInf ? kNegInf : best - ctx_->overlap_correction();
}

std::string SearchState::digest() const {
  std::string out;
  for (const auto& p : stars_) {
    out += std::to_string(p.position);
    out += p.exhausted ? "x|" : "|";
  }
  return out;
}

bool same_answers(const std::vector<CompleteMatch>& a, const std::vector<CompleteMatch>& b) {
  if (a.size() != b.size()) return false;
  std::vector<double> sa, sb;
  for (const auto& m : a) sa.push_back(m.score);
  for (const auto& m : b) sb.push_back(m.score);
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  for (std::size_t i = 0; i < sa.size(); ++i) {
    if (std::abs(sa[i] - sb[i]) > kScoreEps) return false;
  }
  return true;
}

bool same_answers_strict(const std::vector<CompleteMatch>& a, const std::vector<CompleteMatch>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].mapping != b[i].mapping || std::abs(a[i].score - b[i].score) > kScoreEps) return false;
  }
  return true;
}

double total_score(const std::vector<CompleteMatch>& answers) {
  double s = 0.0;
  for (const auto& m : answers) s += m.score;
  return s;
}

}  // namespace l2p
