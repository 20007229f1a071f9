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


#include "l2p/learning/features.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "l2p/common/errors.h"
#include "l2p/common/hash.h"

namespace l2p {

std::uint64_t feature_schema_hash() {
  std::string all = "v" + std::to_string(kFeatureSchemaVersion);
  for (auto n : kSelectFeatureNames) (all += "|") += n;
  all += "#";
  for (auto n : kFetchFeatureNames) (all += "|") += n;
  return fnv1a(all);
}

namespace {

// Scores are put on a per-query scale; an undefined bound reads as -1.
double norm(double score, double scale) { return score == kNegInf ? -1.0 : score / scale; }

struct StarSlots {
  double nodes, edges, pivots, joinable, ub, top, length, fetches, cost_fraction, exhausted;
};

StarSlots star_slots(const SearchState& s, StarIndex i, double scale) {
  const QueryContext& ctx = s.context();
  const auto& star = ctx.stars()[i];
  const auto& p = s.star(i);
  StarSlots out;
  out.nodes = static_cast<double>(star.num_nodes());
  out.edges = static_cast<double>(star.num_edges());
  out.pivots = static_cast<double>(ctx.pivot_candidates(i));
  out.joinable = static_cast<double>(ctx.joinable_nodes(i));
  out.ub = norm(s.star_upper_bound(i), scale);
  out.top = norm(s.star_top_score(i), scale);
  out.length = p.position;
  out.fetches = p.fetches;
  out.cost_fraction = s.cost() == 0 ? 0.0 : static_cast<double>(p.cost) / static_cast<double>(s.cost());
  out.exhausted = p.exhausted ? 1.0 : 0.0;
  return out;
}

StarSlots halt_slots(const SearchState& s, double scale) {
  // Star-agnostic aggregates: maxima for sizes and bounds, totals for progress.
  StarSlots a{0, 0, 0, 0, -1, -1, 0, 0, 0, 1};
  for (StarIndex i = 0; i < s.num_stars(); ++i) {
    StarSlots x = star_slots(s, i, scale);
    a.nodes = std::max(a.nodes, x.nodes);
    a.edges = std::max(a.edges, x.edges);
    a.pivots = std::max(a.pivots, x.pivots);
    a.joinable = std::max(a.joinable, x.joinable);
    a.ub = std::max(a.ub, x.ub);
    a.top = std::max(a.top, x.top);
    a.length += x.length;
    a.fetches += x.fetches;
    a.cost_fraction = std::max(a.cost_fraction, x.cost_fraction);
    a.exhausted = std::min(a.exhausted, x.exhausted);
  }
  return a;
}

void append_common(FeatureVector& f, const SearchState& s, const StarSlots& x, bool halt, double scale) {
  const QueryContext& ctx = s.context();
  const double lb = norm(s.lower_bound(), scale);
  const double ub = norm(s.upper_bound(), scale);
  std::size_t open = 0;
  for (const auto& p : s.stars()) open += p.exhausted ? 0 : 1;
  f = {x.nodes,
       x.edges,
       x.pivots,
       x.joinable,
       static_cast<double>(s.num_stars()),
       static_cast<double>(ctx.k()),
       lb,
       x.ub,
       ub,
       s.lower_bound() == kNegInf ? 2.0 : ub - lb,
       x.top,
       x.length,
       x.fetches,
       x.cost_fraction,
       x.exhausted,
       halt ? 1.0 : 0.0,
       static_cast<double>(s.answers().size()) / static_cast<double>(ctx.k()),
       static_cast<double>(std::min<std::uint64_t>(s.complete_matches_found(), 1000000)),
       static_cast<double>(ctx.query().size()),
       static_cast<double>(s.history().size()),
       static_cast<double>(open)};
}

}  // namespace

FeatureVector select_features(const SearchState& s, std::optional<StarIndex> candidate) {
  const double scale = static_cast<double>(s.context().query().size());
  FeatureVector f;
  if (!candidate) {
    append_common(f, s, halt_slots(s, scale), true, scale);
    return f;
  }
  if (*candidate >= s.num_stars()) throw PlanningError("feature request for star " + std::to_string(*candidate + 1) +
                                                       " of " + std::to_string(s.num_stars()));
  append_common(f, s, star_slots(s, *candidate, scale), false, scale);
  return f;
}

FeatureVector fetch_features(const SearchState& s, StarIndex star) {
  FeatureVector f = select_features(s, star);
  const double scale = static_cast<double>(s.context().query().size());
  const double ub_i = s.star_upper_bound(star);
  const double lb = s.lower_bound();
  f.push_back(ub_i == kNegInf ? -1.0 : (lb == kNegInf ? 2.0 : (ub_i - lb) / scale));
  double others = 0.0;
  for (StarIndex j = 0; j < s.num_stars(); ++j) {
    if (j != star) others += std::max(0.0, s.star_top_score(j));
  }
  f.push_back(others / scale);
  f.push_back(static_cast<double>(s.context().k()) - static_cast<double>(s.answers().size()));
  double total = 0.0;
  for (const auto& p : s.stars()) total += p.position;
  f.push_back(total);
  return f;
}

}  // namespace l2p
