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


#include "l2p/oracle/oracle.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "l2p/common/errors.h"
#include "l2p/common/parallel.h"

namespace l2p {

void HeuristicWeights::validate() const {
  bool positive = false;
  for (double x : w) {
    if (!std::isfinite(x) || x < 0.0) throw ConfigError("heuristic weights must be finite and non-negative");
    positive |= x > 0.0;
  }
  if (!positive) throw ConfigError("at least one heuristic weight must be positive");
}

void OracleConfig::validate() const {
  if (beam_width < 1) throw ConfigError("beam width must be at least 1");
  if (depth_factor < 1 && max_depth < 1) throw ConfigError("depth budget must be at least 1");
  if (bo_iterations < 1 || bo_initial < 1) throw ConfigError("optimization budgets must be at least 1");
}

TaReference make_reference(QueryContext& ctx) {
  TaReference ref;
  ref.trace = run_ta(ctx);
  SearchState s = SearchState::initial(ctx);
  for (const auto& a : ref.trace.actions()) s.apply_in_place(a);
  for (const auto& p : s.stars()) ref.list_lengths.push_back(p.position);
  ref.answer_score = total_score(ref.trace.answers);
  return ref;
}

std::array<double, 3> heuristics(const SearchState& s, const TaReference& ref) {
  if (ref.trace.cost == 0) throw DegenerateReferenceError("reference plan has zero cost");
  std::uint64_t total = 0;
  for (auto len : ref.list_lengths) total += len;
  if (total == 0) throw DegenerateReferenceError("reference plan fetched nothing");
  if (ref.list_lengths.size() != s.num_stars()) throw DegenerateReferenceError("reference is for another query");

  const double h1 = static_cast<double>(s.cost()) / static_cast<double>(ref.trace.cost);
  const double h2 = ref.answer_score > 0.0 ? total_score(s.answers()) / ref.answer_score : 1.0;
  double diff = 0.0;
  for (StarIndex i = 0; i < s.num_stars(); ++i) {
    diff += std::abs(static_cast<double>(s.star(i).position) - static_cast<double>(ref.list_lengths[i]));
  }
  return {h1, h2, diff / static_cast<double>(total)};
}

double heuristic_value(const std::array<double, 3>& h, const HeuristicWeights& w) {
  return w.w[0] * h[0] + w.w[2] * h[2] - w.w[1] * h[1];
}

bool is_terminal(const SearchState& s, const TaReference& ref) { return same_answers(s.answers(), ref.trace.answers); }

double plan_quality(std::uint64_t ta_cost, std::uint64_t plan_cost) {
  return static_cast<double>(ta_cost) / static_cast<double>(std::max<std::uint64_t>(plan_cost, 1));
}

namespace {

TargetPlan make_plan(const SearchState& s, const TaReference& ref) {
  TargetPlan p;
  p.query_id = s.context().query().id;
  p.actions = s.history();
  p.cost = s.cost();
  p.fetches = s.fetch_count();
  p.ta_cost = ref.trace.cost;
  p.ta_fetches = ref.trace.fetches;
  p.quality = plan_quality(p.ta_cost, p.cost);
  return p;
}

struct Scored {
  double h;
  std::uint64_t cost;
  std::string digest;
  std::size_t index;
};

}  // namespace

std::optional<TargetPlan> beam_search_tqp(QueryContext& ctx, const TaReference& ref, const HeuristicWeights& w,
                                          const OracleConfig& cfg, const SearchState* start) {
  w.validate();
  cfg.validate();
  const std::size_t budget =
      cfg.max_depth > 0 ? cfg.max_depth : std::max<std::size_t>(1, cfg.depth_factor * ref.trace.steps.size());
  const auto sizes = fetch_sizes();

  std::vector<SearchState> beam;
  beam.push_back(start != nullptr ? *start : SearchState::initial(ctx));
  for (std::size_t depth = 0;; ++depth) {
    const SearchState* best = nullptr;
    for (const auto& s : beam) {
      if (is_terminal(s, ref) && (best == nullptr || s.cost() < best->cost())) best = &s;
    }
    if (best != nullptr) return make_plan(*best, ref);
    if (depth == budget) return std::nullopt;

    std::vector<SearchState> next;
    std::unordered_map<std::string, std::size_t> seen;
    auto keep = [&](SearchState&& cand) {
      std::string d = cand.digest();
      auto it = seen.find(d);
      if (it == seen.end()) {
        seen.emplace(std::move(d), next.size());
        next.push_back(std::move(cand));
      } else if (cand.cost() < next[it->second].cost()) {
        next[it->second] = std::move(cand);
      }
    };
    for (const auto& s : beam) {
      for (StarIndex i = 0; i < s.num_stars(); ++i) {
        if (s.star(i).exhausted) continue;
        // Successive delta values share their prefix: grow one fetch step by step.
        SearchState cur = s.apply(Action::fetch(i, sizes.front()));
        keep(SearchState(cur));
        for (std::size_t d = 1; d < sizes.size(); ++d) {
          if (!cur.extend_last_fetch(sizes[d] - sizes[d - 1])) break;
          keep(SearchState(cur));
        }
      }
    }
    if (next.empty()) return std::nullopt;

    std::vector<Scored> scored;
    scored.reserve(next.size());
    for (std::size_t j = 0; j < next.size(); ++j) {
      scored.push_back({heuristic_value(heuristics(next[j], ref), w), next[j].cost(), next[j].digest(), j});
    }
    const std::size_t b = std::min(cfg.beam_width, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(b), scored.end(),
                      [](const Scored& a, const Scored& c) {
                        if (a.h != c.h) return a.h < c.h;
                        if (a.cost != c.cost) return a.cost < c.cost;
                        return a.digest < c.digest;
                      });
    std::vector<SearchState> pruned;
    pruned.reserve(b);
    for (std::size_t j = 0; j < b; ++j) pruned.push_back(std::move(next[scored[j].index]));
    beam = std::move(pruned);
  }
}

std::vector<OracleInstance> prepare_instances(const DataGraph& g, const std::vector<GraphQuery>& queries, int k,
                                              double theta, unsigned threads) {
  std::vector<OracleInstance> out(queries.size());
  parallel_for(
      queries.size(),
      [&](std::size_t i) {
        out[i].ctx = std::make_unique<QueryContext>(g, queries[i], k, theta);
        out[i].ref = make_reference(*out[i].ctx);
      },
      threads);
  return out;
}

std::vector<std::optional<TargetPlan>> compute_plans(const HeuristicWeights& w, std::vector<OracleInstance>& instances,
                                                     const OracleConfig& cfg) {
  std::vector<std::optional<TargetPlan>> out(instances.size());
  parallel_for(
      instances.size(),
      [&](std::size_t i) { out[i] = beam_search_tqp(*instances[i].ctx, instances[i].ref, w, cfg); }, cfg.threads);
  return out;
}

double plan_value(const HeuristicWeights& w, std::vector<OracleInstance>& instances, const OracleConfig& cfg) {
  if (instances.empty()) throw ConfigError("plan value needs at least one training query");
  double sum = 0.0;
  for (const auto& p : compute_plans(w, instances, cfg)) sum += p ? p->quality : 0.0;
  return sum / static_cast<double>(instances.size());
}

}  // namespace l2p
