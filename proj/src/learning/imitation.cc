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


#include "l2p/learning/imitation.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <unordered_map>

#include <spdlog/spdlog.h>

#include "l2p/common/errors.h"
#include "l2p/common/hash.h"
#include "l2p/common/parallel.h"
#include "l2p/eval/metrics.h"
#include "l2p/plan/executor.h"

namespace l2p {

void ImitationDataset::append(const ImitationDataset& other) {
  select.insert(select.end(), other.select.begin(), other.select.end());
  fetch.insert(fetch.end(), other.fetch.begin(), other.fetch.end());
}

SelectExample make_select_example(const SearchState& s, std::optional<StarIndex> label, const std::string& query_id) {
  SelectExample ex;
  ex.query_id = query_id;
  for (StarIndex i = 0; i < s.num_stars(); ++i) {
    if (s.star(i).exhausted) continue;
    ex.ids.push_back(i);
    ex.candidates.push_back(select_features(s, i));
  }
  ex.ids.push_back(std::nullopt);
  ex.candidates.push_back(select_features(s, std::nullopt));
  auto it = std::find(ex.ids.begin(), ex.ids.end(), label);
  if (it == ex.ids.end()) throw PlanningError("query " + query_id + ": label names an exhausted star");
  ex.label = static_cast<std::size_t>(it - ex.ids.begin());
  return ex;
}

ImitationDataset build_exact_imitation(std::vector<OracleInstance>& instances,
                                       const std::vector<std::optional<TargetPlan>>& plans) {
  std::map<std::string, const TargetPlan*> by_id;
  for (const auto& p : plans) {
    if (p) by_id[p->query_id] = &*p;
  }
  if (by_id.empty()) throw ValidationError("no target plans to imitate");
  ImitationDataset data;
  for (auto& inst : instances) {
    const std::string& id = inst.ctx->query().id;
    auto it = by_id.find(id);
    if (it == by_id.end()) continue;
    const TargetPlan& plan = *it->second;
    SearchState s = SearchState::initial(*inst.ctx);
    try {
      for (const Action& a : plan.actions) {
        if (a.is_halt() || a.star >= s.num_stars() || s.star(a.star).exhausted) {
          throw ValidationError("query " + id + ": plan is not replayable");
        }
        data.select.push_back(make_select_example(s, a.star, id));
        data.fetch.push_back({id, fetch_features(s, a.star), a.delta});
        s.apply_in_place(a);
      }
    } catch (const PlanningError& e) {
      throw ValidationError("query " + id + ": " + e.what());
    }
    if (s.cost() != plan.cost || !is_terminal(s, inst.ref)) {
      throw ValidationError("query " + id + ": plan does not replay to its recorded cost and answers");
    }
    data.select.push_back(make_select_example(s, std::nullopt, id));
  }
  return data;
}

LearnedPolicy train(const ImitationDataset& data, const LearnerConfig& cfg, PolicyMetadata meta) {
  if (data.select.empty() || data.fetch.empty()) throw ValidationError("imitation dataset has an empty half");
  std::vector<FeatureVector> x;
  std::vector<double> y;
  bool any_halt = false;
  bool any_star = false;
  for (const auto& ex : data.select) {
    for (std::size_t c = 0; c < ex.candidates.size(); ++c) {
      x.push_back(ex.candidates[c]);
      y.push_back(c == ex.label ? 1.0 : 0.0);
    }
    (ex.ids[ex.label] ? any_star : any_halt) = true;
  }
  if (!any_halt || !any_star) {
    spdlog::warn("selection labels are all {}; the trained policy will be near constant",
                 any_halt ? "HALT" : "fetches");
  }
  Gbdt select;
  select.fit(x, y, GbdtLoss::kLogistic, cfg.select);

  x.clear();
  y.clear();
  for (const auto& ex : data.fetch) {
    x.push_back(ex.features);
    y.push_back(static_cast<double>(ex.delta));
  }
  Gbdt fetch;
  fetch.fit(x, y, GbdtLoss::kSquared, cfg.fetch);

  meta.select_examples = data.select.size();
  meta.fetch_examples = data.fetch.size();
  return LearnedPolicy(std::move(select), std::move(fetch), std::move(meta));
}

double mixture_probability(double beta0, std::size_t iteration) {
  return std::pow(beta0, static_cast<double>(iteration));
}

namespace {

// Oracle decisions at states reached during rollouts, keyed by digest. Reruns
// from off-path states get a depth budget proportional to the length of the
// oracle plan from s_0 rather than to the (much longer) TA trace.
class OracleMemo {
 public:
  OracleMemo(OracleInstance& inst, const DaggerConfig& cfg) : inst_(&inst), cfg_(&cfg), rerun_(cfg.oracle) {}

  // nullopt when the rerun finds no terminal plan.
  std::optional<Action> decide(const SearchState& s) {
    std::string key = s.digest();
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    if (!rooted_) root();
    std::optional<Action> a;
    if (is_terminal(s, inst_->ref)) {
      a = Action::halt();
    } else if (auto plan = beam_search_tqp(*inst_->ctx, inst_->ref, cfg_->weights, rerun_, &s)) {
      a = plan->actions.size() > s.history().size() ? plan->actions[s.history().size()] : Action::halt();
    }
    memo_.emplace(std::move(key), a);
    return a;
  }

  std::size_t depth_budget() {
    if (!rooted_) root();
    return rerun_.max_depth;
  }

 private:
  void root() {
    rooted_ = true;
    SearchState s0 = SearchState::initial(*inst_->ctx);
    auto plan = beam_search_tqp(*inst_->ctx, inst_->ref, cfg_->weights, cfg_->oracle, &s0);
    std::size_t length = plan ? plan->actions.size() : inst_->ref.trace.steps.size();
    rerun_.max_depth = std::max<std::size_t>(1, cfg_->rerun_depth_factor * length);
    std::optional<Action> first;
    if (plan) first = plan->actions.empty() ? Action::halt() : plan->actions.front();
    memo_.emplace(s0.digest(), first);
  }

  OracleInstance* inst_;
  const DaggerConfig* cfg_;
  OracleConfig rerun_;
  bool rooted_ = false;
  std::unordered_map<std::string, std::optional<Action>> memo_;
};

struct Rollout {
  ImitationDataset data;
  std::size_t skipped = 0;
};

Rollout roll_out(OracleInstance& inst, const LearnedPolicy& learner, const DaggerConfig& cfg, std::size_t iteration,
                 OracleMemo& memo) {
  Rollout out;
  const std::string& id = inst.ctx->query().id;
  const double beta = mixture_probability(cfg.beta0, iteration);
  const std::size_t budget = memo.depth_budget();
  OverheadMeter meter;
  SearchState s = SearchState::initial(*inst.ctx);
  for (std::size_t step = 0; step <= budget && !s.is_natural_termination(); ++step) {
    std::optional<Action> expert = memo.decide(s);
    std::optional<StarIndex> mine = learner.select(s, meter);
    Action learned = mine ? Action::fetch(*mine, learner.fetch(s, *mine, meter)) : Action::halt();
    if (!expert) {
      ++out.skipped;
      spdlog::warn("query {}: oracle rerun found no plan at step {}; state skipped", id, step);
    } else {
      std::optional<StarIndex> label = expert->is_halt() ? std::nullopt : std::optional<StarIndex>(expert->star);
      if (label != mine) out.data.select.push_back(make_select_example(s, label, id));
      if (label && learner.fetch(s, *label, meter) != expert->delta) {
        out.data.fetch.push_back({id, fetch_features(s, *label), expert->delta});
      }
    }
    std::uint64_t h = hash_combine(hash_combine(hash_combine(cfg.seed, iteration), fnv1a(id)), step);
    bool take_expert = expert && unit_interval(splitmix64(h)) < beta;
    const Action& a = take_expert ? *expert : learned;
    if (a.is_halt()) break;
    s.apply_in_place(a);
  }
  return out;
}

}  // namespace

DaggerResult dagger(std::vector<OracleInstance>& instances, const ImitationDataset& initial, const DaggerConfig& cfg) {
  if (cfg.iterations < 1) throw ConfigError("DAgger needs at least one iteration");
  if (!(cfg.beta0 >= 0.0 && cfg.beta0 <= 1.0)) throw ConfigError("beta must lie in [0, 1]");
  cfg.weights.validate();
  cfg.oracle.validate();
  DaggerResult result;
  ImitationDataset data = initial;
  result.policies.push_back(train(data, cfg.learner, {"dagger", 1, cfg.seed, 0, 0}));
  result.select_examples.push_back(data.select.size());
  result.fetch_examples.push_back(data.fetch.size());

  std::vector<OracleMemo> memos;
  memos.reserve(instances.size());
  for (auto& inst : instances) memos.emplace_back(inst, cfg);

  for (std::size_t j = 2; j <= cfg.iterations; ++j) {
    const LearnedPolicy& learner = result.policies.back();
    std::vector<Rollout> rollouts(instances.size());
    parallel_for(
        instances.size(), [&](std::size_t q) { rollouts[q] = roll_out(instances[q], learner, cfg, j, memos[q]); },
        cfg.threads);
    for (const auto& r : rollouts) {
      data.append(r.data);
      result.skipped_states += r.skipped;
    }
    spdlog::info("dagger iteration {}: {} selection and {} fetch examples", j, data.select.size(), data.fetch.size());
    result.policies.push_back(train(data, cfg.learner, {"dagger", static_cast<std::uint32_t>(j), cfg.seed, 0, 0}));
    result.select_examples.push_back(data.select.size());
    result.fetch_examples.push_back(data.fetch.size());
  }
  return result;
}

PolicyScore score_policy(const Policy& policy, std::vector<OracleInstance>& validation, unsigned threads) {
  if (validation.empty()) throw ValidationError("no validation queries");
  std::vector<double> acc(validation.size());
  std::vector<double> spd(validation.size());
  parallel_for(
      validation.size(),
      [&](std::size_t q) {
        QueryResult ta = result_of(validation[q].ref.trace);
        QueryResult p = result_of(execute_policy(*validation[q].ctx, policy));
        acc[q] = accuracy(ta, p);
        spd[q] = floored_speedup(ta, p);
      },
      threads);
  return {mean(acc), mean(spd)};
}

std::size_t select_best(const std::vector<PolicyScore>& scores) {
  if (scores.empty()) throw ConfigError("no candidate policies");
  constexpr double kTie = 1e-12;
  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    const PolicyScore& a = scores[i];
    const PolicyScore& b = scores[best];
    if (a.accuracy > b.accuracy + kTie || (std::abs(a.accuracy - b.accuracy) <= kTie && a.speedup > b.speedup + kTie)) {
      best = i;
    }
  }
  return best;
}

std::size_t select_policy(const std::vector<const Policy*>& candidates, std::vector<OracleInstance>& validation,
                          std::vector<PolicyScore>* scores, unsigned threads) {
  if (candidates.empty()) throw ConfigError("no candidate policies");
  std::vector<PolicyScore> local;
  if (candidates.size() > 1) {
    for (const Policy* p : candidates) local.push_back(score_policy(*p, validation, threads));
  } else if (scores != nullptr) {
    local.push_back(score_policy(*candidates.front(), validation, threads));
  } else {
    return 0;
  }
  std::size_t best = select_best(local);
  if (scores != nullptr) *scores = std::move(local);
  return best;
}

LearnerConfig tune_learner(const ImitationDataset& data, std::vector<OracleInstance>& validation, std::size_t trials,
                           std::uint64_t seed, unsigned threads) {
  static constexpr int kRounds[] = {50, 100, 200};
  static constexpr int kDepths[] = {3, 4, 6};
  static constexpr double kRates[] = {0.05, 0.1, 0.2};
  std::mt19937_64 rng(seed);
  std::vector<LearnerConfig> configs{LearnerConfig{}};
  for (std::size_t t = 1; t < trials; ++t) {
    LearnerConfig c;
    c.select.rounds = c.fetch.rounds = kRounds[rng() % 3];
    c.select.max_depth = c.fetch.max_depth = kDepths[rng() % 3];
    c.select.learning_rate = c.fetch.learning_rate = kRates[rng() % 3];
    c.select.seed = c.fetch.seed = seed;
    configs.push_back(c);
  }
  std::vector<PolicyScore> scores;
  for (const auto& c : configs) scores.push_back(score_policy(train(data, c), validation, threads));
  return configs[select_best(scores)];
}

}  // namespace l2p
