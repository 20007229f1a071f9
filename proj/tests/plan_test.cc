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


#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "l2p/common/errors.h"
#include "l2p/plan/executor.h"
#include "l2p/plan/plan_trace.h"
#include "oracles.h"

namespace l2p {
namespace {

using testing::brute_topk_scores;
using testing::random_instance;

GraphQuery two_star_query() {
  // Artist -memberOf-> Band <-memberOf- J.Lo, J.Lo -knows-> Artist2
  GraphQuery q;
  q.id = "fig";
  q.node_labels = {"Artist", "Band", "J.Lo", "Artist"};
  q.edges = {{0, "memberOf", 1}, {2, "memberOf", 1}, {2, "knows", 3}};
  return q;
}

std::vector<double> scores_of(const std::vector<CompleteMatch>& answers) {
  std::vector<double> out;
  for (const auto& m : answers) out.push_back(m.score);
  return out;
}

void expect_scores_equal(std::vector<double> got, std::vector<double> want) {
  ASSERT_EQ(got.size(), want.size());
  std::sort(got.begin(), got.end());
  std::sort(want.begin(), want.end());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-9);
}

TEST(Action, DeltaGrid) {
  auto sizes = fetch_sizes();
  EXPECT_EQ(sizes.size(), 20u);
  EXPECT_EQ(sizes.front(), 10);
  EXPECT_EQ(sizes.back(), 200);
  EXPECT_EQ(discretize_delta(3), 10);
  EXPECT_EQ(discretize_delta(26), 30);
  EXPECT_EQ(discretize_delta(1e9), 200);
  EXPECT_EQ(discretize_delta(std::nan("")), 10);
}

TEST(SearchState, InitialState) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  ASSERT_EQ(ctx.num_stars(), 2u);
  SearchState s = SearchState::initial(ctx);
  EXPECT_TRUE(s.answers().empty());
  EXPECT_EQ(s.cost(), 0u);
  EXPECT_EQ(s.lower_bound(), kNegInf);
  for (StarIndex i = 0; i < 2; ++i) EXPECT_EQ(s.star(i).position, 0u);
  EXPECT_FALSE(s.is_natural_termination());
  double seeds = s.star_upper_bound(0) + s.star_upper_bound(1) - ctx.overlap_correction();
  EXPECT_NEAR(s.upper_bound(), seeds, 1e-12);
}

TEST(SearchState, RejectsBadK) {
  DataGraph g = testing::toy_graph();
  EXPECT_THROW(QueryContext(g, two_star_query(), 0, 0.5), ValidationError);
}

TEST(SearchState, HaltIsNotApplicable) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  SearchState s = SearchState::initial(ctx);
  EXPECT_THROW(s.apply(Action::halt()), PlanningError);
  EXPECT_THROW(s.apply(Action::fetch(5, 10)), PlanningError);
}

TEST(SearchState, ApplyIsFunctional) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 2, 0.5);
  SearchState s0 = SearchState::initial(ctx);
  SearchState a = s0.apply(Action::fetch(0, 10));
  SearchState b = s0.apply(Action::fetch(0, 10));
  EXPECT_EQ(s0.cost(), 0u);
  EXPECT_EQ(s0.star(0).position, 0u);
  EXPECT_EQ(a.digest(), b.digest());
  EXPECT_EQ(a.cost(), b.cost());
  EXPECT_EQ(a.upper_bound(), b.upper_bound());
}

TEST(SearchState, ExhaustedFetchIsNoOp) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  SearchState s = SearchState::initial(ctx);
  s.apply_in_place(Action::fetch(0, 200));
  ASSERT_TRUE(s.star(0).exhausted);
  SearchState before = s;
  EXPECT_FALSE(s.apply_in_place(Action::fetch(0, 10)));
  EXPECT_EQ(s.cost(), before.cost());
  EXPECT_EQ(s.digest(), before.digest());
  EXPECT_EQ(s.fetch_count(), before.fetch_count());
  EXPECT_EQ(s.history().size(), before.history().size() + 1);
}

TEST(SearchState, CostIsExpansionsPlusJoins) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  SearchState s = SearchState::initial(ctx);
  s.apply_in_place(Action::fetch(0, 10));
  s.apply_in_place(Action::fetch(1, 10));
  EXPECT_EQ(s.cost(), s.expansions() + s.join_attempts());
  EXPECT_EQ(s.star(0).cost + s.star(1).cost, s.cost());
}

TEST(SearchState, FirstCompleteMatchSetsLbForKOne) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  SearchState s = SearchState::initial(ctx);
  StarIndex i = 0;
  while (s.answers().empty() && !s.all_exhausted()) {
    s.apply_in_place(Action::fetch(i, 1));
    i = (i + 1) % 2;
  }
  ASSERT_EQ(s.answers().size(), 1u);
  EXPECT_EQ(s.lower_bound(), s.answers()[0].score);
}

TEST(SearchState, AnswersRescoreExactly) {
  DataGraph g = testing::toy_graph();
  GraphQuery q = two_star_query();
  QueryContext ctx(g, q, 3, 0.5);
  SearchState s = SearchState::initial(ctx);
  s.apply_in_place(Action::fetch(0, 200));
  s.apply_in_place(Action::fetch(1, 200));
  for (const auto& m : s.answers()) EXPECT_EQ(m.score, score_match(q, m.mapping, g));
  expect_scores_equal(scores_of(s.answers()), brute_topk_scores(g, q, 0.5, 3));
}

TEST(Executor, HaltPolicyDoesNothing) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  PlanTrace t = execute_policy(ctx, HaltPolicy());
  EXPECT_TRUE(t.answers.empty());
  EXPECT_EQ(t.cost, 0u);
  EXPECT_EQ(t.termination, Termination::kHalt);
}

TEST(Executor, BudgetOfOne) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  PlanTrace t = execute_policy(ctx, TaPolicy(), 1);
  EXPECT_EQ(t.steps.size(), 1u);
  EXPECT_EQ(t.termination, Termination::kBudget);
  EXPECT_THROW(execute_policy(ctx, TaPolicy(), 0), PlanningError);
}

class BadPolicy final : public Policy {
 public:
  std::optional<StarIndex> select(const SearchState&, OverheadMeter&) const override { return 7; }
  int fetch(const SearchState&, StarIndex, OverheadMeter&) const override { return 10; }
};

TEST(Executor, InvalidStarIsPlanningError) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  EXPECT_THROW(execute_policy(ctx, BadPolicy()), PlanningError);
}

TEST(Executor, TaAlternatesStars) {
  DataGraph g = testing::toy_graph();
  QueryContext ctx(g, two_star_query(), 1, 0.5);
  PlanTrace t = run_ta(ctx);
  ASSERT_GE(t.steps.size(), 2u);
  EXPECT_EQ(t.steps[0].action.star, 0u);
  EXPECT_EQ(t.steps[1].action.star, 1u);
  for (const auto& st : t.steps) EXPECT_EQ(st.action.delta, 1);
}

TEST(Executor, TaPolicyTraceEqualsRunTa) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto inst = random_instance(seed, 120, 5);
    QueryContext a(inst.graph, inst.query, inst.k, 0.5);
    QueryContext b(inst.graph, inst.query, inst.k, 0.5);
    PlanTrace ta = run_ta(a);
    PlanTrace pol = execute_policy(b, TaPolicy());
    EXPECT_EQ(trace_log(ta), trace_log(pol)) << "seed " << seed;
    EXPECT_TRUE(same_answers_strict(ta.answers, pol.answers));
  }
}

TEST(Executor, TaMatchesBruteForce) {
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    auto inst = random_instance(seed, 120, 5);
    QueryContext ctx(inst.graph, inst.query, inst.k, 0.5);
    PlanTrace t = run_ta(ctx);
    expect_scores_equal(scores_of(t.answers), brute_topk_scores(inst.graph, inst.query, 0.5, inst.k));
  }
}

TEST(Executor, BoundsAreMonotone) {
  for (std::uint64_t seed = 200; seed < 240; ++seed) {
    auto inst = random_instance(seed, 120, 5);
    QueryContext ctx(inst.graph, inst.query, inst.k, 0.5);
    PlanTrace t = execute_policy(ctx, RandomPolicy(seed));
    double lb = kNegInf, ub = std::numeric_limits<double>::infinity();
    for (const auto& st : t.steps) {
      EXPECT_GE(st.lb, lb);
      EXPECT_LE(st.ub, ub + 1e-12);
      lb = st.lb;
      ub = st.ub;
    }
  }
}

TEST(Executor, NaturalTerminationAgreesWithTa) {
  for (std::uint64_t seed = 300; seed < 340; ++seed) {
    auto inst = random_instance(seed, 120, 5);
    QueryContext ctx(inst.graph, inst.query, inst.k, 0.5);
    PlanTrace ta = run_ta(ctx);
    // Uniform large fetches on every star, never halting.
    class Greedy final : public Policy {
     public:
      std::optional<StarIndex> select(const SearchState& s, OverheadMeter&) const override {
        return round_robin_next(s);
      }
      int fetch(const SearchState&, StarIndex, OverheadMeter&) const override { return 30; }
    };
    PlanTrace other = execute_policy(ctx, Greedy());
    EXPECT_EQ(other.termination, Termination::kNatural);
    EXPECT_TRUE(same_answers(ta.answers, other.answers)) << "seed " << seed;
  }
}

TEST(Executor, ReplayReproducesTrace) {
  for (std::uint64_t seed = 400; seed < 420; ++seed) {
    auto inst = random_instance(seed, 120, 5);
    QueryContext ctx(inst.graph, inst.query, inst.k, 0.5);
    PlanTrace t = execute_policy(ctx, RandomPolicy(seed));
    QueryContext fresh(inst.graph, inst.query, inst.k, 0.5);
    PlanTrace r = replay(fresh, t.actions(), t.termination);
    EXPECT_EQ(trace_log(t), trace_log(r));
    EXPECT_TRUE(same_answers_strict(t.answers, r.answers));
  }
}

TEST(Executor, RandomPolicyIsSeeded) {
  auto inst = random_instance(7, 120, 5);
  QueryContext ctx(inst.graph, inst.query, inst.k, 0.5);
  EXPECT_EQ(trace_log(execute_policy(ctx, RandomPolicy(3))), trace_log(execute_policy(ctx, RandomPolicy(3))));
}

TEST(TraceLog, RoundTrip) {
  auto inst = random_instance(11, 120, 5);
  QueryContext ctx(inst.graph, inst.query, inst.k, 0.5);
  PlanTrace t = run_ta(ctx);
  std::istringstream in(trace_log(t));
  auto rows = read_trace_log(in);
  ASSERT_EQ(rows.size(), t.steps.size() + 1);
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    EXPECT_EQ(rows[i].star, std::to_string(t.steps[i].action.star + 1));
    EXPECT_EQ(rows[i].delta, t.steps[i].action.delta);
    EXPECT_EQ(rows[i].lb, t.steps[i].lb);
    EXPECT_EQ(rows[i].ub, t.steps[i].ub);
    EXPECT_EQ(rows[i].cost, t.steps[i].cost);
  }
  EXPECT_EQ(rows.back().star, "NATURAL");
  EXPECT_EQ(parse_score(format_score(kNegInf)), kNegInf);
}

}  // namespace
}  // namespace l2p
