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
#include <random>
#include <sstream>

#include "l2p/common/errors.h"
#include "l2p/learning/features.h"
#include "l2p/learning/gbdt.h"
#include "l2p/learning/imitation.h"
#include "l2p/learning/learned_policy.h"
#include "l2p/plan/executor.h"
#include "l2p/workload/workload.h"

namespace l2p {
namespace {

// A small generated workload with oracle plans, shared by the suite.
class LearningFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    GraphGenConfig gc;
    gc.nodes = 400;
    gc.edges = 1200;
    gc.node_vocab = 50;
    gc.seed = 21;
    graph_ = new DataGraph(generate_graph(gc));
    auto split = instantiate(generate_templates(*graph_, 5, 21, 4), 6, 0.3, 21);
    instances_ = new std::vector<OracleInstance>(prepare_instances(*graph_, split.train, 3, 0.5));
    OracleConfig oc;
    plans_ = new std::vector<std::optional<TargetPlan>>(compute_plans(HeuristicWeights{}, *instances_, oc));
  }
  static void TearDownTestSuite() {
    delete plans_;
    delete instances_;
    delete graph_;
  }
  static DataGraph* graph_;
  static std::vector<OracleInstance>* instances_;
  static std::vector<std::optional<TargetPlan>>* plans_;
};
DataGraph* LearningFixture::graph_ = nullptr;
std::vector<OracleInstance>* LearningFixture::instances_ = nullptr;
std::vector<std::optional<TargetPlan>>* LearningFixture::plans_ = nullptr;

TEST_F(LearningFixture, FeaturesAtInitialState) {
  QueryContext& ctx = *(*instances_)[0].ctx;
  SearchState s0 = SearchState::initial(ctx);
  for (StarIndex i = 0; i < s0.num_stars(); ++i) {
    auto f = select_features(s0, i);
    ASSERT_EQ(f.size(), kSelectFeatureNames.size());
    EXPECT_EQ(f[0], static_cast<double>(ctx.stars()[i].num_nodes()));
    EXPECT_EQ(f[4], static_cast<double>(ctx.num_stars()));
    EXPECT_EQ(f[5], 3.0);
    EXPECT_EQ(f[6], -1.0);   // no lower bound yet
    EXPECT_EQ(f[9], 2.0);    // gap sentinel
    EXPECT_EQ(f[11], 0.0);   // nothing fetched
    EXPECT_EQ(f[13], 0.0);   // no cost spent
    EXPECT_EQ(f[15], 0.0);
    EXPECT_EQ(f[16], 0.0);
    EXPECT_EQ(f[19], 0.0);
    auto g = fetch_features(s0, i);
    ASSERT_EQ(g.size(), kFetchFeatureNames.size());
    for (std::size_t j = 0; j < f.size(); ++j) EXPECT_EQ(g[j], f[j]) << kFetchFeatureNames[j];
  }
  auto h = select_features(s0, std::nullopt);
  EXPECT_EQ(h[15], 1.0);
  EXPECT_THROW(select_features(s0, static_cast<StarIndex>(s0.num_stars())), PlanningError);
}

TEST(Gbdt, SeparatesClasses) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 400; ++i) {
    double a = u(rng), b = u(rng);
    x.push_back({a, b});
    y.push_back(a + 0.5 * b > 0 ? 1.0 : 0.0);
  }
  Gbdt m;
  m.fit(x, y, GbdtLoss::kLogistic, GbdtConfig{});
  int right = 0;
  for (std::size_t i = 0; i < x.size(); ++i) right += (m.predict(x[i]) > 0.5) == (y[i] > 0.5);
  EXPECT_GE(right, 390);
  EXPECT_GT(m.predict({0.9, 0.9}), 0.9);
  EXPECT_LT(m.predict({-0.9, -0.9}), 0.1);
}

TEST(Gbdt, RegressesStepFunction) {
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 100; ++i) {
    x.push_back({i / 100.0});
    y.push_back(i < 50 ? 10.0 : 30.0);
  }
  Gbdt m;
  m.fit(x, y, GbdtLoss::kSquared, GbdtConfig{});
  EXPECT_NEAR(m.predict({0.2}), 10.0, 0.5);
  EXPECT_NEAR(m.predict({0.8}), 30.0, 0.5);
}

TEST(Gbdt, ConstantTargets) {
  std::vector<std::vector<double>> x{{1.0}, {2.0}, {3.0}};
  Gbdt sq;
  sq.fit(x, {7.0, 7.0, 7.0}, GbdtLoss::kSquared, GbdtConfig{});
  EXPECT_NEAR(sq.predict({5.0}), 7.0, 1e-9);
  Gbdt lg;
  lg.fit(x, {1.0, 1.0, 1.0}, GbdtLoss::kLogistic, GbdtConfig{});
  EXPECT_GT(lg.predict({5.0}), 0.99);
}

TEST(Gbdt, DeterministicAndSerializable) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<double>> x;
  std::vector<double> y;
  for (int i = 0; i < 200; ++i) {
    x.push_back({u(rng), u(rng), u(rng)});
    y.push_back(std::sin(6 * x.back()[0]) + x.back()[2]);
  }
  GbdtConfig cfg;
  cfg.subsample = 0.7;
  Gbdt a, b;
  a.fit(x, y, GbdtLoss::kSquared, cfg);
  b.fit(x, y, GbdtLoss::kSquared, cfg);
  EXPECT_TRUE(a == b);
  std::stringstream buf;
  a.save(buf);
  Gbdt c = Gbdt::load(buf);
  EXPECT_TRUE(a == c);
  for (const auto& row : x) EXPECT_EQ(a.predict(row), c.predict(row));
}

TEST(Gbdt, RejectsBadInput) {
  Gbdt m;
  EXPECT_THROW(m.fit({}, {}, GbdtLoss::kSquared, GbdtConfig{}), ConfigError);
  GbdtConfig bad;
  bad.learning_rate = 0.0;
  EXPECT_THROW(bad.validate(), ConfigError);
}

TEST_F(LearningFixture, ExactImitationCounts) {
  auto data = build_exact_imitation(*instances_, *plans_);
  std::size_t fetches = 0, plans = 0;
  for (const auto& p : *plans_) {
    if (!p) continue;
    ++plans;
    fetches += p->actions.size();
  }
  ASSERT_GT(plans, 0u);
  EXPECT_EQ(data.fetch.size(), fetches);
  EXPECT_EQ(data.select.size(), fetches + plans);
  std::size_t halts = 0;
  for (const auto& ex : data.select) {
    ASSERT_EQ(ex.candidates.size(), ex.ids.size());
    EXPECT_FALSE(ex.ids.back().has_value());
    halts += !ex.ids[ex.label].has_value();
  }
  EXPECT_EQ(halts, plans);
}

TEST_F(LearningFixture, ExactImitationRejectsCorruptPlan) {
  auto plans = *plans_;
  for (auto& p : plans) {
    if (p) {
      p->cost += 1;
      break;
    }
  }
  EXPECT_THROW(build_exact_imitation(*instances_, plans), ValidationError);
}

TEST_F(LearningFixture, TrainedPolicyRoundTrips) {
  auto data = build_exact_imitation(*instances_, *plans_);
  LearnedPolicy p = train(data, LearnerConfig{});
  std::stringstream buf;
  p.save(buf);
  LearnedPolicy q = LearnedPolicy::load(buf);
  EXPECT_EQ(q.metadata(), p.metadata());
  EXPECT_TRUE(q.select_model() == p.select_model());
  EXPECT_TRUE(q.fetch_model() == p.fetch_model());
  for (auto& inst : *instances_) {
    PlanTrace a = execute_policy(*inst.ctx, p);
    PlanTrace b = execute_policy(*inst.ctx, q);
    EXPECT_EQ(a.actions(), b.actions());
    EXPECT_EQ(a.cost, b.cost);
    for (const auto& act : a.actions()) EXPECT_EQ(act.delta % 10, 0);
  }
}

TEST_F(LearningFixture, PolicyLoadRejectsCorruption) {
  LearnedPolicy p = train(build_exact_imitation(*instances_, *plans_), LearnerConfig{});
  std::stringstream buf;
  p.save(buf);
  std::string bytes = buf.str();
  bytes[4] = static_cast<char>(bytes[4] + 1);  // format version
  std::istringstream in(bytes);
  EXPECT_THROW(LearnedPolicy::load(in), ParseError);
  std::istringstream junk("nope");
  EXPECT_THROW(LearnedPolicy::load(junk), ParseError);
}

TEST_F(LearningFixture, FetchOnlyNeverHalts) {
  LearnedPolicy p = train(build_exact_imitation(*instances_, *plans_), LearnerConfig{});
  FetchOnlyPolicy fo(p);
  for (auto& inst : *instances_) {
    PlanTrace t = execute_policy(*inst.ctx, fo);
    EXPECT_NE(t.termination, Termination::kHalt);
    EXPECT_TRUE(same_answers(t.answers, inst.ref.trace.answers));
  }
}

TEST(Dagger, MixtureSchedule) {
  EXPECT_DOUBLE_EQ(mixture_probability(0.8, 1), 0.8);
  EXPECT_NEAR(mixture_probability(0.8, 3), 0.512, 1e-12);
  EXPECT_DOUBLE_EQ(mixture_probability(0.0, 2), 0.0);
}

TEST_F(LearningFixture, DaggerGrowsDatasetDeterministically) {
  auto data = build_exact_imitation(*instances_, *plans_);
  DaggerConfig cfg;
  cfg.iterations = 2;
  auto a = dagger(*instances_, data, cfg);
  auto b = dagger(*instances_, data, cfg);
  ASSERT_EQ(a.policies.size(), 2u);
  EXPECT_EQ(a.select_examples.front(), data.select.size());
  EXPECT_GE(a.select_examples.back(), a.select_examples.front());
  EXPECT_EQ(a.select_examples, b.select_examples);
  std::stringstream pa, pb;
  a.policies.back().save(pa);
  b.policies.back().save(pb);
  EXPECT_EQ(pa.str(), pb.str());
}

TEST(SelectBest, TieBreaks) {
  EXPECT_EQ(select_best({{0.9, 2.0}, {0.95, 1.0}, {0.8, 9.0}}), 1u);
  EXPECT_EQ(select_best({{0.9, 2.0}, {0.9, 3.0}}), 1u);
  EXPECT_EQ(select_best({{0.9, 3.0}, {0.9, 3.0}}), 0u);
  EXPECT_EQ(select_best({{0.9, 2.0}, {0.9 + 1e-14, 1.0}}), 0u);
  EXPECT_THROW(select_best({}), ConfigError);
}

}  // namespace
}  // namespace l2p
