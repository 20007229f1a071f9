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

#include <algorithm>
#include <filesystem>
#include <random>
#include <set>

#include "l2p/common/errors.h"
#include "l2p/workload/workload.h"

namespace l2p {
namespace {

TEST(Zipf, ProbabilitiesFollowPowerLaw) {
  ZipfSampler z(50, 1.1);
  double total = 0.0;
  for (std::size_t r = 0; r < z.size(); ++r) total += z.probability(r);
  EXPECT_NEAR(total, 1.0, 1e-12);
  EXPECT_NEAR(z.probability(0) / z.probability(9), std::pow(10.0, 1.1), 1e-9);
  EXPECT_EQ(z.sample(0.0), 0u);
  EXPECT_EQ(z.sample(0.999999999), z.size() - 1);
}

TEST(Zipf, SamplesPassChiSquare) {
  const std::size_t n = 20, draws = 100000;
  ZipfSampler z(n, 1.1);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> hits(n, 0.0);
  for (std::size_t i = 0; i < draws; ++i) hits[z.sample(u(rng))] += 1.0;
  double chi2 = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    double want = z.probability(r) * static_cast<double>(draws);
    chi2 += (hits[r] - want) * (hits[r] - want) / want;
  }
  EXPECT_LT(chi2, 43.82);  // 19 degrees of freedom, p = 0.001
}

TEST(Zipf, RejectsEmptySupport) { EXPECT_THROW(ZipfSampler(0, 1.0), ConfigError); }

TEST(Vocabulary, DistinctAndDeterministic) {
  auto v = make_vocabulary(200, 9);
  EXPECT_EQ(v.size(), 200u);
  EXPECT_EQ(std::set<std::string>(v.begin(), v.end()).size(), v.size());
  EXPECT_EQ(make_vocabulary(200, 9), v);
}

TEST(GenerateGraph, SizesAndDeterminism) {
  GraphGenConfig cfg;
  cfg.nodes = 500;
  cfg.edges = 1500;
  cfg.seed = 4;
  DataGraph a = generate_graph(cfg);
  EXPECT_EQ(a.num_nodes(), 500u);
  EXPECT_EQ(a.num_edges(), 1500u);
  EXPECT_TRUE(a == generate_graph(cfg));
  cfg.seed = 5;
  EXPECT_FALSE(a == generate_graph(cfg));
}

TEST(GenerateGraph, RejectsImpossibleConfigs) {
  GraphGenConfig cfg;
  cfg.nodes = 10;
  cfg.edges = 5;
  EXPECT_THROW(generate_graph(cfg), ConfigError);
  cfg.edges = 10 * 9 * 20 + 1;
  EXPECT_THROW(generate_graph(cfg), ConfigError);
}

TEST(FrequentLabels, TopFifthByCount) {
  // a:4 b:3 c:2 d:1 e:1
  std::vector<std::string> labels{"a", "a", "a", "a", "b", "b", "b", "c", "c", "d", "e"};
  DataGraph g = DataGraph::build(labels, {});
  EXPECT_EQ(frequent_labels(g, 0.2), (std::vector<std::string>{"a"}));
  EXPECT_EQ(frequent_labels(g, 0.4), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(frequent_labels(g, 1.0).size(), 5u);
}

class WorkloadFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    GraphGenConfig cfg;
    cfg.seed = 3;
    graph_ = new DataGraph(generate_graph(cfg));
  }
  static void TearDownTestSuite() {
    delete graph_;
    graph_ = nullptr;
  }
  static DataGraph* graph_;
};
DataGraph* WorkloadFixture::graph_ = nullptr;

TEST_F(WorkloadFixture, TemplatesAreMinedFromFrequentLabels) {
  auto frequent = frequent_labels(*graph_);
  std::set<std::string> allowed(frequent.begin(), frequent.end());
  auto ts = generate_templates(*graph_, 20, 8);
  ASSERT_EQ(ts.size(), 20u);
  for (const auto& t : ts) {
    const auto& q = t.pattern;
    EXPECT_GE(q.num_nodes(), 2u);
    EXPECT_LE(q.num_nodes(), 6u);
    ASSERT_EQ(t.embedding.size(), q.num_nodes());
    EXPECT_EQ(std::set<NodeId>(t.embedding.begin(), t.embedding.end()).size(), t.embedding.size());
    for (std::size_t i = 0; i < q.num_nodes(); ++i) {
      EXPECT_TRUE(allowed.count(q.node_labels[i])) << q.node_labels[i];
      EXPECT_EQ(graph_->node_label_text(t.embedding[i]), q.node_labels[i]);
    }
    // Every template edge is realized by its embedding.
    for (const auto& e : q.edges) {
      auto labs = graph_->edge_labels_between(t.embedding[e.src], t.embedding[e.dst]);
      bool hit = false;
      for (auto l : labs) hit = hit || graph_->edge_labels().text(l) == e.label;
      EXPECT_TRUE(hit) << t.pattern.id;
    }
  }
  EXPECT_EQ(generate_templates(*graph_, 20, 8)[7].pattern.edges.size(), ts[7].pattern.edges.size());
}

TEST_F(WorkloadFixture, SplitSizesAndIds) {
  auto ts = generate_templates(*graph_, 20, 8);
  auto split = instantiate(ts, 100, 0.3, 2);
  EXPECT_EQ(split.size(), 2000u);
  EXPECT_EQ(split.train.size(), 1000u);
  EXPECT_EQ(split.validation.size(), 400u);
  EXPECT_EQ(split.test.size(), 600u);
  std::set<std::string> ids;
  for (const auto* part : {&split.train, &split.validation, &split.test}) {
    for (const auto& q : *part) ids.insert(q.id);
  }
  EXPECT_EQ(ids.size(), 2000u);
  auto again = instantiate(ts, 100, 0.3, 2);
  ASSERT_EQ(again.test.size(), split.test.size());
  for (std::size_t i = 0; i < split.test.size(); ++i) {
    EXPECT_EQ(again.test[i].id, split.test[i].id);
    EXPECT_EQ(again.test[i].node_labels, split.test[i].node_labels);
  }
}

TEST_F(WorkloadFixture, PerturbationRate) {
  auto ts = generate_templates(*graph_, 10, 8);
  auto clean = instantiate(ts, 20, 0.0, 2);
  for (const auto& q : clean.train) {
    const auto& t = ts[std::stoul(q.id.substr(1, q.id.find('-') - 1))].pattern;
    EXPECT_EQ(q.node_labels, t.node_labels);
  }
  auto noisy = instantiate(ts, 20, 1.0, 2);
  for (const auto& q : noisy.train) {
    const auto& t = ts[std::stoul(q.id.substr(1, q.id.find('-') - 1))].pattern;
    for (std::size_t i = 0; i < q.num_nodes(); ++i) EXPECT_NE(q.node_labels[i], t.node_labels[i]);
  }
}

TEST_F(WorkloadFixture, ForestFireHitsTargetSize) {
  for (double f : {0.25, 0.5, 0.75}) {
    DataGraph s = forest_fire_sample(*graph_, f, 6);
    double want = f * static_cast<double>(graph_->num_nodes());
    EXPECT_NEAR(static_cast<double>(s.num_nodes()), want, 0.02 * want);
    EXPECT_LE(s.num_edges(), graph_->num_edges());
    EXPECT_GT(s.num_edges(), 0u);
    EXPECT_TRUE(s == forest_fire_sample(*graph_, f, 6));
  }
  EXPECT_THROW(forest_fire_sample(*graph_, 0.0, 1), ConfigError);
  EXPECT_THROW(forest_fire_sample(*graph_, 0.5, 1, 1.0), ConfigError);
}

TEST(ForestFire, KeepsInducedEdges) {
  // A path with distinct labels lets us recover the node mapping.
  std::vector<std::string> labels;
  std::vector<EdgeTriple> edges;
  for (NodeId v = 0; v < 40; ++v) {
    labels.push_back("n" + std::to_string(v));
    if (v > 0) edges.push_back({v - 1, "next", v});
  }
  DataGraph g = DataGraph::build(labels, edges);
  DataGraph s = forest_fire_sample(g, 0.5, 2);
  std::set<std::string> kept;
  for (NodeId v = 0; v < s.num_nodes(); ++v) kept.insert(s.node_label_text(v));
  std::size_t induced = 0;
  for (NodeId v = 1; v < 40; ++v) induced += kept.count("n" + std::to_string(v - 1)) && kept.count("n" + std::to_string(v));
  EXPECT_EQ(s.num_edges(), induced);
}

TEST_F(WorkloadFixture, SaveLoadRoundTrip) {
  auto ts = generate_templates(*graph_, 4, 8);
  auto split = instantiate(ts, 5, 0.3, 2);
  auto dir = std::filesystem::temp_directory_path() / "l2p_workload_test";
  std::filesystem::remove_all(dir);
  save_workload(split, dir, 2);
  auto back = load_workload(dir);
  ASSERT_EQ(back.train.size(), split.train.size());
  ASSERT_EQ(back.test.size(), split.test.size());
  for (std::size_t i = 0; i < split.train.size(); ++i) {
    EXPECT_EQ(back.train[i].id, split.train[i].id);
    EXPECT_EQ(back.train[i].node_labels, split.train[i].node_labels);
  }
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace l2p
