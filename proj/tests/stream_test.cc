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

#include "l2p/stream/match_scorer.h"
#include "l2p/stream/star_stream.h"
#include "oracles.h"

namespace l2p {
namespace {

// Drains `stream` in fetches of `delta`, checking order and admissibility of
// the bound against the brute-force remainder after every fetch.
void check_stream(const DataGraph& g, const GraphQuery& q, const StarQuery& star, double theta, int delta) {
  MatchScorer scorer(g, q, theta);
  StarStream stream(scorer, star);
  auto truth = testing::star_matches(g, q, star, theta);
  std::vector<double> emitted;
  double prev_bound = stream.upper_bound();
  if (!truth.empty()) {
    EXPECT_GE(prev_bound + 1e-9, truth.front().score);
  }
  while (!stream.exhausted()) {
    auto batch = stream.fetch(delta);
    if (!stream.exhausted()) {
      EXPECT_EQ(batch.size(), static_cast<std::size_t>(delta));
    }
    for (const auto& m : batch) {
      if (!emitted.empty()) {
        EXPECT_LE(m.score, emitted.back() + 1e-12);
      }
      EXPECT_NEAR(m.score, scorer.score(q, to_mapping(m, star, q.num_nodes())), 1e-9);
      emitted.push_back(m.score);
    }
    double bound = stream.upper_bound();
    EXPECT_LE(bound, prev_bound + 1e-12);
    prev_bound = bound;
    if (!stream.exhausted() && emitted.size() < truth.size()) {
      // Every unseen match scores at most the best remaining truth value.
      EXPECT_GE(bound + 1e-9, truth[emitted.size()].score);
    }
  }
  EXPECT_EQ(stream.upper_bound(), kNegInf);
  ASSERT_EQ(emitted.size(), truth.size());
  for (std::size_t i = 0; i < truth.size(); ++i) EXPECT_NEAR(emitted[i], truth[i].score, 1e-9);
}

TEST(StarStream, EmptyCandidates) {
  DataGraph g = testing::toy_graph();
  GraphQuery q;
  q.node_labels = {"Zebra", "Band"};
  q.edges = {{0, "memberOf", 1}};
  auto stars = decompose(q);
  MatchScorer scorer(g, q, 1.0);
  StarStream s(scorer, stars[0]);
  EXPECT_TRUE(s.exhausted());
  EXPECT_TRUE(s.fetch(10).empty());
  EXPECT_EQ(s.upper_bound(), kNegInf);
}

TEST(StarStream, SingleLeafHandEnumerated) {
  DataGraph g = DataGraph::build({"a", "b", "c"}, {{0, "r", 1}});
  GraphQuery q;
  q.node_labels = {"a", "b"};
  q.edges = {{0, "r", 1}};
  auto stars = decompose(q);
  MatchScorer scorer(g, q, 1.0);
  StarStream s(scorer, stars[0]);
  EXPECT_EQ(s.upper_bound(), 1.0 + kLeafOptimism);
  auto first = s.fetch(1);
  ASSERT_EQ(first.size(), 1u);
  EXPECT_EQ(first[0].binding, (std::vector<NodeId>{0, 1}));
  EXPECT_EQ(first[0].score, 3.0);
}

TEST(StarStream, SeedKey) {
  DataGraph g = testing::toy_graph();
  GraphQuery q;
  q.node_labels = {"Band", "Artist", "J.Lo"};
  q.edges = {{1, "memberOf", 0}, {2, "memberOf", 0}};
  auto stars = decompose(q);
  ASSERT_EQ(stars[0].pivot, 0u);
  MatchScorer scorer(g, q, 0.5);
  StarStream s(scorer, stars[0]);
  EXPECT_EQ(s.upper_bound(), scorer.candidates(0).front().score + 2 * kLeafOptimism);
}

TEST(StarStream, SplitFetchesAgree) {
  auto inst = testing::random_instance(21);
  auto stars = decompose(inst.query);
  MatchScorer scorer(inst.graph, inst.query, 0.5);
  for (const auto& star : stars) {
    StarStream a(scorer, star), b(scorer, star);
    auto x = a.fetch(5);
    auto y = a.fetch(5);
    x.insert(x.end(), y.begin(), y.end());
    auto z = b.fetch(10);
    ASSERT_EQ(x.size(), z.size());
    for (std::size_t i = 0; i < x.size(); ++i) EXPECT_EQ(x[i].binding, z[i].binding);
    EXPECT_EQ(a.cost(), b.cost());
  }
}

TEST(StarStream, DrainsToBruteForce) {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    auto inst = testing::random_instance(seed, 120, 5);
    for (const auto& star : decompose(inst.query)) check_stream(inst.graph, inst.query, star, 0.5, 1 + seed % 7);
  }
}

TEST(StreamLog, ReproducesPrivateStreams) {
  auto inst = testing::random_instance(33);
  auto stars = decompose(inst.query);
  MatchScorer scorer(inst.graph, inst.query, 0.5);
  StreamLog log(scorer, stars[0]);
  // Cursor at 3 advanced by 4 charges what fetch(4) after fetch(3) would.
  StarStream s(scorer, stars[0]);
  s.fetch(3);
  std::uint64_t before = s.cost();
  auto batch = s.fetch(4);
  StreamAdvance a3 = log.advance(0, false, 3);
  StreamAdvance adv = log.advance(a3.position, a3.exhausted, 4);
  EXPECT_EQ(adv.cost, s.cost() - before);
  EXPECT_EQ(adv.position, a3.position + batch.size());
  EXPECT_EQ(adv.exhausted, s.exhausted());
  EXPECT_EQ(log.upper_bound_at(adv.position, adv.exhausted), s.upper_bound());
}

}  // namespace
}  // namespace l2p
