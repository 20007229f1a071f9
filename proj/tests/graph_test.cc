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

#include <filesystem>
#include <random>
#include <sstream>

#include "l2p/common/errors.h"
#include "l2p/graph/data_graph.h"
#include "l2p/graph/graph_io.h"
#include "l2p/graph/label_similarity.h"
#include "oracles.h"

namespace l2p {
namespace {

TEST(LabelSimilarity, Basics) {
  EXPECT_EQ(label_similarity("Band", "Band"), 1.0);
  EXPECT_EQ(label_similarity("abc", ""), 0.0);
  EXPECT_EQ(label_similarity("", ""), 1.0);
  EXPECT_DOUBLE_EQ(label_similarity("J.Lo", "Jennifer Lopez"), testing::ref_similarity("J.Lo", "Jennifer Lopez"));
}

TEST(LabelSimilarity, CountsCodePoints) {
  // Two code points, one substitution.
  EXPECT_DOUBLE_EQ(label_similarity("\xc3\xa9t", "et"), 0.5);
}

TEST(LabelSimilarity, RandomizedAgainstTable) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> len(0, 12), ch('a', 'e');
  for (int i = 0; i < 2000; ++i) {
    std::string a, b;
    for (int n = len(rng); n > 0; --n) a += static_cast<char>(ch(rng));
    for (int n = len(rng); n > 0; --n) b += static_cast<char>(ch(rng));
    double s = label_similarity(a, b);
    EXPECT_DOUBLE_EQ(s, testing::ref_similarity(a, b));
    EXPECT_EQ(s, label_similarity(b, a));
    EXPECT_EQ(label_similarity(a, a), 1.0);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(Loader, SingleNode) {
  std::istringstream nodes("0\tBand\n"), edges("");
  DataGraph g = load_graph(nodes, edges);
  EXPECT_EQ(g.num_nodes(), 1u);
  EXPECT_EQ(g.num_edges(), 0u);
}

TEST(Loader, PathDegrees) {
  std::istringstream nodes("0\ta\n1\tb\n2\tc\n"), edges("0\tr\t1\n1\tr\t2\n");
  DataGraph g = load_graph(nodes, edges);
  EXPECT_EQ(g.in_neighbors(1).size(), 1u);
  EXPECT_EQ(g.out_neighbors(1).size(), 1u);
}

TEST(Loader, DeduplicatesTriples) {
  std::istringstream nodes("0\ta\n1\tb\n2\tc\n");
  std::istringstream edges("0\tr\t1\n0\tr\t1\n0\ts\t1\n1\tr\t2\n1\tr\t2\n");
  DataGraph g = load_graph(nodes, edges);
  // Unique triples: (0,r,1) (0,s,1) (1,r,2).
  EXPECT_EQ(g.num_edges(), 3u);
  EXPECT_EQ(g.out_neighbors(0).size(), 1u);
  EXPECT_EQ(g.edge_labels_between(0, 1).size(), 2u);
}

TEST(Loader, Errors) {
  {
    std::istringstream nodes("0\ta\nbogus\n"), edges("");
    try {
      load_graph(nodes, edges);
      FAIL();
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u);
    }
  }
  {
    std::istringstream nodes("0\ta\n1\tb\n"), edges("0\tr\t1\n0\tr\n");
    try {
      load_graph(nodes, edges);
      FAIL();
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u);
    }
  }
  {
    std::istringstream nodes("0\ta\n1\tb\n"), edges("0\tr\t9\n");
    EXPECT_THROW(load_graph(nodes, edges), IntegrityError);
  }
  {
    std::istringstream nodes("0\ta\n2\tb\n"), edges("");
    EXPECT_THROW(load_graph(nodes, edges), ParseError);
  }
}

TEST(DataGraph, Invariants) {
  auto inst = testing::random_instance(3);
  const DataGraph& g = inst.graph;
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    auto out = g.out_neighbors(v);
    EXPECT_TRUE(std::is_sorted(out.begin(), out.end()));
    EXPECT_EQ(std::adjacent_find(out.begin(), out.end()), out.end());
    for (NodeId w : out) EXPECT_FALSE(g.edge_labels_between(v, w).empty());
  }
  for (LabelId l = 0; l < g.node_labels().size(); ++l) {
    for (NodeId v : g.nodes_with_label(l)) EXPECT_EQ(g.node_label(v), l);
  }
  std::size_t total = 0;
  for (LabelId l = 0; l < g.node_labels().size(); ++l) total += g.nodes_with_label(l).size();
  EXPECT_EQ(total, g.num_nodes());
}

TEST(DataGraph, DanglingEndpoint) {
  EXPECT_THROW(DataGraph::build({"a"}, {{0, "r", 1}}), IntegrityError);
}

TEST(Candidates, ExactAndAll) {
  DataGraph g = testing::toy_graph();
  auto exact = candidates(g, "Band", 1.0);
  auto idx = g.nodes_with_label("Band");
  ASSERT_EQ(exact.size(), idx.size());
  for (std::size_t i = 0; i < exact.size(); ++i) {
    EXPECT_EQ(exact[i].node, idx[i]);
    EXPECT_EQ(exact[i].score, 1.0);
  }
  EXPECT_EQ(candidates(g, "Band", 0.0).size(), g.num_nodes());
}

TEST(Candidates, MatchesLinearScan) {
  DataGraph g = testing::toy_graph();
  for (const char* label : {"Band", "Artist", "J.Lo", "Singers", "x"}) {
    auto got = candidates(g, label, 0.5);
    std::vector<std::pair<double, NodeId>> want;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      double s = testing::ref_similarity(label, g.node_label_text(v));
      if (s >= 0.5) want.push_back({-s, v});
    }
    std::sort(want.begin(), want.end());
    ASSERT_EQ(got.size(), want.size()) << label;
    for (std::size_t i = 0; i < got.size(); ++i) {
      EXPECT_EQ(got[i].node, want[i].second);
      EXPECT_DOUBLE_EQ(got[i].score, -want[i].first);
    }
  }
}

TEST(Snapshot, RoundTrip) {
  auto inst = testing::random_instance(9);
  std::stringstream buf;
  save_snapshot(inst.graph, buf);
  DataGraph back = load_snapshot(buf);
  EXPECT_TRUE(back == inst.graph);
}

TEST(Snapshot, TsvRoundTrip) {
  auto inst = testing::random_instance(10);
  std::stringstream nodes, edges;
  write_graph_tsv(inst.graph, nodes, edges);
  DataGraph back = load_graph(nodes, edges);
  EXPECT_TRUE(back == inst.graph);
}

TEST(Snapshot, RejectsGarbage) {
  std::stringstream buf("not a graph");
  EXPECT_THROW(load_snapshot(buf), ParseError);
}

TEST(Snapshot, Files) {
  auto dir = std::filesystem::temp_directory_path() / "l2p_graph_test";
  std::filesystem::create_directories(dir);
  DataGraph g = testing::toy_graph();
  write_graph_tsv(g, dir / "nodes.tsv", dir / "edges.tsv");
  save_snapshot(g, dir / "g.bin");
  EXPECT_TRUE(load_any_graph(dir) == g);
  EXPECT_TRUE(load_any_graph(dir / "g.bin") == g);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace l2p
