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


#include "oracles.h"

#include <algorithm>
#include <functional>
#include <random>
#include <set>

namespace l2p::testing {

int edit_distance(const std::string& a, const std::string& b) {
  const std::size_t n = a.size(), m = b.size();
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (std::size_t i = 0; i <= n; ++i) d[i][0] = static_cast<int>(i);
  for (std::size_t j = 0; j <= m; ++j) d[0][j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= m; ++j) {
      int sub = d[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      d[i][j] = std::min({d[i - 1][j] + 1, d[i][j - 1] + 1, sub});
    }
  }
  return d[n][m];
}

double ref_similarity(const std::string& a, const std::string& b) {
  std::size_t len = std::max(a.size(), b.size());
  if (len == 0) return 1.0;
  return 1.0 - static_cast<double>(edit_distance(a, b)) / static_cast<double>(len);
}

namespace {

// Best similarity over data edges src -> dst, or -1 when there is none.
double ref_edge(const DataGraph& g, NodeId src, NodeId dst, const std::string& label) {
  double best = -1.0;
  for (LabelId l : g.edge_labels_between(src, dst)) best = std::max(best, ref_similarity(label, g.edge_labels().text(l)));
  return best;
}

bool adjacent(const DataGraph& g, NodeId a, NodeId b) {
  auto out = g.out_neighbors(a);
  auto in = g.in_neighbors(a);
  return std::binary_search(out.begin(), out.end(), b) || std::binary_search(in.begin(), in.end(), b);
}

// Enumerates injective assignments of `nodes` (query node ids) and hands every
// full assignment to `emit`. `edges` are the (src, label, dst) query edges that
// must be realized among assigned nodes.
void enumerate(const DataGraph& g, const std::vector<std::string>& labels, const std::vector<QueryEdge>& edges,
               const std::vector<QueryNodeId>& nodes, double theta, std::size_t num_query_nodes,
               const std::function<void(const std::vector<NodeId>&)>& emit) {
  std::vector<NodeId> phi(num_query_nodes, kNoNode);
  std::vector<bool> used(g.num_nodes(), false);
  std::function<void(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == nodes.size()) {
      emit(phi);
      return;
    }
    QueryNodeId u = nodes[depth];
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      if (used[v]) continue;
      if (ref_similarity(labels[u], g.node_label_text(v)) < theta) continue;
      bool ok = true;
      for (const auto& e : edges) {
        NodeId s = e.src == u ? v : phi[e.src];
        NodeId d = e.dst == u ? v : phi[e.dst];
        if ((e.src != u && e.dst != u) || s == kNoNode || d == kNoNode) continue;
        if (!adjacent(g, s, d) || ref_edge(g, s, d, e.label) < 0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      phi[u] = v;
      used[v] = true;
      rec(depth + 1);
      used[v] = false;
      phi[u] = kNoNode;
    }
  };
  rec(0);
}

std::vector<QueryNodeId> bfs_order(const GraphQuery& q, QueryNodeId start) {
  std::vector<QueryNodeId> order{start};
  std::vector<bool> seen(q.num_nodes(), false);
  seen[start] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (const auto& e : q.edges) {
      QueryNodeId other = kNoNode;
      if (e.src == order[i]) other = e.dst;
      if (e.dst == order[i]) other = e.src;
      if (other != kNoNode && !seen[other]) {
        seen[other] = true;
        order.push_back(other);
      }
    }
  }
  return order;
}

}  // namespace

std::vector<RefMatch> all_matches(const DataGraph& g, const GraphQuery& q, double theta) {
  std::vector<RefMatch> out;
  enumerate(g, q.node_labels, q.edges, bfs_order(q, 0), theta, q.num_nodes(), [&](const std::vector<NodeId>& phi) {
    double s = 0.0;
    for (QueryNodeId u = 0; u < q.num_nodes(); ++u) s += ref_similarity(q.node_labels[u], g.node_label_text(phi[u]));
    for (const auto& e : q.edges) s += ref_edge(g, phi[e.src], phi[e.dst], e.label);
    out.push_back({phi, s});
  });
  std::sort(out.begin(), out.end(), [](const RefMatch& a, const RefMatch& b) { return a.score > b.score; });
  return out;
}

std::vector<double> brute_topk_scores(const DataGraph& g, const GraphQuery& q, double theta, int k) {
  std::vector<double> out;
  for (const auto& m : all_matches(g, q, theta)) {
    if (out.size() == static_cast<std::size_t>(k)) break;
    out.push_back(m.score);
  }
  return out;
}

std::vector<RefMatch> star_matches(const DataGraph& g, const GraphQuery& q, const StarQuery& star, double theta) {
  std::vector<QueryEdge> edges;
  std::vector<QueryNodeId> nodes{star.pivot};
  for (const auto& leaf : star.leaves) {
    edges.push_back(q.edges[leaf.edge]);
    nodes.push_back(leaf.node);
  }
  std::vector<RefMatch> out;
  enumerate(g, q.node_labels, edges, nodes, theta, q.num_nodes(), [&](const std::vector<NodeId>& phi) {
    RefMatch m{{}, 0.0};
    for (QueryNodeId u : nodes) {
      m.mapping.push_back(phi[u]);
      m.score += ref_similarity(q.node_labels[u], g.node_label_text(phi[u]));
    }
    for (const auto& e : edges) m.score += ref_edge(g, phi[e.src], phi[e.dst], e.label);
    out.push_back(std::move(m));
  });
  std::sort(out.begin(), out.end(), [](const RefMatch& a, const RefMatch& b) { return a.score > b.score; });
  return out;
}

namespace {

const std::vector<std::string> kNodeVocab = {"Band",   "Bands",  "Brand",  "Bond",   "Artist", "Artists", "Artisan",
                                             "Singer", "Singers", "Single", "Album",  "Albums", "Label",   "Lapel",
                                             "City",   "Cite",   "Actor",  "Factor", "Movie",  "Movies"};
const std::vector<std::string> kEdgeVocab = {"memberOf", "member", "bornIn", "born", "recorded", "records", "actedIn"};

std::string perturb(std::string s, std::mt19937_64& rng) {
  const std::string alphabet = "abcdefghijklmnopqrstuvwxyz";
  std::uniform_int_distribution<std::size_t> pos(0, s.size() - 1);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::size_t p = pos(rng);
  char c = alphabet[ch(rng)];
  if (c == s[p]) c = c == 'z' ? 'a' : static_cast<char>(c + 1);
  s[p] = c;
  return s;
}

}  // namespace

Instance random_instance(std::uint64_t seed, std::size_t max_nodes, std::size_t max_query_nodes) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> nd(20, max_nodes);
  const std::size_t n = nd(rng);
  std::vector<std::string> labels(n);
  std::uniform_int_distribution<std::size_t> lv(0, kNodeVocab.size() - 1);
  std::uniform_int_distribution<std::size_t> ev(0, kEdgeVocab.size() - 1);
  for (auto& l : labels) l = kNodeVocab[lv(rng)];
  std::vector<EdgeTriple> edges;
  std::uniform_int_distribution<NodeId> pick(0, static_cast<NodeId>(n - 1));
  for (NodeId v = 1; v < n; ++v) {
    NodeId u = std::uniform_int_distribution<NodeId>(0, v - 1)(rng);
    if (rng() & 1) edges.push_back({u, kEdgeVocab[ev(rng)], v});
    else edges.push_back({v, kEdgeVocab[ev(rng)], u});
  }
  const std::size_t extra = n;
  for (std::size_t i = 0; i < extra; ++i) {
    NodeId a = pick(rng), b = pick(rng);
    if (a != b) edges.push_back({a, kEdgeVocab[ev(rng)], b});
  }
  DataGraph g = DataGraph::build(labels, edges);

  // Mine a connected embedding by a random walk over the undirected view.
  std::uniform_int_distribution<std::size_t> qn(2, max_query_nodes);
  const std::size_t want = qn(rng);
  std::vector<NodeId> picked{pick(rng)};
  for (int attempts = 0; picked.size() < want && attempts < 200; ++attempts) {
    NodeId from = picked[std::uniform_int_distribution<std::size_t>(0, picked.size() - 1)(rng)];
    std::vector<NodeId> nbrs;
    for (NodeId w : g.out_neighbors(from)) nbrs.push_back(w);
    for (NodeId w : g.in_neighbors(from)) nbrs.push_back(w);
    if (nbrs.empty()) break;
    NodeId w = nbrs[std::uniform_int_distribution<std::size_t>(0, nbrs.size() - 1)(rng)];
    if (std::find(picked.begin(), picked.end(), w) == picked.end()) picked.push_back(w);
  }
  if (picked.size() < 2) {
    NodeId a = picked[0];
    NodeId b = !g.out_neighbors(a).empty() ? g.out_neighbors(a)[0] : g.in_neighbors(a)[0];
    picked.push_back(b);
  }
  GraphQuery q;
  q.id = "inst" + std::to_string(seed);
  for (NodeId v : picked) {
    std::string l = g.node_label_text(v);
    q.node_labels.push_back(rng() % 4 == 0 ? perturb(l, rng) : l);
  }
  std::set<std::pair<QueryNodeId, QueryNodeId>> pairs;
  // Keep a spanning tree in walk order, then any further induced edges with some probability.
  std::vector<std::pair<QueryNodeId, QueryNodeId>> tree, rest;
  for (QueryNodeId i = 0; i < picked.size(); ++i) {
    for (QueryNodeId j = 0; j < picked.size(); ++j) {
      if (i == j) continue;
      auto labs = g.edge_labels_between(picked[i], picked[j]);
      if (labs.empty()) continue;
      auto key = std::minmax(i, j);
      if (pairs.count(key)) continue;
      pairs.insert(key);
      std::string l = g.edge_labels().text(labs[0]);
      q.edges.push_back({i, rng() % 5 == 0 ? perturb(l, rng) : l, j});
    }
  }
  // Drop non-tree edges at random while the query stays connected.
  for (std::size_t e = q.edges.size(); e-- > 0;) {
    if (rng() % 2 == 0) continue;
    GraphQuery trial = q;
    trial.edges.erase(trial.edges.begin() + static_cast<std::ptrdiff_t>(e));
    try {
      trial.validate();
      q = std::move(trial);
    } catch (...) {
    }
  }
  const int ks[] = {1, 3, 5};
  return {std::move(g), std::move(q), ks[rng() % 3]};
}

DataGraph toy_graph() {
  std::vector<std::string> labels = {"Artist", "Band", "J.Lo",   "Artist", "Band",
                                     "Singer", "Brand", "Jennifer Lopez", "Bands", "Artisan"};
  std::vector<EdgeTriple> edges = {{0, "memberOf", 1}, {3, "memberOf", 4}, {2, "memberOf", 1}, {7, "memberOf", 4},
                                   {5, "memberOf", 8}, {9, "member", 6},   {2, "knows", 0},    {7, "knows", 3},
                                   {5, "knows", 9},    {0, "memberOf", 8}, {2, "knows", 3}};
  return DataGraph::build(labels, edges);
}

}  // namespace l2p::testing
