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


#include "l2p/workload/workload.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "l2p/common/errors.h"
#include "l2p/common/hash.h"
#include "l2p/query/query_io.h"

namespace l2p {

ZipfSampler::ZipfSampler(std::size_t n, double exponent) {
  if (n == 0) throw ConfigError("Zipf support must be non-empty");
  cdf_.resize(n);
  double total = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    cdf_[r] = total;
  }
  for (auto& c : cdf_) c /= total;
  cdf_.back() = 1.0;
}

double ZipfSampler::probability(std::size_t rank) const { return rank == 0 ? cdf_[0] : cdf_[rank] - cdf_[rank - 1]; }

std::size_t ZipfSampler::sample(double u) const {
  auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

namespace {

std::size_t below(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

char other_letter(std::mt19937_64& rng, char c) {
  char x = static_cast<char>('a' + below(rng, 25));
  return x >= c ? static_cast<char>(x + 1) : x;
}

std::string one_edit(std::string s, std::mt19937_64& rng) {
  std::size_t p = below(rng, s.size());
  char c = s[p];
  char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lower < 'a' || lower > 'z') lower = 'a';
  char r = other_letter(rng, lower);
  if (r > 'z') r = 'a';
  if (r == c) r = c == 'a' ? 'b' : 'a';
  s[p] = r;
  return s;
}

}  // namespace

std::vector<std::string> make_vocabulary(std::size_t size, std::uint64_t seed) {
  static const char* kOnsets[] = {"b", "c", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "st", "tr"};
  static const char* kVowels[] = {"a", "e", "i", "o", "u", "ai", "ou"};
  std::mt19937_64 rng(seed);
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  while (out.size() < size) {
    std::string stem;
    const std::size_t syllables = 2 + below(rng, 3);
    for (std::size_t i = 0; i < syllables; ++i) {
      stem += kOnsets[below(rng, std::size(kOnsets))];
      stem += kVowels[below(rng, std::size(kVowels))];
    }
    stem[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(stem[0])));
    std::vector<std::string> family{stem};
    const std::size_t variants = 1 + below(rng, 3);
    for (std::size_t v = 0; v < variants; ++v) {
      std::string w = stem;
      switch (below(rng, 3)) {
        case 0:
          w = one_edit(w, rng);
          break;
        case 1:
          w += kVowels[below(rng, 5)];
          break;
        default:
          w.insert(w.begin() + static_cast<std::ptrdiff_t>(1 + below(rng, w.size() - 1)),
                   static_cast<char>('a' + below(rng, 26)));
          break;
      }
      family.push_back(w);
    }
    for (auto& w : family) {
      if (out.size() < size && seen.insert(w).second) out.push_back(w);
    }
  }
  return out;
}

DataGraph generate_graph(const GraphGenConfig& cfg) {
  if (cfg.nodes == 0) throw ConfigError("graph needs at least one node");
  if (cfg.edges < cfg.nodes - 1) throw ConfigError("need at least nodes-1 edges for a connected graph");
  const double max_pairs = static_cast<double>(cfg.nodes) * static_cast<double>(cfg.nodes - 1);
  if (static_cast<double>(cfg.edges) > max_pairs * static_cast<double>(cfg.edge_vocab))
    throw ConfigError("more edges requested than distinct triples exist");
  if (cfg.node_vocab == 0 || cfg.edge_vocab == 0) throw ConfigError("vocabularies must be non-empty");

  std::mt19937_64 rng(cfg.seed);
  const auto node_words = make_vocabulary(cfg.node_vocab, hash_combine(cfg.seed, 1));
  auto edge_words = make_vocabulary(cfg.edge_vocab, hash_combine(cfg.seed, 2));
  for (auto& w : edge_words) w[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(w[0])));
  ZipfSampler node_zipf(node_words.size(), cfg.exponent), edge_zipf(edge_words.size(), cfg.exponent);

  std::vector<std::string> labels(cfg.nodes);
  for (auto& l : labels) l = node_words[node_zipf.sample(unit_interval(rng()))];

  std::vector<EdgeTriple> edges;
  std::set<std::tuple<NodeId, NodeId, std::size_t>> seen;
  auto add = [&](NodeId a, NodeId b) {
    std::size_t l = edge_zipf.sample(unit_interval(rng()));
    if (a == b || !seen.insert({a, b, l}).second) return false;
    edges.push_back({a, edge_words[l], b});
    return true;
  };
  for (NodeId v = 1; v < cfg.nodes; ++v) {
    auto u = static_cast<NodeId>(below(rng, v));
    while (!((rng() & 1) ? add(u, v) : add(v, u))) {
    }
  }
  while (edges.size() < cfg.edges) {
    auto a = static_cast<NodeId>(below(rng, cfg.nodes));
    auto b = static_cast<NodeId>(below(rng, cfg.nodes));
    add(a, b);
  }
  return DataGraph::build(labels, edges);
}

std::string shape_name(Shape s) {
  switch (s) {
    case Shape::kPath:
      return "path";
    case Shape::kStar:
      return "star";
    case Shape::kCycle:
      return "cycle";
    case Shape::kTree:
      return "tree";
    case Shape::kFlower:
      return "flower";
  }
  return "?";
}

std::vector<std::string> frequent_labels(const DataGraph& g, double fraction) {
  std::vector<std::pair<std::size_t, std::string>> counts;
  for (LabelId l = 0; l < g.node_labels().size(); ++l) {
    std::size_t c = g.nodes_with_label(l).size();
    if (c > 0) counts.push_back({c, g.node_labels().text(l)});
  }
  std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::size_t keep = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(fraction * counts.size())));
  keep = std::min(keep, counts.size());
  std::vector<std::string> out;
  for (std::size_t i = 0; i < keep; ++i) out.push_back(counts[i].second);
  return out;
}

namespace {

using Pattern = std::vector<std::pair<std::size_t, std::size_t>>;

Pattern make_pattern(Shape shape, std::size_t m, std::mt19937_64& rng) {
  Pattern p;
  switch (shape) {
    case Shape::kPath:
      for (std::size_t i = 0; i + 1 < m; ++i) p.push_back({i, i + 1});
      break;
    case Shape::kStar:
      for (std::size_t i = 1; i < m; ++i) p.push_back({0, i});
      break;
    case Shape::kCycle:
      for (std::size_t i = 0; i < m; ++i) p.push_back({i, (i + 1) % m});
      break;
    case Shape::kTree:
      for (std::size_t i = 1; i < m; ++i) p.push_back({below(rng, i), i});
      break;
    case Shape::kFlower:
      p = {{0, 1}, {1, 2}, {2, 0}};
      for (std::size_t i = 3; i < m; ++i) p.push_back({0, i});
      break;
  }
  return p;
}

std::vector<NodeId> undirected(const DataGraph& g, NodeId v) {
  std::vector<NodeId> n(g.out_neighbors(v).begin(), g.out_neighbors(v).end());
  n.insert(n.end(), g.in_neighbors(v).begin(), g.in_neighbors(v).end());
  std::sort(n.begin(), n.end());
  n.erase(std::unique(n.begin(), n.end()), n.end());
  return n;
}

// Backtracking search for an embedding of the pattern among allowed nodes,
// pattern node 0 fixed to `root`. Bounded by `budget` extension steps.
bool embed(const DataGraph& g, const Pattern& p, std::size_t m, NodeId root, const std::vector<bool>& allowed,
           std::mt19937_64& rng, std::vector<NodeId>& phi) {
  std::vector<std::vector<std::size_t>> adj(m);
  for (auto [a, b] : p) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  // Visit order: BFS from node 0 so each node has an earlier anchor.
  std::vector<std::size_t> order{0};
  std::vector<bool> in(m, false);
  in[0] = true;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (std::size_t b : adj[order[i]]) {
      if (!in[b]) {
        in[b] = true;
        order.push_back(b);
      }
    }
  }
  phi.assign(m, kNoNode);
  phi[0] = root;
  std::size_t budget = 5000;
  std::function<bool(std::size_t)> rec = [&](std::size_t depth) {
    if (depth == order.size()) return true;
    if (budget == 0) return false;
    --budget;
    std::size_t u = order[depth];
    std::size_t anchor = kNoNode;
    for (std::size_t b : adj[u]) {
      if (phi[b] != kNoNode) {
        anchor = b;
        break;
      }
    }
    auto cands = undirected(g, phi[anchor]);
    for (std::size_t i = cands.size(); i > 1; --i) std::swap(cands[i - 1], cands[below(rng, i)]);
    for (NodeId v : cands) {
      if (!allowed[v] || std::find(phi.begin(), phi.end(), v) != phi.end()) continue;
      bool ok = true;
      for (std::size_t b : adj[u]) {
        if (phi[b] == kNoNode) continue;
        auto nb = undirected(g, phi[b]);
        if (!std::binary_search(nb.begin(), nb.end(), v)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      phi[u] = v;
      if (rec(depth + 1)) return true;
      phi[u] = kNoNode;
    }
    return false;
  };
  return rec(1);
}

GraphQuery to_query(const DataGraph& g, const Pattern& p, const std::vector<NodeId>& phi, std::mt19937_64& rng) {
  GraphQuery q;
  for (NodeId v : phi) q.node_labels.push_back(g.node_label_text(v));
  for (auto [a, b] : p) {
    auto fwd = g.edge_labels_between(phi[a], phi[b]);
    auto bwd = g.edge_labels_between(phi[b], phi[a]);
    bool forward = !fwd.empty() && (bwd.empty() || (rng() & 1));
    auto labs = forward ? fwd : bwd;
    std::string label = g.edge_labels().text(labs[below(rng, labs.size())]);
    auto s = static_cast<QueryNodeId>(forward ? a : b);
    auto d = static_cast<QueryNodeId>(forward ? b : a);
    q.edges.push_back({s, label, d});
  }
  return q;
}

}  // namespace

std::vector<TemplateSpec> generate_templates(const DataGraph& g, std::size_t count, std::uint64_t seed,
                                             std::size_t max_nodes) {
  if (count < 1) throw ConfigError("template count must be at least 1");
  if (max_nodes < 3) throw ConfigError("templates need room for at least 3 nodes");
  auto frequent = frequent_labels(g);
  std::vector<bool> allowed(g.num_nodes(), false);
  std::vector<NodeId> pool;
  for (const auto& l : frequent) {
    for (NodeId v : g.nodes_with_label(l)) {
      allowed[v] = true;
      pool.push_back(v);
    }
  }
  std::sort(pool.begin(), pool.end());
  if (pool.size() < 3) throw ConfigError("vocabulary too small: fewer than 3 nodes carry frequent labels");

  const Shape shapes[] = {Shape::kPath, Shape::kStar, Shape::kCycle, Shape::kTree, Shape::kFlower};
  std::mt19937_64 rng(seed);
  std::vector<TemplateSpec> out;
  for (std::size_t t = 0; t < count; ++t) {
    Shape shape = shapes[t % 5];
    std::size_t lo = shape == Shape::kFlower ? 4 : 3;
    std::size_t hi = shape == Shape::kCycle ? std::min<std::size_t>(5, max_nodes) : max_nodes;
    std::size_t m = lo + below(rng, hi - lo + 1);
    bool done = false;
    // Fall back to smaller trees when the shape has no embedding.
    for (int round = 0; round < 4 && !done; ++round) {
      Pattern p = make_pattern(shape, m, rng);
      for (int attempt = 0; attempt < 60 && !done; ++attempt) {
        NodeId root = pool[below(rng, pool.size())];
        std::vector<NodeId> phi;
        if (!embed(g, p, m, root, allowed, rng, phi)) continue;
        TemplateSpec spec;
        spec.id = t;
        spec.shape = shape;
        spec.pattern = to_query(g, p, phi, rng);
        spec.pattern.id = "t" + std::to_string(t);
        spec.embedding = phi;
        spec.pattern.validate();
        out.push_back(std::move(spec));
        done = true;
      }
      shape = Shape::kTree;
      m = std::max<std::size_t>(2, m - 1);
    }
    if (!done) throw ConfigError("could not mine an embedding for template " + std::to_string(t));
  }
  return out;
}

WorkloadSplit instantiate(const std::vector<TemplateSpec>& templates, std::size_t per_template, double perturbation,
                          std::uint64_t seed, SplitFractions fractions) {
  if (per_template < 1) throw ConfigError("per_template must be at least 1");
  if (fractions.train < 0 || fractions.validation < 0 || fractions.train + fractions.validation > 1.0)
    throw ConfigError("split fractions must be non-negative and sum to at most 1");
  std::mt19937_64 rng(seed);
  std::vector<GraphQuery> all;
  for (const auto& t : templates) {
    for (std::size_t j = 0; j < per_template; ++j) {
      GraphQuery q = t.pattern;
      q.id = t.pattern.id + "-" + std::to_string(j);
      for (auto& l : q.node_labels) {
        if (!l.empty() && unit_interval(rng()) < perturbation) l = one_edit(l, rng);
      }
      for (auto& e : q.edges) {
        if (!e.label.empty() && unit_interval(rng()) < perturbation) e.label = one_edit(e.label, rng);
      }
      all.push_back(std::move(q));
    }
  }
  for (std::size_t i = all.size(); i > 1; --i) std::swap(all[i - 1], all[below(rng, i)]);
  const std::size_t n = all.size();
  const auto n_train = static_cast<std::size_t>(std::llround(fractions.train * static_cast<double>(n)));
  const auto n_val = std::min(n - n_train, static_cast<std::size_t>(std::llround(fractions.validation * n)));
  WorkloadSplit s;
  s.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.validation.assign(all.begin() + static_cast<std::ptrdiff_t>(n_train),
                      all.begin() + static_cast<std::ptrdiff_t>(n_train + n_val));
  s.test.assign(all.begin() + static_cast<std::ptrdiff_t>(n_train + n_val), all.end());
  return s;
}

DataGraph forest_fire_sample(const DataGraph& g, double fraction, std::uint64_t seed, double forward) {
  if (!(fraction > 0.0) || fraction > 1.0) throw ConfigError("sample fraction must be in (0, 1]");
  if (forward < 0.0 || forward >= 1.0) throw ConfigError("burning probability must be in [0, 1)");
  const std::size_t n = g.num_nodes();
  if (fraction >= 1.0) return g;
  const auto target = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(fraction * static_cast<double>(n))));
  std::mt19937_64 rng(seed);
  std::vector<bool> burned(n, false);
  std::size_t kept = 0;
  std::vector<NodeId> unvisited(n);
  for (NodeId v = 0; v < n; ++v) unvisited[v] = v;
  for (std::size_t i = n; i > 1; --i) std::swap(unvisited[i - 1], unvisited[below(rng, i)]);
  std::size_t cursor = 0;
  while (kept < target) {
    while (burned[unvisited[cursor]]) ++cursor;
    NodeId ignite = unvisited[cursor];
    burned[ignite] = true;
    ++kept;
    std::vector<NodeId> queue{ignite};
    for (std::size_t head = 0; head < queue.size() && kept < target; ++head) {
      // Geometric burn count with mean forward / (1 - forward).
      std::size_t x = 0;
      while (unit_interval(rng()) < forward) ++x;
      std::vector<NodeId> fresh;
      for (NodeId w : undirected(g, queue[head])) {
        if (!burned[w]) fresh.push_back(w);
      }
      for (std::size_t i = fresh.size(); i > 1; --i) std::swap(fresh[i - 1], fresh[below(rng, i)]);
      for (std::size_t i = 0; i < std::min(x, fresh.size()) && kept < target; ++i) {
        burned[fresh[i]] = true;
        ++kept;
        queue.push_back(fresh[i]);
      }
    }
  }
  std::vector<NodeId> remap(n, kNoNode);
  std::vector<std::string> labels;
  for (NodeId v = 0; v < n; ++v) {
    if (burned[v]) {
      remap[v] = static_cast<NodeId>(labels.size());
      labels.push_back(g.node_label_text(v));
    }
  }
  std::vector<EdgeTriple> edges;
  for (const auto& e : g.edge_list()) {
    if (burned[e.src] && burned[e.dst]) edges.push_back({remap[e.src], e.label, remap[e.dst]});
  }
  return DataGraph::build(labels, edges);
}

void save_workload(const WorkloadSplit& split, const std::filesystem::path& dir, std::uint64_t seed) {
  std::filesystem::create_directories(dir);
  std::vector<GraphQuery> all;
  nlohmann::json manifest;
  manifest["seed"] = seed;
  auto add = [&](const char* name, const std::vector<GraphQuery>& qs) {
    nlohmann::json ids = nlohmann::json::array();
    for (const auto& q : qs) {
      ids.push_back(q.id);
      all.push_back(q);
    }
    manifest[name] = ids;
    save_queries(qs, dir / (std::string(name) + ".json"));
  };
  add("train", split.train);
  add("validation", split.validation);
  add("test", split.test);
  save_queries(all, dir / "queries.json");
  std::ofstream out(dir / "manifest.json");
  if (!out) throw ConfigError("cannot write manifest in " + dir.string());
  out << manifest.dump(2) << "\n";
}

WorkloadSplit load_workload(const std::filesystem::path& dir) {
  std::ifstream in(dir / "manifest.json");
  if (!in) throw ParseError("cannot open " + (dir / "manifest.json").string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed manifest: ") + e.what());
  }
  std::map<std::string, GraphQuery> by_id;
  for (auto& q : load_queries(dir / "queries.json")) by_id.emplace(q.id, std::move(q));
  WorkloadSplit s;
  auto take = [&](const char* name, std::vector<GraphQuery>& dst) {
    if (!manifest.contains(name)) throw ParseError(std::string("manifest lacks '") + name + "'");
    for (const auto& id : manifest[name]) {
      auto it = by_id.find(id.get<std::string>());
      if (it == by_id.end()) throw ParseError("manifest names unknown query " + id.get<std::string>());
      dst.push_back(it->second);
    }
  };
  take("train", s.train);
  take("validation", s.validation);
  take("test", s.test);
  return s;
}

}  // namespace l2p
