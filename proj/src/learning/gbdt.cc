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


#include "l2p/learning/gbdt.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "l2p/common/binary_io.h"
#include "l2p/common/errors.h"
#include "l2p/common/hash.h"

namespace l2p {

void GbdtConfig::validate() const {
  if (rounds < 0 || max_depth < 0) throw ConfigError("GBDT rounds and depth must be non-negative");
  if (!(learning_rate > 0.0) || lambda < 0.0) throw ConfigError("GBDT needs a positive learning rate and lambda >= 0");
  if (!(subsample > 0.0) || subsample > 1.0) throw ConfigError("GBDT subsample must be in (0, 1]");
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

struct Builder {
  const std::vector<std::vector<double>>& x;
  const std::vector<double>& g;
  const std::vector<double>& h;
  const GbdtConfig& cfg;
  std::size_t num_features;

  struct Split {
    double gain = 0.0;
    std::int32_t feature = -1;
    double threshold = 0.0;
  };

  Split best_split(const std::vector<std::size_t>& rows, double gsum, double hsum) const {
    Split best;
    const double parent = gsum * gsum / (hsum + cfg.lambda);
    std::vector<std::size_t> sorted = rows;
    for (std::size_t f = 0; f < num_features; ++f) {
      std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
        if (x[a][f] != x[b][f]) return x[a][f] < x[b][f];
        return a < b;
      });
      double gl = 0.0, hl = 0.0;
      for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        gl += g[sorted[i]];
        hl += h[sorted[i]];
        const double v = x[sorted[i]][f], next = x[sorted[i + 1]][f];
        if (v == next) continue;
        const double gr = gsum - gl, hr = hsum - hl;
        if (hl < cfg.min_child_hessian || hr < cfg.min_child_hessian) continue;
        const double gain = gl * gl / (hl + cfg.lambda) + gr * gr / (hr + cfg.lambda) - parent;
        if (gain > best.gain + 1e-12) {
          best.gain = gain;
          best.feature = static_cast<std::int32_t>(f);
          best.threshold = v + (next - v) / 2.0;
          if (best.threshold <= v) best.threshold = next;
        }
      }
    }
    return best;
  }
};

}  // namespace

void Gbdt::fit(const std::vector<std::vector<double>>& x, const std::vector<double>& y, GbdtLoss loss,
               const GbdtConfig& cfg) {
  cfg.validate();
  if (x.empty() || x.size() != y.size()) throw ConfigError("GBDT needs matching non-empty rows and targets");
  num_features_ = x.front().size();
  for (const auto& row : x) {
    if (row.size() != num_features_) throw ConfigError("GBDT rows differ in length");
    for (double v : row) {
      if (!std::isfinite(v)) throw ConfigError("GBDT features must be finite");
    }
  }
  loss_ = loss;
  trees_.clear();
  const std::size_t n = x.size();
  const double ybar = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  if (loss == GbdtLoss::kLogistic) {
    const double p = std::clamp(ybar, 1e-6, 1.0 - 1e-6);
    base_ = std::log(p / (1.0 - p));
  } else {
    base_ = ybar;
  }
  std::vector<double> raw(n, base_), g(n), h(n);
  std::mt19937_64 rng(cfg.seed);
  for (int round = 0; round < cfg.rounds; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      if (loss == GbdtLoss::kLogistic) {
        const double p = sigmoid(raw[i]);
        g[i] = p - y[i];
        h[i] = std::max(p * (1.0 - p), 1e-12);
      } else {
        g[i] = raw[i] - y[i];
        h[i] = 1.0;
      }
    }
    std::vector<std::size_t> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (cfg.subsample >= 1.0 || unit_interval(rng()) < cfg.subsample) rows.push_back(i);
    }
    if (rows.empty()) continue;

    Builder b{x, g, h, cfg, num_features_};
    Tree tree;
    // Depth-first growth; each stack entry owns a node index and its rows.
    struct Work {
      std::int32_t node;
      std::vector<std::size_t> rows;
      int depth;
    };
    tree.push_back(Node{});
    std::vector<Work> stack;
    stack.push_back({0, std::move(rows), 0});
    while (!stack.empty()) {
      Work w = std::move(stack.back());
      stack.pop_back();
      double gs = 0.0, hs = 0.0;
      for (std::size_t r : w.rows) {
        gs += g[r];
        hs += h[r];
      }
      Builder::Split s;
      if (w.depth < cfg.max_depth && w.rows.size() > 1) s = b.best_split(w.rows, gs, hs);
      if (s.feature < 0) {
        tree[static_cast<std::size_t>(w.node)].value = -gs / (hs + cfg.lambda) * cfg.learning_rate;
        continue;
      }
      std::vector<std::size_t> left, right;
      for (std::size_t r : w.rows) (x[r][static_cast<std::size_t>(s.feature)] < s.threshold ? left : right).push_back(r);
      auto li = static_cast<std::int32_t>(tree.size());
      tree.push_back(Node{});
      auto ri = static_cast<std::int32_t>(tree.size());
      tree.push_back(Node{});
      Node& node = tree[static_cast<std::size_t>(w.node)];
      node.feature = s.feature;
      node.threshold = s.threshold;
      node.left = li;
      node.right = ri;
      stack.push_back({ri, std::move(right), w.depth + 1});
      stack.push_back({li, std::move(left), w.depth + 1});
    }
    for (std::size_t i = 0; i < n; ++i) raw[i] += eval(tree, x[i]);
    trees_.push_back(std::move(tree));
  }
}

double Gbdt::eval(const Tree& t, const std::vector<double>& x) {
  std::size_t i = 0;
  while (t[i].feature >= 0) {
    i = static_cast<std::size_t>(x[static_cast<std::size_t>(t[i].feature)] < t[i].threshold ? t[i].left : t[i].right);
  }
  return t[i].value;
}

double Gbdt::predict_raw(const std::vector<double>& x) const {
  if (x.size() != num_features_) throw ConfigError("feature vector length does not match the model");
  double s = base_;
  for (const auto& t : trees_) s += eval(t, x);
  return s;
}

double Gbdt::predict(const std::vector<double>& x) const {
  double r = predict_raw(x);
  return loss_ == GbdtLoss::kLogistic ? sigmoid(r) : r;
}

void Gbdt::save(std::ostream& out) const {
  binio::write_pod<std::uint8_t>(out, static_cast<std::uint8_t>(loss_));
  binio::write_pod<double>(out, base_);
  binio::write_pod<std::uint64_t>(out, num_features_);
  binio::write_pod<std::uint64_t>(out, trees_.size());
  for (const auto& t : trees_) {
    binio::write_pod<std::uint64_t>(out, t.size());
    for (const auto& n : t) {
      binio::write_pod(out, n.feature);
      binio::write_pod(out, n.threshold);
      binio::write_pod(out, n.left);
      binio::write_pod(out, n.right);
      binio::write_pod(out, n.value);
    }
  }
}

Gbdt Gbdt::load(std::istream& in) {
  Gbdt m;
  auto loss = binio::read_pod<std::uint8_t>(in);
  if (loss > 1) throw ParseError("unknown GBDT loss");
  m.loss_ = static_cast<GbdtLoss>(loss);
  m.base_ = binio::read_pod<double>(in);
  m.num_features_ = binio::read_pod<std::uint64_t>(in);
  auto trees = binio::read_pod<std::uint64_t>(in);
  if (trees > (1u << 20)) throw ParseError("GBDT tree count out of range");
  for (std::uint64_t t = 0; t < trees; ++t) {
    auto size = binio::read_pod<std::uint64_t>(in);
    if (size == 0 || size > (1u << 20)) throw ParseError("GBDT tree size out of range");
    Tree tree(size);
    for (std::uint64_t idx = 0; idx < size; ++idx) {
      Node& n = tree[idx];
      n.feature = binio::read_pod<std::int32_t>(in);
      n.threshold = binio::read_pod<double>(in);
      n.left = binio::read_pod<std::int32_t>(in);
      n.right = binio::read_pod<std::int32_t>(in);
      n.value = binio::read_pod<double>(in);
      // Children always follow their parent, which also rules out cycles.
      if (n.feature >= 0 && (static_cast<std::uint64_t>(n.feature) >= m.num_features_ ||
                             static_cast<std::uint64_t>(n.left) <= idx || static_cast<std::uint64_t>(n.right) <= idx ||
                             n.left < 0 || n.right < 0 || static_cast<std::uint64_t>(n.left) >= size ||
                             static_cast<std::uint64_t>(n.right) >= size)) {
        throw ParseError("GBDT node out of range");
      }
    }
    m.trees_.push_back(std::move(tree));
  }
  return m;
}

}  // namespace l2p
