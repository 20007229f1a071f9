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


#pragma once

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

namespace l2p {

struct GbdtConfig {
  int rounds = 100;
  int max_depth = 4;
  double learning_rate = 0.1;
  double lambda = 1.0;            // L2 penalty on leaf values
  double min_child_hessian = 1e-3;
  double subsample = 1.0;         // row fraction per round
  std::uint64_t seed = 1;
  void validate() const;
};

enum class GbdtLoss : std::uint8_t { kSquared, kLogistic };

/// Gradient-boosted regression trees with exact greedy splits and
/// second-order leaf values -G / (H + lambda).
class Gbdt {
 public:
  Gbdt() = default;

  /// Rows are feature vectors of equal length.
  void fit(const std::vector<std::vector<double>>& x, const std::vector<double>& y, GbdtLoss loss,
           const GbdtConfig& cfg);

  /// Raw additive score (log-odds for the logistic loss).
  double predict_raw(const std::vector<double>& x) const;
  /// Mean for squared loss, probability for logistic.
  double predict(const std::vector<double>& x) const;

  GbdtLoss loss() const { return loss_; }
  std::size_t num_trees() const { return trees_.size(); }
  std::size_t num_features() const { return num_features_; }

  void save(std::ostream& out) const;
  static Gbdt load(std::istream& in);

  bool operator==(const Gbdt&) const = default;

 private:
  struct Node {
    std::int32_t feature = -1;  // -1 marks a leaf
    double threshold = 0.0;     // go left when x[feature] < threshold
    std::int32_t left = -1;
    std::int32_t right = -1;
    double value = 0.0;
    bool operator==(const Node&) const = default;
  };
  using Tree = std::vector<Node>;

  static double eval(const Tree& t, const std::vector<double>& x);

  GbdtLoss loss_ = GbdtLoss::kSquared;
  double base_ = 0.0;
  std::size_t num_features_ = 0;
  std::vector<Tree> trees_;
};

}  // namespace l2p
