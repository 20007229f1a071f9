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

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "l2p/oracle/oracle.h"

namespace l2p {

using BoPoint = std::array<double, 3>;

/// Gaussian-process surrogate with a squared-exponential kernel and fixed
/// hyperparameters. Targets are standardized before fitting.
class GaussianProcess {
 public:
  GaussianProcess(double lengthscale, double signal_variance, double noise);

  void fit(const std::vector<BoPoint>& x, const std::vector<double>& y);

  struct Prediction {
    double mean;
    double stddev;
  };
  /// Posterior in the original target units.
  Prediction predict(const BoPoint& x) const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  double lengthscale_;
  double signal_;
  double noise_;
};

/// Expected improvement over `best` for maximization.
double expected_improvement(double mean, double stddev, double best, double xi);

/// n stratified points in [0,1]^3.
std::vector<BoPoint> latin_hypercube(std::size_t n, std::uint64_t seed);

struct BoConfig {
  std::size_t iterations = 100;
  std::size_t initial = 8;
  std::uint64_t seed = 1;
  double lengthscale = 0.25;
  double signal_variance = 1.0;
  double noise = 1e-6;
  double xi = 0.01;
  std::size_t acquisition_samples = 2048;
  std::size_t refine_starts = 4;
};

struct BoResult {
  BoPoint best{};
  double best_value = 0.0;
  std::vector<BoPoint> points;
  std::vector<double> values;
  std::vector<double> best_so_far;  // after each evaluation
};

using BoObjective = std::function<double(const BoPoint&)>;

/// Maximizes `f` over [0,1]^3: Latin-hypercube start, then EI-guided
/// evaluations. Returns the best observed point.
BoResult bayes_optimize(const BoObjective& f, const BoConfig& cfg);

/// Heuristic weight tuning: maximizes plan_value over the instances.
HeuristicWeights tune_weights(std::vector<OracleInstance>& instances, const OracleConfig& cfg,
                              BoResult* trace = nullptr);

}  // namespace l2p
