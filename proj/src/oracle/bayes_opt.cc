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


#include "l2p/oracle/bayes_opt.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "l2p/common/errors.h"
#include "l2p/common/hash.h"
#include "l2p/simd/kernels.h"

namespace l2p {

struct GaussianProcess::Impl {
  std::vector<double> columns;  // SoA copy of the inputs for the distance kernel
  std::size_t n = 0;
  Eigen::LLT<Eigen::MatrixXd> chol;
  Eigen::VectorXd alpha;
  double y_mean = 0.0;
  double y_scale = 1.0;
};

GaussianProcess::GaussianProcess(double lengthscale, double signal_variance, double noise)
    : lengthscale_(lengthscale), signal_(signal_variance), noise_(noise) {}

void GaussianProcess::fit(const std::vector<BoPoint>& x, const std::vector<double>& y) {
  if (x.empty() || x.size() != y.size()) throw ConfigError("GP needs matching non-empty inputs and targets");
  auto impl = std::make_shared<Impl>();
  const std::size_t n = x.size();
  impl->n = n;
  impl->columns.resize(3 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < 3; ++d) impl->columns[d * n + i] = x[i][d];
  }
  impl->y_mean = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : y) var += (v - impl->y_mean) * (v - impl->y_mean);
  var /= static_cast<double>(n);
  impl->y_scale = var > 1e-24 ? std::sqrt(var) : 1.0;

  const auto& kernels = simd::active_kernels();
  Eigen::MatrixXd k(n, n);
  std::vector<double> d2(n);
  const double inv = 1.0 / (2.0 * lengthscale_ * lengthscale_);
  for (std::size_t i = 0; i < n; ++i) {
    kernels.squared_distances(impl->columns, n, x[i], d2);
    for (std::size_t j = 0; j < n; ++j) k(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
        signal_ * std::exp(-d2[j] * inv);
  }
  Eigen::VectorXd yt(n);
  for (std::size_t i = 0; i < n; ++i) yt(static_cast<Eigen::Index>(i)) = (y[i] - impl->y_mean) / impl->y_scale;
  // Jittered Cholesky: grow the diagonal until the factorization succeeds.
  double jitter = noise_;
  for (int attempt = 0;; ++attempt) {
    Eigen::MatrixXd kj = k;
    kj.diagonal().array() += jitter;
    impl->chol.compute(kj);
    if (impl->chol.info() == Eigen::Success) break;
    if (attempt > 12) throw ConfigError("GP covariance is not positive definite");
    jitter *= 10.0;
  }
  impl->alpha = impl->chol.solve(yt);
  impl_ = std::move(impl);
}

GaussianProcess::Prediction GaussianProcess::predict(const BoPoint& x) const {
  const Impl& m = *impl_;
  std::vector<double> d2(m.n);
  simd::active_kernels().squared_distances(m.columns, m.n, x, d2);
  Eigen::VectorXd ks(m.n);
  const double inv = 1.0 / (2.0 * lengthscale_ * lengthscale_);
  for (std::size_t j = 0; j < m.n; ++j) ks(static_cast<Eigen::Index>(j)) = signal_ * std::exp(-d2[j] * inv);
  double mean = ks.dot(m.alpha);
  Eigen::VectorXd v = m.chol.matrixL().solve(ks);
  double var = std::max(signal_ - v.squaredNorm(), 0.0);
  return {m.y_mean + m.y_scale * mean, m.y_scale * std::sqrt(var)};
}

double expected_improvement(double mean, double stddev, double best, double xi) {
  const double gain = mean - best - xi;
  if (stddev < 1e-12) return std::max(gain, 0.0);
  const double z = gain / stddev;
  const double cdf = 0.5 * std::erfc(-z / std::sqrt(2.0));
  const double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
  return gain * cdf + stddev * pdf;
}

std::vector<BoPoint> latin_hypercube(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<BoPoint> out(n);
  for (std::size_t d = 0; d < 3; ++d) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng() % i]);
    for (std::size_t i = 0; i < n; ++i) {
      out[i][d] = (static_cast<double>(perm[i]) + unit_interval(rng())) / static_cast<double>(n);
    }
  }
  return out;
}

namespace {

BoPoint clamp_box(BoPoint p) {
  for (auto& v : p) v = std::clamp(v, 0.0, 1.0);
  return p;
}

// Compass search on the acquisition surface from `start`.
BoPoint refine(const std::function<double(const BoPoint&)>& acq, BoPoint start) {
  double value = acq(start);
  for (double step = 0.1; step > 1e-3; step *= 0.5) {
    bool moved = true;
    while (moved) {
      moved = false;
      for (std::size_t d = 0; d < 3; ++d) {
        for (double dir : {-1.0, 1.0}) {
          BoPoint p = start;
          p[d] += dir * step;
          p = clamp_box(p);
          double v = acq(p);
          if (v > value + 1e-15) {
            start = p;
            value = v;
            moved = true;
          }
        }
      }
    }
  }
  return start;
}

}  // namespace

BoResult bayes_optimize(const BoObjective& f, const BoConfig& cfg) {
  if (cfg.initial < 1 || cfg.iterations < 1) throw ConfigError("optimization budgets must be at least 1");
  BoResult r;
  auto record = [&](const BoPoint& p) {
    double v = f(p);
    r.points.push_back(p);
    r.values.push_back(v);
    if (r.values.size() == 1 || v > r.best_value) {
      r.best_value = v;
      r.best = p;
    }
    r.best_so_far.push_back(r.best_value);
  };
  for (const auto& p : latin_hypercube(cfg.initial, cfg.seed)) record(p);

  std::mt19937_64 rng(hash_combine(cfg.seed, 0xb0));
  GaussianProcess gp(cfg.lengthscale, cfg.signal_variance, cfg.noise);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    gp.fit(r.points, r.values);
    const double best = r.best_value;
    const double scale = std::max(1e-12, std::abs(best));
    auto acq = [&](const BoPoint& p) {
      auto pr = gp.predict(p);
      return expected_improvement(pr.mean, pr.stddev, best, cfg.xi * scale);
    };
    std::vector<std::pair<double, BoPoint>> samples;
    samples.reserve(cfg.acquisition_samples);
    for (std::size_t s = 0; s < cfg.acquisition_samples; ++s) {
      BoPoint p{unit_interval(rng()), unit_interval(rng()), unit_interval(rng())};
      samples.push_back({acq(p), p});
    }
    const std::size_t starts = std::min(cfg.refine_starts, samples.size());
    std::partial_sort(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(starts), samples.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    BoPoint chosen = samples.front().second;
    double chosen_value = -1.0;
    for (std::size_t s = 0; s < starts; ++s) {
      BoPoint p = refine(acq, samples[s].second);
      double v = acq(p);
      if (v > chosen_value) {
        chosen_value = v;
        chosen = p;
      }
    }
    record(chosen);
  }
  return r;
}

HeuristicWeights tune_weights(std::vector<OracleInstance>& instances, const OracleConfig& cfg, BoResult* trace) {
  BoConfig bo;
  bo.iterations = cfg.bo_iterations;
  bo.initial = cfg.bo_initial;
  bo.seed = cfg.seed;
  auto objective = [&](const BoPoint& p) {
    HeuristicWeights w{p};
    if (p[0] <= 0.0 && p[1] <= 0.0 && p[2] <= 0.0) return 0.0;
    return plan_value(w, instances, cfg);
  };
  BoResult r = bayes_optimize(objective, bo);
  if (trace != nullptr) *trace = r;
  return HeuristicWeights{r.best};
}

}  // namespace l2p
