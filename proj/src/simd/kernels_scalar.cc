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

#include <algorithm>
#include <vector>

#include "l2p/simd/kernels.h"

namespace l2p::simd {
namespace {

void levenshtein_batch_scalar(CodePoints query, std::span<const CodePoints> labels, std::span<std::int32_t> out) {
  for (std::size_t i = 0; i < labels.size(); ++i) out[i] = levenshtein(query, labels[i]);
}

void squared_distances_scalar(std::span<const double> columns, std::size_t n, std::span<const double> x,
                              std::span<double> out) {
  const std::size_t dim = x.size();
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double diff = x[d] - columns[d * n + i];
      acc += diff * diff;
    }
    out[i] = acc;
  }
}

}  // namespace

std::int32_t levenshtein(CodePoints a, CodePoints b) {
  // DP rows run over `a`; columns over `b`.
  const std::size_t m = a.size();
  std::vector<std::int32_t> prev(m + 1), cur(m + 1);
  for (std::size_t i = 0; i <= m; ++i) prev[i] = static_cast<std::int32_t>(i);
  for (std::size_t j = 0; j < b.size(); ++j) {
    cur[0] = static_cast<std::int32_t>(j + 1);
    for (std::size_t i = 1; i <= m; ++i) {
      std::int32_t sub = prev[i - 1] + (a[i - 1] == b[j] ? 0 : 1);
      cur[i] = std::min({prev[i] + 1, cur[i - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

const KernelSet& scalar_kernels() {
  static const KernelSet kSet{"scalar", &levenshtein_batch_scalar, &squared_distances_scalar};
  return kSet;
}

}  // namespace l2p::simd
