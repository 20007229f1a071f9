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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <algorithm>
#include <vector>

#include "l2p/simd/kernels.h"

namespace l2p::simd {
namespace {

constexpr std::size_t kLanes = 8;

struct Row {
  __m256i v;
};

// Eight labels at once, one per int32 lane. The DP row runs over the shared
// query; each lane walks its own label and freezes once the label ends.
void levenshtein_batch_avx2(CodePoints query, std::span<const CodePoints> labels, std::span<std::int32_t> out) {
  const std::size_t m = query.size();
  std::vector<Row> prev(m + 1), cur(m + 1);
  const __m256i one = _mm256_set1_epi32(1);

  std::size_t base = 0;
  for (; base + kLanes <= labels.size(); base += kLanes) {
    alignas(32) std::int32_t lens[kLanes];
    std::size_t max_len = 0;
    for (std::size_t l = 0; l < kLanes; ++l) {
      lens[l] = static_cast<std::int32_t>(labels[base + l].size());
      max_len = std::max(max_len, labels[base + l].size());
    }
    const __m256i len_v = _mm256_load_si256(reinterpret_cast<const __m256i*>(lens));
    for (std::size_t i = 0; i <= m; ++i) prev[i].v = _mm256_set1_epi32(static_cast<std::int32_t>(i));

    alignas(32) std::int32_t chars[kLanes];
    for (std::size_t j = 0; j < max_len; ++j) {
      for (std::size_t l = 0; l < kLanes; ++l) {
        const auto& s = labels[base + l];
        chars[l] = j < s.size() ? static_cast<std::int32_t>(s[j]) : -1;
      }
      const __m256i c = _mm256_load_si256(reinterpret_cast<const __m256i*>(chars));
      const __m256i active = _mm256_cmpgt_epi32(len_v, _mm256_set1_epi32(static_cast<std::int32_t>(j)));
      cur[0].v = _mm256_set1_epi32(static_cast<std::int32_t>(j + 1));
      for (std::size_t i = 1; i <= m; ++i) {
        const __m256i q = _mm256_set1_epi32(static_cast<std::int32_t>(query[i - 1]));
        // eq is all-ones (-1) where chars match, so sub = prev[i-1] + 1 + eq.
        const __m256i eq = _mm256_cmpeq_epi32(q, c);
        const __m256i sub = _mm256_add_epi32(_mm256_add_epi32(prev[i - 1].v, one), eq);
        const __m256i del = _mm256_add_epi32(prev[i].v, one);
        const __m256i ins = _mm256_add_epi32(cur[i - 1].v, one);
        cur[i].v = _mm256_min_epi32(_mm256_min_epi32(del, ins), sub);
      }
      for (std::size_t i = 0; i <= m; ++i) prev[i].v = _mm256_blendv_epi8(prev[i].v, cur[i].v, active);
    }
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + base), prev[m].v);
  }
  for (; base < labels.size(); ++base) out[base] = levenshtein(query, labels[base]);
}

void squared_distances_avx2(std::span<const double> columns, std::size_t n, std::span<const double> x,
                            std::span<double> out) {
  const std::size_t dim = x.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t d = 0; d < dim; ++d) {
      const __m256d p = _mm256_loadu_pd(columns.data() + d * n + i);
      const __m256d diff = _mm256_sub_pd(_mm256_set1_pd(x[d]), p);
      acc = _mm256_add_pd(acc, _mm256_mul_pd(diff, diff));
    }
    _mm256_storeu_pd(out.data() + i, acc);
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double diff = x[d] - columns[d * n + i];
      acc += diff * diff;
    }
    out[i] = acc;
  }
}

}  // namespace

const KernelSet* avx2_kernels_unchecked() {
  static const KernelSet kSet{"avx2", &levenshtein_batch_avx2, &squared_distances_avx2};
  return &kSet;
}

}  // namespace l2p::simd
