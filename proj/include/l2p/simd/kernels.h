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

// Data-parallel inner loops. Each kernel has a scalar reference and, where the
// host supports it, an AVX2 variant; the dispatcher picks one at startup.
// Variants are required to be bit-identical to the scalar path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace l2p::simd {

/// A code-point string viewed without ownership.
using CodePoints = std::span<const char32_t>;

struct KernelSet {
  std::string_view name;

  /// out[i] = Levenshtein distance between `query` and `labels[i]`.
  void (*levenshtein_batch)(CodePoints query, std::span<const CodePoints> labels, std::span<std::int32_t> out);

  /// out[i] = sum_d (x[d] - points[d][i])^2 over a column-major (SoA) point set.
  /// `columns` holds dim contiguous blocks of `n` values each.
  void (*squared_distances)(std::span<const double> columns, std::size_t n, std::span<const double> x,
                            std::span<double> out);
};

const KernelSet& scalar_kernels();

/// nullptr when the binary or the host CPU lacks AVX2.
const KernelSet* avx2_kernels();

/// The kernel set selected for this process. Honors L2P_SIMD=scalar|avx2.
const KernelSet& active_kernels();

/// Single-pair Levenshtein distance (scalar two-row DP).
std::int32_t levenshtein(CodePoints a, CodePoints b);

}  // namespace l2p::simd
