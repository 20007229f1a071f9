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

#include <cstdlib>
#include <string_view>

#include <spdlog/spdlog.h>

#include "l2p/simd/kernels.h"

namespace l2p::simd {

#if defined(L2P_HAVE_AVX2)
const KernelSet* avx2_kernels_unchecked();
#endif

const KernelSet* avx2_kernels() {
#if defined(L2P_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet& active_kernels() {
  static const KernelSet& selected = [] () -> const KernelSet& {
    const char* env = std::getenv("L2P_SIMD");
    std::string_view want = env ? env : "";
    if (want == "scalar") return scalar_kernels();
    if (const KernelSet* avx2 = avx2_kernels()) return *avx2;
    if (want == "avx2") spdlog::warn("L2P_SIMD=avx2 requested but unavailable; using scalar kernels");
    return scalar_kernels();
  }();
  return selected;
}

}  // namespace l2p::simd
