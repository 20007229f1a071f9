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
#include <limits>

namespace l2p {

using NodeId = std::uint32_t;
using LabelId = std::uint32_t;
using QueryNodeId = std::uint32_t;
/// Zero-based star index inside a decomposition. External formats print it one-based.
using StarIndex = std::uint32_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();
inline constexpr double kScoreEps = 1e-9;

inline constexpr int kDeltaMin = 10;
inline constexpr int kDeltaMax = 200;

}  // namespace l2p
