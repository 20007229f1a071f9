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
#include <optional>
#include <string_view>
#include <vector>

#include "l2p/plan/search_state.h"

namespace l2p {

inline constexpr std::uint32_t kFeatureSchemaVersion = 1;

/// Selection features, one vector per candidate (a star or HALT). The HALT
/// candidate reads star-agnostic aggregates in the per-star slots.
inline constexpr std::array<std::string_view, 21> kSelectFeatureNames = {
    // static
    "star_nodes", "star_edges", "pivot_candidates", "joinable_nodes", "num_stars", "k",
    // ranking
    "lb", "star_ub", "global_ub", "gap", "star_top",
    // context
    "list_length", "star_fetches", "cost_fraction", "exhausted", "is_halt",
    // extras
    "answers_fraction", "complete_found", "query_size", "steps", "open_stars"};

/// Fetch features for a chosen star: the selection slots of that star plus
/// bound-distance features.
inline constexpr std::array<std::string_view, 25> kFetchFeatureNames = {
    "star_nodes", "star_edges", "pivot_candidates", "joinable_nodes", "num_stars", "k",
    "lb", "star_ub", "global_ub", "gap", "star_top",
    "list_length", "star_fetches", "cost_fraction", "exhausted", "is_halt",
    "answers_fraction", "complete_found", "query_size", "steps", "open_stars",
    "star_ub_minus_lb", "others_top", "remaining_k", "lists_total"};

using FeatureVector = std::vector<double>;

/// Hash of the version and both feature name lists; stored with policies.
std::uint64_t feature_schema_hash();

/// psi_1(s, candidate); nullopt selects the HALT candidate. Throws
/// PlanningError for an out-of-range star.
FeatureVector select_features(const SearchState& s, std::optional<StarIndex> candidate);

/// psi_2(s, star).
FeatureVector fetch_features(const SearchState& s, StarIndex star);

}  // namespace l2p
