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
#include <filesystem>
#include <istream>
#include <optional>
#include <ostream>
#include <string>

#include "l2p/learning/features.h"
#include "l2p/learning/gbdt.h"
#include "l2p/plan/policy.h"

namespace l2p {

inline constexpr std::uint32_t kPolicyFormatVersion = 1;

struct PolicyMetadata {
  std::string mode;            // "exact" or "dagger"
  std::uint32_t iteration = 1;
  std::uint64_t seed = 0;
  std::uint64_t select_examples = 0;
  std::uint64_t fetch_examples = 0;
  bool operator==(const PolicyMetadata&) const = default;
};

/// Pi_select as a per-candidate scorer with argmax (ties to the lowest star,
/// HALT last) and Pi_fetch as a regressor snapped to the delta grid.
class LearnedPolicy final : public Policy {
 public:
  LearnedPolicy(Gbdt select_model, Gbdt fetch_model, PolicyMetadata meta);

  std::optional<StarIndex> select(const SearchState& s, OverheadMeter& meter) const override;
  int fetch(const SearchState& s, StarIndex star, OverheadMeter& meter) const override;

  const Gbdt& select_model() const { return select_; }
  const Gbdt& fetch_model() const { return fetch_; }
  const PolicyMetadata& metadata() const { return meta_; }

  /// Versioned binary: magic, format version, feature schema hash, metadata,
  /// then both ensembles.
  void save(std::ostream& out) const;
  void save(const std::filesystem::path& file) const;
  static LearnedPolicy load(std::istream& in);
  static LearnedPolicy load(const std::filesystem::path& file);

 private:
  Gbdt select_;
  Gbdt fetch_;
  PolicyMetadata meta_;
};

/// Ablation: round-robin selection that never halts, with a learned fetch size.
class FetchOnlyPolicy final : public Policy {
 public:
  explicit FetchOnlyPolicy(const Policy& inner) : inner_(&inner) {}
  std::optional<StarIndex> select(const SearchState& s, OverheadMeter&) const override { return round_robin_next(s); }
  int fetch(const SearchState& s, StarIndex star, OverheadMeter& meter) const override {
    return inner_->fetch(s, star, meter);
  }

 private:
  const Policy* inner_;
};

}  // namespace l2p
