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
#include <optional>

#include "l2p/plan/plan_trace.h"
#include "l2p/plan/search_state.h"

namespace l2p {

/// A (selection, fetching) policy pair. Implementations must be side-effect
/// free: the same state always yields the same decisions.
class Policy {
 public:
  virtual ~Policy() = default;

  /// The star to fetch from next, or nullopt for HALT.
  virtual std::optional<StarIndex> select(const SearchState& s, OverheadMeter& meter) const = 0;

  /// How many matches to fetch from `star`.
  virtual int fetch(const SearchState& s, StarIndex star, OverheadMeter& meter) const = 0;
};

/// Round-robin over unexhausted stars in index order, fetching k at a time.
class TaPolicy final : public Policy {
 public:
  std::optional<StarIndex> select(const SearchState& s, OverheadMeter& meter) const override;
  int fetch(const SearchState& s, StarIndex star, OverheadMeter& meter) const override;
};

/// The next unexhausted star after the most recently fetched one (cyclic).
std::optional<StarIndex> round_robin_next(const SearchState& s);

/// Selects HALT immediately.
class HaltPolicy final : public Policy {
 public:
  std::optional<StarIndex> select(const SearchState&, OverheadMeter&) const override { return std::nullopt; }
  int fetch(const SearchState&, StarIndex, OverheadMeter&) const override { return kDeltaMin; }
};

/// Uniform over the unexhausted stars plus HALT, and uniform over the
/// discrete fetch sizes. Decisions are a pure function of (seed, query, step).
class RandomPolicy final : public Policy {
 public:
  explicit RandomPolicy(std::uint64_t seed) : seed_(seed) {}
  std::optional<StarIndex> select(const SearchState& s, OverheadMeter& meter) const override;
  int fetch(const SearchState& s, StarIndex star, OverheadMeter& meter) const override;

 private:
  std::uint64_t draw(const SearchState& s, std::uint64_t salt) const;
  std::uint64_t seed_;
};

}  // namespace l2p
