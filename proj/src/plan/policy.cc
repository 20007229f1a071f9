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

#include "l2p/plan/policy.h"

#include <vector>

#include "l2p/common/hash.h"

namespace l2p {

std::optional<StarIndex> round_robin_next(const SearchState& s) {
  const std::size_t t = s.num_stars();
  std::size_t start = 0;
  for (auto it = s.history().rbegin(); it != s.history().rend(); ++it) {
    if (!it->is_halt()) {
      start = it->star + 1;
      break;
    }
  }
  for (std::size_t step = 0; step < t; ++step) {
    auto i = static_cast<StarIndex>((start + step) % t);
    if (!s.star(i).exhausted) return i;
  }
  return std::nullopt;
}

std::optional<StarIndex> TaPolicy::select(const SearchState& s, OverheadMeter&) const { return round_robin_next(s); }

int TaPolicy::fetch(const SearchState& s, StarIndex, OverheadMeter&) const { return s.context().k(); }

std::uint64_t RandomPolicy::draw(const SearchState& s, std::uint64_t salt) const {
  std::uint64_t h = hash_combine(seed_, fnv1a(s.context().query().id));
  h = hash_combine(h, s.history().size());
  return hash_combine(h, salt);
}

std::optional<StarIndex> RandomPolicy::select(const SearchState& s, OverheadMeter&) const {
  std::vector<StarIndex> open;
  for (StarIndex i = 0; i < s.num_stars(); ++i) {
    if (!s.star(i).exhausted) open.push_back(i);
  }
  std::uint64_t pick = draw(s, 1) % (open.size() + 1);
  if (pick == open.size()) return std::nullopt;
  return open[pick];
}

int RandomPolicy::fetch(const SearchState& s, StarIndex star, OverheadMeter&) const {
  const auto sizes = fetch_sizes();
  return sizes[draw(s, 2 + star) % sizes.size()];
}

}  // namespace l2p
