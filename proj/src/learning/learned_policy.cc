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


#include "l2p/learning/learned_policy.h"

#include <fstream>

#include "l2p/common/binary_io.h"
#include "l2p/common/errors.h"

namespace l2p {

LearnedPolicy::LearnedPolicy(Gbdt select_model, Gbdt fetch_model, PolicyMetadata meta)
    : select_(std::move(select_model)), fetch_(std::move(fetch_model)), meta_(std::move(meta)) {
  if (select_.num_features() != kSelectFeatureNames.size() || fetch_.num_features() != kFetchFeatureNames.size()) {
    throw ConfigError("policy models do not match the feature schema");
  }
}

std::optional<StarIndex> LearnedPolicy::select(const SearchState& s, OverheadMeter& meter) const {
  std::optional<StarIndex> best;
  double best_score = 0.0;
  bool any = false;
  for (StarIndex i = 0; i < s.num_stars(); ++i) {
    if (s.star(i).exhausted) continue;
    ++meter.feature_extractions;
    ++meter.model_evaluations;
    double v = select_.predict_raw(select_features(s, i));
    if (!any || v > best_score) {
      best = i;
      best_score = v;
      any = true;
    }
  }
  if (!any) return std::nullopt;
  ++meter.feature_extractions;
  ++meter.model_evaluations;
  double halt = select_.predict_raw(select_features(s, std::nullopt));
  if (halt > best_score) return std::nullopt;
  return best;
}

int LearnedPolicy::fetch(const SearchState& s, StarIndex star, OverheadMeter& meter) const {
  ++meter.feature_extractions;
  ++meter.model_evaluations;
  return discretize_delta(fetch_.predict(fetch_features(s, star)));
}

void LearnedPolicy::save(std::ostream& out) const {
  out.write("L2PP", 4);
  binio::write_pod<std::uint32_t>(out, kPolicyFormatVersion);
  binio::write_pod<std::uint64_t>(out, feature_schema_hash());
  binio::write_string(out, meta_.mode);
  binio::write_pod(out, meta_.iteration);
  binio::write_pod(out, meta_.seed);
  binio::write_pod(out, meta_.select_examples);
  binio::write_pod(out, meta_.fetch_examples);
  select_.save(out);
  fetch_.save(out);
}

void LearnedPolicy::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + file.string());
  save(out);
}

LearnedPolicy LearnedPolicy::load(std::istream& in) {
  binio::expect_magic(in, "L2PP", "policy");
  auto version = binio::read_pod<std::uint32_t>(in);
  if (version != kPolicyFormatVersion) throw ParseError("unsupported policy format version " + std::to_string(version));
  auto schema = binio::read_pod<std::uint64_t>(in);
  if (schema != feature_schema_hash()) throw ParseError("policy was trained with a different feature schema");
  PolicyMetadata meta;
  meta.mode = binio::read_string(in);
  meta.iteration = binio::read_pod<std::uint32_t>(in);
  meta.seed = binio::read_pod<std::uint64_t>(in);
  meta.select_examples = binio::read_pod<std::uint64_t>(in);
  meta.fetch_examples = binio::read_pod<std::uint64_t>(in);
  Gbdt select = Gbdt::load(in);
  Gbdt fetch = Gbdt::load(in);
  if (select.loss() != GbdtLoss::kLogistic || fetch.loss() != GbdtLoss::kSquared) {
    throw ParseError("policy models have unexpected losses");
  }
  try {
    return LearnedPolicy(std::move(select), std::move(fetch), std::move(meta));
  } catch (const ConfigError& e) {
    throw ParseError(e.what());
  }
}

LearnedPolicy LearnedPolicy::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ConfigError("cannot open policy file " + file.string());
  return load(in);
}

}  // namespace l2p
