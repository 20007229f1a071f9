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

#include <string>
#include <string_view>

namespace l2p {

/// Decodes UTF-8 into code points. Invalid sequences decode byte-wise as U+FFFD.
std::u32string utf8_to_code_points(std::string_view s);

/// 1 - lev(a, b) / max(|a|, |b|) over code points; 1.0 when both are empty.
double label_similarity(std::string_view a, std::string_view b);
double label_similarity(std::u32string_view a, std::u32string_view b);

}  // namespace l2p
