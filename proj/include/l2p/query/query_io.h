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

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "l2p/query/graph_query.h"

namespace l2p {

/// {"id": "...", "nodes": [{"id": 0, "label": "..."}], "edges": [{"src": 0, "label": "...", "dst": 1}]}
nlohmann::json query_to_json(const GraphQuery& q);
GraphQuery query_from_json(const nlohmann::json& j);

/// A query list is {"queries": [...]} or a bare array.
std::vector<GraphQuery> load_queries(const std::filesystem::path& file);
void save_queries(const std::vector<GraphQuery>& queries, const std::filesystem::path& file);

}  // namespace l2p
