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
#include <istream>
#include <ostream>

#include "l2p/graph/data_graph.h"

namespace l2p {

inline constexpr std::uint32_t kGraphSnapshotVersion = 1;

/// Reads `node_id<TAB>label` and `src_id<TAB>edge_label<TAB>dst_id` files.
/// Node ids must appear as 0..n-1 in file order. Duplicate edge lines collapse.
DataGraph load_graph(const std::filesystem::path& nodes_file, const std::filesystem::path& edges_file);
DataGraph load_graph(std::istream& nodes, std::istream& edges, const std::string& nodes_name = "nodes",
                     const std::string& edges_name = "edges");

void write_graph_tsv(const DataGraph& g, std::ostream& nodes, std::ostream& edges);
void write_graph_tsv(const DataGraph& g, const std::filesystem::path& nodes_file,
                     const std::filesystem::path& edges_file);

/// Binary snapshot: "L2PG", u32 version, u64 node/edge counts, then the
/// node-label, edge-label, node and edge sections.
void save_snapshot(const DataGraph& g, std::ostream& out);
void save_snapshot(const DataGraph& g, const std::filesystem::path& file);
DataGraph load_snapshot(std::istream& in);
DataGraph load_snapshot(const std::filesystem::path& file);

/// Loads a snapshot, or a `nodes.tsv`/`edges.tsv` pair when given a directory.
DataGraph load_any_graph(const std::filesystem::path& path);

}  // namespace l2p
