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

#include "l2p/graph/graph_io.h"

#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "l2p/common/binary_io.h"
#include "l2p/common/errors.h"

namespace l2p {
namespace {

constexpr char kMagic[5] = "L2PG";

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    auto pos = line.find('\t', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::uint64_t parse_id(std::string_view field, const std::string& source, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(source, line_no, "expected a node id, got '" + std::string(field) + "'");
  }
  return value;
}

std::string_view strip_cr(std::string_view s) {
  if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
  return s;
}

std::ifstream open_or_throw(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot open " + p.string());
  return in;
}

}  // namespace

DataGraph load_graph(std::istream& nodes, std::istream& edges, const std::string& nodes_name,
                     const std::string& edges_name) {
  std::vector<std::string> labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(nodes, line)) {
    ++line_no;
    std::string_view sv = strip_cr(line);
    if (sv.empty()) continue;
    auto fields = split_tabs(sv);
    if (fields.size() != 2) throw ParseError(nodes_name, line_no, "expected node_id<TAB>label");
    auto id = parse_id(fields[0], nodes_name, line_no);
    if (id != labels.size()) {
      throw ParseError(nodes_name, line_no,
                       "node ids must be contiguous from 0; expected " + std::to_string(labels.size()));
    }
    labels.emplace_back(fields[1]);
  }

  std::vector<EdgeTriple> triples;
  line_no = 0;
  while (std::getline(edges, line)) {
    ++line_no;
    std::string_view sv = strip_cr(line);
    if (sv.empty()) continue;
    auto fields = split_tabs(sv);
    if (fields.size() != 3) throw ParseError(edges_name, line_no, "expected src_id<TAB>edge_label<TAB>dst_id");
    auto src = parse_id(fields[0], edges_name, line_no);
    auto dst = parse_id(fields[2], edges_name, line_no);
    if (src >= labels.size() || dst >= labels.size()) {
      throw IntegrityError(edges_name + ":" + std::to_string(line_no) + ": dangling edge endpoint " +
                           std::to_string(src) + " -> " + std::to_string(dst));
    }
    triples.push_back({static_cast<NodeId>(src), std::string(fields[1]), static_cast<NodeId>(dst)});
  }
  return DataGraph::build(labels, triples);
}

DataGraph load_graph(const std::filesystem::path& nodes_file, const std::filesystem::path& edges_file) {
  auto nodes = open_or_throw(nodes_file);
  auto edges = open_or_throw(edges_file);
  return load_graph(nodes, edges, nodes_file.string(), edges_file.string());
}

void write_graph_tsv(const DataGraph& g, std::ostream& nodes, std::ostream& edges) {
  for (NodeId v = 0; v < g.num_nodes(); ++v) nodes << v << '\t' << g.node_label_text(v) << '\n';
  for (const auto& e : g.edge_list()) edges << e.src << '\t' << e.label << '\t' << e.dst << '\n';
}

void write_graph_tsv(const DataGraph& g, const std::filesystem::path& nodes_file,
                     const std::filesystem::path& edges_file) {
  std::ofstream nodes(nodes_file, std::ios::binary), edges(edges_file, std::ios::binary);
  if (!nodes || !edges) throw ParseError("cannot write graph TSV files");
  write_graph_tsv(g, nodes, edges);
}

void save_snapshot(const DataGraph& g, std::ostream& out) {
  out.write(kMagic, 4);
  binio::write_pod<std::uint32_t>(out, kGraphSnapshotVersion);
  binio::write_pod<std::uint64_t>(out, g.num_nodes());
  binio::write_pod<std::uint64_t>(out, g.num_edges());

  const auto& nl = g.node_labels();
  binio::write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(nl.size()));
  for (LabelId l = 0; l < nl.size(); ++l) binio::write_string(out, nl.text(l));
  const auto& el = g.edge_labels();
  binio::write_pod<std::uint32_t>(out, static_cast<std::uint32_t>(el.size()));
  for (LabelId l = 0; l < el.size(); ++l) binio::write_string(out, el.text(l));

  std::vector<LabelId> node_section(g.num_nodes());
  for (NodeId v = 0; v < g.num_nodes(); ++v) node_section[v] = g.node_label(v);
  binio::write_vector(out, node_section);

  std::vector<std::uint32_t> edge_section;
  edge_section.reserve(g.num_edges() * 3);
  for (NodeId v = 0; v < g.num_nodes(); ++v) {
    for (NodeId w : g.out_neighbors(v)) {
      for (LabelId l : g.edge_labels_between(v, w)) {
        edge_section.push_back(v);
        edge_section.push_back(l);
        edge_section.push_back(w);
      }
    }
  }
  binio::write_vector(out, edge_section);
}

void save_snapshot(const DataGraph& g, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw ParseError("cannot write " + file.string());
  save_snapshot(g, out);
}

DataGraph load_snapshot(std::istream& in) {
  binio::expect_magic(in, kMagic, "graph snapshot");
  auto version = binio::read_pod<std::uint32_t>(in);
  if (version != kGraphSnapshotVersion) {
    throw ParseError("graph snapshot: unsupported format version " + std::to_string(version));
  }
  auto n = binio::read_pod<std::uint64_t>(in);
  auto m = binio::read_pod<std::uint64_t>(in);

  std::vector<std::string> node_vocab(binio::read_pod<std::uint32_t>(in));
  for (auto& s : node_vocab) s = binio::read_string(in);
  std::vector<std::string> edge_vocab(binio::read_pod<std::uint32_t>(in));
  for (auto& s : edge_vocab) s = binio::read_string(in);

  auto node_section = binio::read_vector<LabelId>(in);
  if (node_section.size() != n) throw ParseError("graph snapshot: node section size mismatch");
  std::vector<std::string> labels;
  labels.reserve(n);
  for (LabelId l : node_section) {
    if (l >= node_vocab.size()) throw IntegrityError("graph snapshot: node label id out of range");
    labels.push_back(node_vocab[l]);
  }

  auto edge_section = binio::read_vector<std::uint32_t>(in);
  if (edge_section.size() != m * 3) throw ParseError("graph snapshot: edge section size mismatch");
  std::vector<EdgeTriple> triples;
  triples.reserve(m);
  for (std::size_t i = 0; i < edge_section.size(); i += 3) {
    if (edge_section[i + 1] >= edge_vocab.size()) throw IntegrityError("graph snapshot: edge label id out of range");
    triples.push_back({edge_section[i], edge_vocab[edge_section[i + 1]], edge_section[i + 2]});
  }
  return DataGraph::build(labels, triples);
}

DataGraph load_snapshot(const std::filesystem::path& file) {
  auto in = open_or_throw(file);
  return load_snapshot(in);
}

DataGraph load_any_graph(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return load_graph(path / "nodes.tsv", path / "edges.tsv");
  return load_snapshot(path);
}

}  // namespace l2p
