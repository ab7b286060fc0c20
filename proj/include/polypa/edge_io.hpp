// Copyright 2026 The PolyPA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polypa/errors.hpp"
#include "polypa/graph.hpp"

namespace polypa {

// kText:   one "u v\n" line per edge, decimal, 0-indexed.
// kBinary: consecutive pairs of 64-bit little-endian unsigned integers.
// Both keep the edge order of the graph (seed edges first).
enum class EdgeFormat { kText, kBinary };

inline void write_edges(const Graph& g, EdgeFormat format, std::ostream& out) {
  if (format == EdgeFormat::kText) {
    std::string buf;
    buf.reserve(1 << 16);
    char num[24];
    for (const Edge& e : g.edges()) {
      auto r = std::to_chars(num, num + sizeof(num), e.u);
      buf.append(num, r.ptr);
      buf.push_back(' ');
      r = std::to_chars(num, num + sizeof(num), e.v);
      buf.append(num, r.ptr);
      buf.push_back('\n');
      if (buf.size() > (1 << 16) - 64) {
        out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
        buf.clear();
      }
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    return;
  }
  char rec[16];
  for (const Edge& e : g.edges()) {
    const std::uint64_t ends[2] = {e.u, e.v};
    for (int k = 0; k < 2; ++k) {
      for (int b = 0; b < 8; ++b) {
        rec[8 * k + b] = static_cast<char>((ends[k] >> (8 * b)) & 0xff);
      }
    }
    out.write(rec, sizeof(rec));
  }
}

inline std::string write_edges(const Graph& g, EdgeFormat format) {
  std::ostringstream os;
  write_edges(g, format, os);
  return std::move(os).str();
}

namespace detail {

inline NodeId checked_node(std::uint64_t id, std::uint64_t line,
                           std::uint64_t offset) {
  if (id >= 0xffffffffULL) throw ParseError("node id too large", line, offset);
  return static_cast<NodeId>(id);
}

inline Graph graph_from_parsed(std::vector<Edge> edges, std::uint64_t n) {
  std::vector<std::uint32_t> degrees(n, 0);
  for (const Edge& e : edges) {
    ++degrees[e.u];
    ++degrees[e.v];
  }
  const std::uint64_t m = edges.size();
  return Graph::assemble(n, m, n, std::move(edges), std::move(degrees));
}

}  // namespace detail

// Parses an edge list. The node count is the largest id plus one; every node
// and edge of the result counts as seed. Self-loops are rejected.
inline Graph read_edges(std::string_view bytes, EdgeFormat format) {
  std::vector<Edge> edges;
  std::uint64_t n = 0;
  if (format == EdgeFormat::kBinary) {
    if (bytes.size() % 16 != 0) {
      throw ParseError("binary edge list length is not a multiple of 16", 0,
                       bytes.size() - bytes.size() % 16);
    }
    edges.reserve(bytes.size() / 16);
    for (std::size_t off = 0; off < bytes.size(); off += 16) {
      std::uint64_t ends[2] = {0, 0};
      for (int k = 0; k < 2; ++k) {
        for (int b = 7; b >= 0; --b) {
          ends[k] = (ends[k] << 8) |
                    static_cast<unsigned char>(bytes[off + 8 * k + b]);
        }
      }
      const NodeId u = detail::checked_node(ends[0], 0, off);
      const NodeId v = detail::checked_node(ends[1], 0, off);
      if (u == v) throw ParseError("self-loop", 0, off);
      edges.push_back({u, v});
      n = std::max<std::uint64_t>(n, std::max(u, v) + 1ULL);
    }
    return detail::graph_from_parsed(std::move(edges), n);
  }

  std::uint64_t line = 0;
  std::size_t pos = 0;
  while (pos < bytes.size()) {
    ++line;
    const std::size_t start = pos;
    std::size_t end = bytes.find('\n', pos);
    if (end == std::string_view::npos) end = bytes.size();
    pos = end + 1;
    std::string_view text = bytes.substr(start, end - start);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);

    std::uint64_t ends[2] = {0, 0};
    const char* p = text.data();
    const char* last = text.data() + text.size();
    for (int k = 0; k < 2; ++k) {
      while (p < last && (*p == ' ' || *p == '\t')) ++p;
      auto [next, ec] = std::from_chars(p, last, ends[k]);
      if (ec != std::errc() || next == p) {
        throw ParseError("expected two decimal node ids", line, start);
      }
      p = next;
    }
    while (p < last && (*p == ' ' || *p == '\t')) ++p;
    if (p != last) throw ParseError("trailing characters", line, start);

    const NodeId u = detail::checked_node(ends[0], line, start);
    const NodeId v = detail::checked_node(ends[1], line, start);
    if (u == v) throw ParseError("self-loop", line, start);
    edges.push_back({u, v});
    n = std::max<std::uint64_t>(n, std::max(u, v) + 1ULL);
  }
  return detail::graph_from_parsed(std::move(edges), n);
}

// Reads a text edge list from disk (seed-file input).
inline Graph read_edge_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open edge file '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("error reading edge file '" + path + "'");
  return read_edges(bytes, EdgeFormat::kText);
}

}  // namespace polypa
