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

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "polypa/edge_io.hpp"
#include "polypa/errors.hpp"
#include "polypa/graph.hpp"

namespace polypa {

// Seed graph description: `ring:<n0>`, `1regular:<n0>` or `file:<path>`.
struct RingSeed {
  std::uint64_t n0 = 0;
};
struct OneRegularSeed {
  std::uint64_t n0 = 0;
};
struct FileSeed {
  std::string path;
};
using SeedSpec = std::variant<RingSeed, OneRegularSeed, FileSeed>;

inline SeedSpec parse_seed_spec(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw InvalidSpec("seed graph must look like ring:<n0>, 1regular:<n0> "
                      "or file:<path>, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  const std::string arg = text.substr(colon + 1);
  if (kind == "file") {
    if (arg.empty()) throw InvalidSpec("file seed needs a path");
    return FileSeed{arg};
  }
  std::uint64_t n0 = 0;
  std::size_t used = 0;
  try {
    n0 = std::stoull(arg, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != arg.size()) {
    throw InvalidSpec("bad node count in seed spec '" + text + "'");
  }
  if (kind == "ring") return RingSeed{n0};
  if (kind == "1regular") return OneRegularSeed{n0};
  throw InvalidSpec("unknown seed graph kind '" + kind + "'");
}

inline Graph make_seed_graph(const SeedSpec& spec) {
  if (const auto* ring = std::get_if<RingSeed>(&spec)) {
    if (ring->n0 < 3) throw InvalidSpec("ring seed needs n0 >= 3");
    std::vector<Edge> edges;
    edges.reserve(ring->n0);
    for (std::uint64_t i = 0; i < ring->n0; ++i) {
      edges.push_back({static_cast<NodeId>(i),
                       static_cast<NodeId>((i + 1) % ring->n0)});
    }
    return Graph::from_edges(ring->n0, std::move(edges));
  }
  if (const auto* one = std::get_if<OneRegularSeed>(&spec)) {
    if (one->n0 < 2 || one->n0 % 2 != 0) {
      throw InvalidSpec("1-regular seed needs an even n0 >= 2");
    }
    std::vector<Edge> edges;
    edges.reserve(one->n0 / 2);
    for (std::uint64_t i = 0; i < one->n0; i += 2) {
      edges.push_back({static_cast<NodeId>(i), static_cast<NodeId>(i + 1)});
    }
    return Graph::from_edges(one->n0, std::move(edges));
  }
  return read_edge_file(std::get<FileSeed>(spec).path);
}

}  // namespace polypa
