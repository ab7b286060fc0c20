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
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "polypa/errors.hpp"

namespace polypa {

using NodeId = std::uint32_t;

// Undirected edge. For generated edges `u` is the newer endpoint.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Edge list with dense node ids 0..n-1 and per-node degrees. The first n0
// nodes and m0 edges form the seed graph; node n0 + i - 1 is the i-th added
// node and its edges follow the seed edges in generation order.
class Graph {
 public:
  Graph() = default;

  // A graph whose nodes and edges all count as seed.
  static Graph from_edges(std::uint64_t num_nodes, std::vector<Edge> edges) {
    std::vector<std::uint32_t> degrees(num_nodes, 0);
    for (const Edge& e : edges) {
      if (e.u >= num_nodes || e.v >= num_nodes) {
        throw InvalidSpec("edge endpoint out of range");
      }
      if (e.u == e.v) throw InvalidSpec("self-loops are not allowed");
      ++degrees[e.u];
      ++degrees[e.v];
    }
    const std::uint64_t m = edges.size();
    return assemble(num_nodes, m, num_nodes, std::move(edges),
                    std::move(degrees));
  }

  // Trusted constructor used by the generators; degrees must match edges.
  static Graph assemble(std::uint64_t n0, std::uint64_t m0,
                        std::uint64_t num_nodes, std::vector<Edge> edges,
                        std::vector<std::uint32_t> degrees) {
    Graph g;
    g.n0_ = n0;
    g.m0_ = m0;
    g.num_nodes_ = num_nodes;
    g.edges_ = std::move(edges);
    g.degrees_ = std::move(degrees);
    return g;
  }

  std::uint64_t seed_nodes() const { return n0_; }
  std::uint64_t seed_edges() const { return m0_; }
  std::uint64_t num_nodes() const { return num_nodes_; }
  std::uint64_t num_edges() const { return edges_.size(); }

  const std::vector<Edge>& edges() const { return edges_; }
  std::span<const Edge> added_edges() const {
    return std::span<const Edge>(edges_).subspan(m0_);
  }
  std::span<const std::uint32_t> degrees() const { return degrees_; }
  std::uint32_t degree(NodeId v) const { return degrees_[v]; }

  std::uint32_t max_degree() const {
    std::uint32_t best = 0;
    for (auto d : degrees_) best = d > best ? d : best;
    return best;
  }

  NodeId add_node() {
    degrees_.push_back(0);
    return static_cast<NodeId>(num_nodes_++);
  }

  void add_edge(NodeId u, NodeId v) {
    edges_.push_back({u, v});
    ++degrees_[u];
    ++degrees_[v];
  }

  void reserve(std::uint64_t nodes, std::uint64_t edges) {
    degrees_.reserve(nodes);
    edges_.reserve(edges);
  }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::uint64_t n0_ = 0;
  std::uint64_t m0_ = 0;
  std::uint64_t num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> degrees_;
};

// degree -> number of nodes with that degree.
inline std::map<std::uint64_t, std::uint64_t> degree_histogram(
    const Graph& g) {
  std::map<std::uint64_t, std::uint64_t> hist;
  for (auto d : g.degrees()) ++hist[d];
  return hist;
}

}  // namespace polypa
