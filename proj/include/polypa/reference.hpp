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
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "polypa/config.hpp"
#include "polypa/errors.hpp"
#include "polypa/graph.hpp"
#include "polypa/random.hpp"
#include "polypa/weight.hpp"

namespace polypa {

// Exact host distribution P(v) = f(d_v) / W over the given degrees.
inline std::vector<double> exact_host_distribution(
    std::span<const std::uint32_t> degrees, const WeightFunction& f) {
  std::vector<double> p(degrees.size());
  double total = 0.0;
  for (std::size_t v = 0; v < degrees.size(); ++v) {
    p[v] = f(degrees[v]);
    total += p[v];
  }
  if (!(total > 0.0)) throw InvalidConfig("total weight is zero");
  for (double& x : p) x /= total;
  return p;
}

inline std::vector<double> exact_host_distribution(const Graph& g,
                                                   const WeightFunction& f) {
  return exact_host_distribution(g.degrees(), f);
}

// Reference generator: every host is drawn by inverting the cumulative
// weight over all current nodes. Hosts of one node are drawn against the
// state at the node's arrival without replacement, and the state is updated
// after the last host.
inline Graph ref_generate(const Graph& seed, const GenConfig& cfg,
                          RandomSource& rng) {
  validate(seed, cfg, /*require_monotone=*/false);
  const std::uint64_t n0 = seed.num_nodes();
  const std::uint64_t total_nodes = n0 + cfg.nodes;
  std::vector<Edge> edges(seed.edges());
  std::vector<std::uint32_t> degrees(seed.degrees().begin(),
                                     seed.degrees().end());
  edges.reserve(seed.num_edges() + cfg.nodes * cfg.ell);
  std::vector<double> weights;
  std::vector<NodeId> hosts;
  for (std::uint64_t v = n0; v < total_nodes; ++v) {
    weights.resize(v);
    for (std::uint64_t u = 0; u < v; ++u) weights[u] = cfg.f(degrees[u]);
    hosts.clear();
    for (std::uint32_t j = 0; j < cfg.ell; ++j) {
      double total = 0.0;
      for (double w : weights) total += w;
      if (!(total > 0.0)) throw CannotSatisfy("no eligible host weight left");
      double x = rng.uniform() * total;
      std::uint64_t pick = v;
      for (std::uint64_t u = 0; u < v; ++u) {
        if (weights[u] <= 0.0) continue;
        pick = u;
        if (x < weights[u]) break;
        x -= weights[u];
      }
      hosts.push_back(static_cast<NodeId>(pick));
      weights[pick] = 0.0;
    }
    for (NodeId h : hosts) {
      edges.push_back({static_cast<NodeId>(v), h});
      ++degrees[h];
    }
    degrees.push_back(cfg.ell);
  }
  return Graph::assemble(n0, seed.num_edges(), total_nodes, std::move(edges),
                         std::move(degrees));
}

// Edge-array rejection scheme for f = d^alpha: propose an endpoint of a
// uniform edge (probability d_h / 2m), then accept with (1/d)^(1-alpha) for
// alpha < 1 or (d/max_degree)^(alpha-1) otherwise. Used only as a second,
// independent single-step oracle.
inline NodeId naive_edge_sample(const Graph& g, double alpha,
                                RandomSource& rng) {
  if (g.num_edges() == 0) throw InvalidConfig("graph has no edges");
  const double max_degree = g.max_degree();
  for (;;) {
    const Edge& e = g.edges()[rng.uniform_below(g.num_edges())];
    const NodeId h = rng.bernoulli(0.5) ? e.u : e.v;
    const double d = g.degree(h);
    const double accept = alpha < 1.0 ? std::pow(1.0 / d, 1.0 - alpha)
                                      : std::pow(d / max_degree, alpha - 1.0);
    if (rng.uniform() < accept) return h;
  }
}

}  // namespace polypa
