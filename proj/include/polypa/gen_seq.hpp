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
#include <chrono>
#include <cstdint>
#include <vector>

#include "polypa/config.hpp"
#include "polypa/graph.hpp"
#include "polypa/proposal_list.hpp"
#include "polypa/random.hpp"

namespace polypa {

struct SeqOptions {
  ProposalList::Options proposal{.implicit_first_entry = true};
};

// Per-run measurements of the sequential generator.
struct SeqTrace {
  // |P| (explicit + implicit) after each added node.
  std::vector<std::uint64_t> proposal_size;
  // Proposals that did not yield a new host (rejected or duplicate), per node.
  std::vector<std::uint64_t> rejections;
  std::uint64_t wall_ns = 0;
  ProposalList::Stats final_stats;
};

struct SeqResult {
  Graph graph;
  SeqTrace trace;
};

namespace detail {

// kTrace records the per-node vectors; a non-null `trace` alone only gets the
// loop wall time and final list statistics.
template <bool kTrace>
Graph run_seq(const Graph& seed, const GenConfig& cfg, RandomSource& rng,
              const SeqOptions& options, SeqTrace* trace) {
  validate(seed, cfg, /*require_monotone=*/true);
  const std::uint64_t n0 = seed.num_nodes();
  const std::uint64_t total_nodes = n0 + cfg.nodes;
  const std::uint32_t ell = cfg.ell;

  std::vector<Edge> edges(seed.edges());
  edges.reserve(seed.num_edges() + cfg.nodes * ell);
  auto pl = ProposalList::build(seed, cfg.f, options.proposal, total_nodes);
  if constexpr (kTrace) {
    trace->proposal_size.reserve(cfg.nodes);
    trace->rejections.reserve(cfg.nodes);
  }

  std::vector<NodeId> hosts;
  hosts.reserve(ell);
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t v = n0; v < total_nodes; ++v) {
    // All ell hosts are drawn against the distribution as of v's arrival;
    // repeats are rejected and the state is updated only afterwards.
    hosts.clear();
    std::uint64_t proposals = 0;
    while (hosts.size() < ell) {
      const NodeId h = pl.sample(rng, proposals);
      if (std::find(hosts.begin(), hosts.end(), h) == hosts.end()) {
        hosts.push_back(h);
      }
    }
    const auto node = static_cast<NodeId>(v);
    pl.insert_node(node, ell);
    for (NodeId h : hosts) {
      pl.increment_host(h);
      edges.push_back({node, h});
    }
    if constexpr (kTrace) {
      trace->proposal_size.push_back(pl.size());
      trace->rejections.push_back(proposals - ell);
    }
  }
  if (trace != nullptr) {
    trace->wall_ns = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::nanoseconds>(
            std::chrono::steady_clock::now() - start)
            .count());
    trace->final_stats = pl.stats();
  }
  return Graph::assemble(n0, seed.num_edges(), total_nodes, std::move(edges),
                         pl.degree_vector());
}

}  // namespace detail

// Grows `seed` by cfg.nodes nodes, each attached to cfg.ell distinct hosts
// drawn with probability f(d_h) / W via the proposal list.
inline Graph generate_seq(const Graph& seed, const GenConfig& cfg,
                          RandomSource& rng, const SeqOptions& options = {}) {
  return detail::run_seq<false>(seed, cfg, rng, options, nullptr);
}

inline Graph generate_seq(const Graph& seed, const GenConfig& cfg,
                          const SeqOptions& options = {}) {
  RandomSource rng(cfg.seed);
  return generate_seq(seed, cfg, rng, options);
}

// Same output as generate_seq for the same stream, plus a trace.
inline SeqResult generate_seq_instrumented(const Graph& seed,
                                           const GenConfig& cfg,
                                           RandomSource& rng,
                                           const SeqOptions& options = {}) {
  SeqResult result;
  result.graph = detail::run_seq<true>(seed, cfg, rng, options, &result.trace);
  return result;
}

// Untraced run that only reports the sampling wall time and final statistics.
inline SeqResult generate_seq_timed(const Graph& seed, const GenConfig& cfg,
                                    RandomSource& rng,
                                    const SeqOptions& options = {}) {
  SeqResult result;
  result.graph = detail::run_seq<false>(seed, cfg, rng, options, &result.trace);
  return result;
}

}  // namespace polypa
