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
#include <cstdint>
#include <functional>
#include <queue>
#include <string>
#include <span>
#include <utility>
#include <vector>

#include "polypa/config.hpp"
#include "polypa/degree_groups.hpp"
#include "polypa/errors.hpp"
#include "polypa/graph.hpp"
#include "polypa/random.hpp"

namespace polypa {

// Request of added node `node` (the i-th added node) for its `slot`-th host
// (1-based), which must have degree `degree`. time = ell * i + slot.
struct HostReq {
  NodeId node = 0;
  std::uint32_t slot = 0;
  std::uint64_t degree = 0;
  std::uint64_t time = 0;

  friend bool operator==(const HostReq&, const HostReq&) = default;
};

// Node `node` has degree `degree` from time `time` on.
struct ExMsg {
  std::uint64_t degree = 0;
  std::uint64_t time = 0;
  NodeId node = 0;

  friend bool operator==(const ExMsg&, const ExMsg&) = default;
};

struct ScoredNode {
  double score = 0.0;
  std::uint64_t seq = 0;  // insertion order, breaks score ties
  NodeId node = 0;
};

// Operation counters that stand in for I/O accounting.
struct EmOpCounts {
  std::uint64_t pq_m_push = 0;
  std::uint64_t pq_m_pop = 0;
  std::uint64_t pq_u_push = 0;
  std::uint64_t pq_u_pop = 0;
  std::uint64_t sorted_items = 0;
  std::uint64_t requests = 0;

  std::uint64_t pq_ops() const {
    return pq_m_push + pq_m_pop + pq_u_push + pq_u_pop;
  }
};

struct EmResult {
  Graph graph;
  EmOpCounts counts;
};

// Per-degree number of hosts already requested by the current node (s_d).
using TakenCounts = std::vector<std::pair<std::uint64_t, std::uint32_t>>;

inline std::uint32_t taken_of(const TakenCounts& taken, std::uint64_t d) {
  for (const auto& [deg, s] : taken) {
    if (deg == d) return s;
  }
  return 0;
}

// Draws a host degree d with probability proportional to (c_d - s_d) f(d):
// propose d by c_d f(d), accept with probability (c_d - s_d) / c_d.
inline std::uint64_t sample_degree(const DegreeGroups& groups,
                                   const TakenCounts& taken,
                                   const WeightFunction& f,
                                   RandomSource& rng) {
  const double total = groups.total_weight();
  double reserved = 0.0;
  for (const auto& [d, s] : taken) reserved += static_cast<double>(s) * f(d);
  if (!(total > 0.0) || total - reserved <= 1e-12 * total) {
    throw CannotSatisfy("no eligible host weight left");
  }
  for (;;) {
    const std::uint64_t d = groups.draw(rng);
    const std::uint64_t c = groups.count(d);
    if (c == 0) continue;
    const std::uint32_t s = taken_of(taken, d);
    if (rng.uniform() * static_cast<double>(c) < static_cast<double>(c - s)) {
      return d;
    }
  }
}

struct Phase1Result {
  std::vector<HostReq> requests;
  std::vector<ExMsg> messages;  // initial contents of PQ_M
};

// Phase 1: sample the degree of every host. After a node's ell requests the
// counters move s_d nodes from degree d to d + 1, then the node itself joins
// group ell, so it never requests itself.
inline Phase1Result phase1(const Graph& seed, const GenConfig& cfg,
                           RandomSource& rng) {
  validate(seed, cfg, /*require_monotone=*/false);
  const std::uint64_t n0 = seed.num_nodes();
  const std::uint64_t ell = cfg.ell;
  const std::uint64_t max_degree =
      std::max<std::uint64_t>(seed.max_degree(), ell) + cfg.nodes;
  DegreeGroups groups(cfg.f, n0 + cfg.nodes, max_degree);

  Phase1Result out;
  out.messages.reserve(n0 + cfg.nodes);
  out.requests.reserve(cfg.nodes * ell);
  for (std::uint64_t v = 0; v < n0; ++v) {
    const std::uint64_t d = seed.degree(static_cast<NodeId>(v));
    out.messages.push_back({d, 0, static_cast<NodeId>(v)});
    groups.add(d, 1);
  }

  TakenCounts taken;
  for (std::uint64_t i = 1; i <= cfg.nodes; ++i) {
    const auto v = static_cast<NodeId>(n0 + i - 1);
    out.messages.push_back({ell, ell * (i + 1), v});
    taken.clear();
    for (std::uint32_t j = 1; j <= ell; ++j) {
      const std::uint64_t d = sample_degree(groups, taken, cfg.f, rng);
      auto it = std::find_if(taken.begin(), taken.end(),
                             [d](const auto& e) { return e.first == d; });
      if (it == taken.end()) {
        taken.emplace_back(d, 1);
      } else {
        ++it->second;
      }
      out.requests.push_back({v, j, d, ell * i + j});
    }
    for (const auto& [d, s] : taken) groups.add(d, -static_cast<std::int64_t>(s));
    for (const auto& [d, s] : taken) groups.add(d + 1, s);
    groups.add(ell, 1);
  }
  return out;
}

// Ascending by (degree, time). Times are unique, so this order is total and
// keeps arrival order within a degree.
inline void sort_requests(std::vector<HostReq>& requests) {
  std::sort(requests.begin(), requests.end(),
            [](const HostReq& a, const HostReq& b) {
              return a.degree != b.degree ? a.degree < b.degree
                                          : a.time < b.time;
            });
}

namespace detail {

// Binary heap that counts pushes and pops.
template <typename T, typename Greater>
class CountingMinHeap {
 public:
  CountingMinHeap(std::uint64_t& pushes, std::uint64_t& pops)
      : pushes_(pushes), pops_(pops) {}

  void push(const T& value) {
    heap_.push(value);
    ++pushes_;
  }
  void pop() {
    heap_.pop();
    ++pops_;
  }
  const T& top() const { return heap_.top(); }
  bool empty() const { return heap_.empty(); }
  void clear() { heap_ = {}; }

 private:
  std::priority_queue<T, std::vector<T>, Greater> heap_;
  std::uint64_t& pushes_;
  std::uint64_t& pops_;
};

struct MsgGreater {
  bool operator()(const ExMsg& a, const ExMsg& b) const {
    if (a.degree != b.degree) return a.degree > b.degree;
    if (a.time != b.time) return a.time > b.time;
    return a.node > b.node;
  }
};

struct ScoreGreater {
  bool operator()(const ScoredNode& a, const ScoredNode& b) const {
    if (a.score != b.score) return a.score > b.score;
    return a.seq > b.seq;
  }
};

}  // namespace detail

// Phase 2: resolve each request to a node that is uniform among the nodes
// having the requested degree just before the request's time. Returns the
// generated edges in generation order (added node i, slot j at position
// (i - 1) * ell + j - 1).
inline std::vector<Edge> phase2(std::span<const HostReq> sorted,
                                std::span<const ExMsg> messages,
                                std::uint64_t n0, std::uint32_t ell,
                                RandomSource& rng, EmOpCounts& counts) {
  detail::CountingMinHeap<ExMsg, detail::MsgGreater> pq_m(counts.pq_m_push,
                                                          counts.pq_m_pop);
  detail::CountingMinHeap<ScoredNode, detail::ScoreGreater> pq_u(
      counts.pq_u_push, counts.pq_u_pop);
  for (const ExMsg& m : messages) pq_m.push(m);

  std::vector<Edge> edges(sorted.size());
  std::uint64_t seq = 0;
  std::size_t r = 0;
  while (r < sorted.size()) {
    const std::uint64_t d = sorted[r].degree;
    // Nodes that left lower degrees without being requested there.
    while (!pq_m.empty() && pq_m.top().degree < d) pq_m.pop();
    double r_min = 0.0;
    const double r_max = 1.0;
    pq_u.clear();
    std::uint64_t last_time = 0;
    for (; r < sorted.size() && sorted[r].degree == d; ++r) {
      const HostReq& req = sorted[r];
      if (req.time <= last_time) {
        throw LogicError("requests are not sorted by (degree, time)");
      }
      last_time = req.time;
      while (!pq_m.empty() && pq_m.top().degree == d &&
             pq_m.top().time < req.time) {
        const double score = r_min + (r_max - r_min) * rng.uniform();
        pq_u.push({score, seq++, pq_m.top().node});
        pq_m.pop();
      }
      if (pq_u.empty()) {
        throw LogicError("no node of degree " + std::to_string(d) +
                         " available for a request");
      }
      const ScoredNode best = pq_u.top();
      pq_u.pop();
      r_min = best.score;
      const std::uint64_t i = req.node - n0 + 1;
      edges[(i - 1) * ell + (req.slot - 1)] = {req.node, best.node};
      pq_m.push({d + 1, static_cast<std::uint64_t>(ell) * (i + 1), best.node});
    }
  }
  return edges;
}

// Two-phase generation for an arbitrary non-negative weight function.
inline EmResult generate_em(const Graph& seed, const GenConfig& cfg) {
  RandomSource rng1 = RandomSource::child(cfg.seed, 0);
  RandomSource rng2 = RandomSource::child(cfg.seed, 1);
  Phase1Result p1 = phase1(seed, cfg, rng1);

  EmResult result;
  result.counts.requests = p1.requests.size();
  result.counts.sorted_items = p1.requests.size();
  sort_requests(p1.requests);
  std::vector<Edge> added = phase2(p1.requests, p1.messages, seed.num_nodes(),
                                   cfg.ell, rng2, result.counts);

  const std::uint64_t n0 = seed.num_nodes();
  std::vector<Edge> edges;
  edges.reserve(seed.num_edges() + added.size());
  edges.insert(edges.end(), seed.edges().begin(), seed.edges().end());
  edges.insert(edges.end(), added.begin(), added.end());
  std::vector<std::uint32_t> degrees(seed.degrees().begin(),
                                     seed.degrees().end());
  degrees.resize(n0 + cfg.nodes, cfg.ell);
  for (const Edge& e : added) ++degrees[e.v];
  result.graph = Graph::assemble(n0, seed.num_edges(), n0 + cfg.nodes,
                                 std::move(edges), std::move(degrees));
  return result;
}

}  // namespace polypa
