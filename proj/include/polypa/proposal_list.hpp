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

#include "polypa/errors.hpp"
#include "polypa/graph.hpp"
#include "polypa/random.hpp"
#include "polypa/weight.hpp"

namespace polypa {

// Number of proposal-list entries a node of weight `weight` needs so that
// weight / count <= total / nodes. The relative slack absorbs rounding when
// weight * nodes / total is an exact integer in real arithmetic.
inline std::uint64_t required_count(double weight, double nodes,
                                    double total) {
  const double x = weight * nodes / total;
  const double c = std::ceil(x - x * 1e-12);
  return c < 1.0 ? 1 : static_cast<std::uint64_t>(c);
}

struct ProposalListOptions {
  // Keep each node's first entry implicit (entry index v maps to node v).
  bool implicit_first_entry = false;
};

// Dynamic proposal distribution for sampling node v with probability
// f(d_v) / W.
//
// Node v holds c(v) entries in a growable list. Sampling picks a uniform
// entry and accepts its node with probability w(v) / U, where
// w(v) = f(d_v) / c(v) and U is an upper bound on every w(v). When a node's
// weight grows, entries are appended until w(v) <= W / n again.
//
// U is maintained as the running maximum of W / n over all updates (starting
// at W0 / n0). A node always satisfies w(v) <= W_j / n_j at its last update j,
// so U never underestimates max w(v) and the rejection step stays exact.
//
// With `implicit_first_entry`, the first entry of every node is not stored:
// index i < n of the virtual list maps to node i, the rest to the explicit
// overflow entries.
class ProposalList {
 public:
  using Options = ProposalListOptions;

  struct Stats {
    std::uint64_t explicit_size = 0;
    std::uint64_t implicit_size = 0;
    std::uint64_t size = 0;  // explicit + implicit
    double total_weight = 0.0;
    std::uint64_t node_count = 0;
    double accept_bound = 0.0;
  };

  // Builds the list for nodes with the given degrees (all >= 1):
  // c(v) = ceil(f(d_v) * n0 / W0), U = W0 / n0.
  static ProposalList build(std::span<const std::uint32_t> degrees,
                            const WeightFunction& f, Options options = {},
                            std::uint64_t node_capacity = 0) {
    ProposalList pl(f, options);
    const std::uint64_t n = degrees.size();
    pl.nodes_.reserve(std::max(node_capacity, n));
    double total = 0.0;
    for (auto d : degrees) {
      if (d == 0) throw InvalidConfig("proposal list needs degrees >= 1");
      total += f(d);
    }
    if (!(total > 0.0)) throw InvalidConfig("total weight is zero");
    pl.total_weight_ = total;
    pl.node_count_ = n;
    pl.accept_bound_ = total / static_cast<double>(n);
    for (std::uint64_t v = 0; v < n; ++v) {
      const auto c = required_count(f(degrees[v]), static_cast<double>(n),
                                    total);
      pl.nodes_.push_back({degrees[v], static_cast<std::uint32_t>(c)});
      pl.append(static_cast<NodeId>(v), c - (options.implicit_first_entry ? 1 : 0));
    }
    return pl;
  }

  static ProposalList build(const Graph& g, const WeightFunction& f,
                            Options options = {},
                            std::uint64_t node_capacity = 0) {
    return build(g.degrees(), f, options, node_capacity);
  }

  // Draws node h with probability f(d_h) / W.
  NodeId sample(RandomSource& rng) const {
    std::uint64_t proposals = 0;
    return sample(rng, proposals);
  }

  // As above; adds the number of proposals made to `proposals`.
  NodeId sample(RandomSource& rng, std::uint64_t& proposals) const {
    const std::uint64_t implicit = implicit_ ? node_count_ : 0;
    const std::uint64_t size = implicit + entries_.size();
    for (;;) {
      ++proposals;
      const std::uint64_t idx = rng.uniform_below(size);
      const NodeId h = idx < implicit ? static_cast<NodeId>(idx)
                                      : entries_[idx - implicit];
      const NodeState& st = nodes_[h];
      if (rng.uniform() * accept_bound_ * st.count < f_(st.degree)) {
        return h;
      }
    }
  }

  // Adds node v (which must be the next dense id) with the given degree:
  // c(v) = max(1, ceil(f(d) * n / W)) with n and W including v.
  void insert_node(NodeId v, std::uint32_t degree) {
    if (v < node_count_) throw LogicError("node is already in the list");
    if (v > node_count_) throw LogicError("node ids must be contiguous");
    if (degree == 0) throw LogicError("inserted node needs degree >= 1");
    const double w = f_(degree);
    ++node_count_;
    total_weight_ += w;
    const auto c = required_count(w, static_cast<double>(node_count_),
                                  total_weight_);
    nodes_.push_back({degree, static_cast<std::uint32_t>(c)});
    append(v, c - (implicit_ ? 1 : 0));
    raise_bound();
  }

  // Raises d_h by one and appends entries of h until w(h) <= W / n.
  void increment_host(NodeId h) {
    if (h >= node_count_) throw LogicError("host is not in the list");
    NodeState& st = nodes_[h];
    const std::uint32_t d = st.degree;
    const double before = f_(d);
    const double after = f_(d + 1);
    if (after < before) throw LogicError("weight decreases are not supported");
    st.degree = d + 1;
    total_weight_ += after - before;
    const auto need = required_count(after, static_cast<double>(node_count_),
                                     total_weight_);
    if (need > st.count) {
      append(h, need - st.count);
      st.count = static_cast<std::uint32_t>(need);
    }
    raise_bound();
  }

  Stats stats() const {
    Stats s;
    s.explicit_size = entries_.size();
    s.implicit_size = implicit_ ? node_count_ : 0;
    s.size = s.explicit_size + s.implicit_size;
    s.total_weight = total_weight_;
    s.node_count = node_count_;
    s.accept_bound = accept_bound_;
    return s;
  }

  std::uint64_t size() const {
    return entries_.size() + (implicit_ ? node_count_ : 0);
  }
  std::uint64_t node_count() const { return node_count_; }
  double total_weight() const { return total_weight_; }
  double accept_bound() const { return accept_bound_; }
  bool implicit_first_entry() const { return implicit_; }

  std::uint32_t count(NodeId v) const { return nodes_[v].count; }
  std::uint32_t degree(NodeId v) const { return nodes_[v].degree; }
  double node_weight(NodeId v) const {
    return f_(nodes_[v].degree) / nodes_[v].count;
  }

  std::vector<std::uint32_t> degree_vector() const {
    std::vector<std::uint32_t> out;
    out.reserve(nodes_.size());
    for (const NodeState& st : nodes_) out.push_back(st.degree);
    return out;
  }
  std::span<const NodeId> explicit_entries() const { return entries_; }
  const WeightFunction& weight_function() const { return f_; }

 private:
  ProposalList(const WeightFunction& f, Options options)
      : f_(f), implicit_(options.implicit_first_entry) {}

  void append(NodeId v, std::uint64_t times) {
    entries_.insert(entries_.end(), times, v);
  }

  void raise_bound() {
    accept_bound_ = std::max(accept_bound_,
                             total_weight_ / static_cast<double>(node_count_));
  }

  WeightFunction f_;
  bool implicit_ = false;
  std::vector<NodeId> entries_;
  // Degree and count side by side: a sample touches both.
  struct NodeState {
    std::uint32_t degree;
    std::uint32_t count;
  };
  std::vector<NodeState> nodes_;
  double total_weight_ = 0.0;
  std::uint64_t node_count_ = 0;
  double accept_bound_ = 0.0;
};

}  // namespace polypa
