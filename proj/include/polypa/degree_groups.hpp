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

#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "polypa/errors.hpp"
#include "polypa/random.hpp"
#include "polypa/weight.hpp"

namespace polypa {

// Degree groups: c_d nodes of degree d, indexed by weight c_d * f(d) for
// weighted degree draws.
//
// Degrees in [1, B] live in a dense Fenwick tree; larger degrees live in a
// sparse segment tree whose nodes are allocated on first use. B is the
// smallest power of two >= sqrt(n_max). Both halves support point updates
// and weighted draws in logarithmic time.
class DegreeGroups {
 public:
  DegreeGroups(const WeightFunction& f, std::uint64_t max_nodes,
               std::uint64_t max_degree)
      : f_(f) {
    const auto root = static_cast<std::uint64_t>(
        std::ceil(std::sqrt(static_cast<double>(std::max<std::uint64_t>(max_nodes, 1)))));
    static_limit_ = std::bit_ceil(std::max<std::uint64_t>(root, 1));
    fenwick_.assign(static_limit_ + 1, 0.0);
    static_counts_.assign(static_limit_ + 1, 0);
    dynamic_lo_ = static_limit_ + 1;
    const std::uint64_t above =
        max_degree > static_limit_ ? max_degree - static_limit_ : 1;
    dynamic_span_ = std::bit_ceil(above);
    tree_.push_back({});
  }

  std::uint64_t static_limit() const { return static_limit_; }

  // c_d += delta. Counts never go negative.
  void add(std::uint64_t degree, std::int64_t delta) {
    if (degree == 0) throw LogicError("degree groups start at degree 1");
    if (delta == 0) return;
    std::uint64_t& c = slot(degree);
    if (delta < 0 && c < static_cast<std::uint64_t>(-delta)) {
      throw LogicError("degree group count would become negative");
    }
    c = static_cast<std::uint64_t>(static_cast<std::int64_t>(c) + delta);
    total_count_ = static_cast<std::uint64_t>(
        static_cast<std::int64_t>(total_count_) + delta);
    const double dw = static_cast<double>(delta) * f_(degree);
    if (degree <= static_limit_) {
      for (std::uint64_t i = degree; i <= static_limit_; i += i & (~i + 1)) {
        fenwick_[i] += dw;
      }
      static_total_ += dw;
    } else {
      tree_add(degree, dw);
    }
    if (c == 0 && degree > static_limit_) dynamic_counts_.erase(degree);
  }

  std::uint64_t count(std::uint64_t degree) const {
    if (degree == 0) return 0;
    if (degree <= static_limit_) return static_counts_[degree];
    auto it = dynamic_counts_.find(degree);
    return it == dynamic_counts_.end() ? 0 : it->second;
  }

  std::uint64_t total_count() const { return total_count_; }

  double total_weight() const {
    return static_total_ + tree_[0].sum;
  }

  // Degree drawn with probability c_d f(d) / total_weight().
  std::uint64_t draw(RandomSource& rng) const {
    const double dyn = tree_[0].sum;
    const double total = static_total_ + (dyn > 0.0 ? dyn : 0.0);
    double u = rng.uniform() * total;
    if (u < static_total_ || !(dyn > 0.0)) return fenwick_find(u);
    return tree_find(u - static_total_);
  }

  // Non-empty groups in ascending degree order.
  std::map<std::uint64_t, std::uint64_t> groups() const {
    std::map<std::uint64_t, std::uint64_t> out;
    for (std::uint64_t d = 1; d <= static_limit_; ++d) {
      if (static_counts_[d] != 0) out[d] = static_counts_[d];
    }
    for (const auto& [d, c] : dynamic_counts_) {
      if (c != 0) out[d] = c;
    }
    return out;
  }

 private:
  struct TreeNode {
    double sum = 0.0;
    std::uint32_t child[2] = {0, 0};
  };

  std::uint64_t& slot(std::uint64_t degree) {
    if (degree <= static_limit_) return static_counts_[degree];
    if (degree >= dynamic_lo_ + dynamic_span_) {
      throw LogicError("degree exceeds the degree-group range");
    }
    return dynamic_counts_[degree];
  }

  std::uint64_t fenwick_find(double u) const {
    std::uint64_t pos = 0;
    for (std::uint64_t step = static_limit_; step != 0; step >>= 1) {
      const std::uint64_t next = pos + step;
      if (next <= static_limit_ && fenwick_[next] <= u) {
        pos = next;
        u -= fenwick_[next];
      }
    }
    return std::min(pos + 1, static_limit_);
  }

  void tree_add(std::uint64_t degree, double dw) {
    std::uint32_t idx = 0;
    std::uint64_t lo = dynamic_lo_;
    std::uint64_t span = dynamic_span_;
    for (;;) {
      tree_[idx].sum += dw;
      if (span == 1) return;
      span >>= 1;
      const int side = degree >= lo + span ? 1 : 0;
      if (side == 1) lo += span;
      std::uint32_t next = tree_[idx].child[side];
      if (next == 0) {
        next = static_cast<std::uint32_t>(tree_.size());
        tree_.push_back({});
        tree_[idx].child[side] = next;
      }
      idx = next;
    }
  }

  std::uint64_t tree_find(double u) const {
    std::uint32_t idx = 0;
    std::uint64_t lo = dynamic_lo_;
    std::uint64_t span = dynamic_span_;
    while (span > 1) {
      span >>= 1;
      const std::uint32_t left = tree_[idx].child[0];
      const std::uint32_t right = tree_[idx].child[1];
      const double lw = left != 0 ? tree_[left].sum : 0.0;
      if ((u < lw && left != 0) || right == 0) {
        idx = left;
      } else {
        u -= lw;
        idx = right;
        lo += span;
      }
      if (idx == 0) break;  // empty subtree reached through rounding
    }
    return lo;
  }

  WeightFunction f_;
  std::uint64_t static_limit_ = 1;
  std::vector<double> fenwick_;
  std::vector<std::uint64_t> static_counts_;
  double static_total_ = 0.0;
  std::uint64_t dynamic_lo_ = 2;
  std::uint64_t dynamic_span_ = 1;
  std::vector<TreeNode> tree_;
  std::map<std::uint64_t, std::uint64_t> dynamic_counts_;
  std::uint64_t total_count_ = 0;
};

}  // namespace polypa
