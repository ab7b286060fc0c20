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
#include <limits>
#include <map>
#include <numeric>
#include <span>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "polypa/errors.hpp"

namespace polypa {

// Outcome counts of a Monte-Carlo experiment.
template <typename Key>
struct Histogram {
  std::map<Key, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const Key& key, std::uint64_t times = 1) {
    counts[key] += times;
    total += times;
  }

  void merge(const Histogram& other) {
    for (const auto& [k, c] : other.counts) counts[k] += c;
    total += other.total;
  }

  double fraction(const Key& key) const {
    auto it = counts.find(key);
    return it == counts.end() || total == 0
               ? 0.0
               : static_cast<double>(it->second) / static_cast<double>(total);
  }
};

struct ChiSquareResult {
  double statistic = 0.0;
  double p_value = 1.0;
  std::uint64_t dof = 0;
};

// Pearson chi-square test of outcome indices 0..k-1 against `expected`
// probabilities. Cells with an expected count below 5 are pooled, smallest
// first, until every pooled cell reaches 5. Observations in cells of
// probability zero give an infinite statistic.
inline ChiSquareResult chi_square(const Histogram<std::uint64_t>& h,
                                  std::span<const double> expected) {
  if (h.total == 0) throw InvalidConfig("chi-square needs observations");
  const double n = static_cast<double>(h.total);
  for (const auto& [k, c] : h.counts) {
    if (k >= expected.size() || (expected[k] <= 0.0 && c > 0)) {
      return {std::numeric_limits<double>::infinity(), 0.0, 0};
    }
  }
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < expected.size(); ++k) {
    if (expected[k] > 0.0) order.push_back(k);
  }
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return expected[a] < expected[b]; });

  struct Cell {
    double expected = 0.0;
    double observed = 0.0;
  };
  std::vector<Cell> cells;
  Cell pending;
  for (std::size_t k : order) {
    pending.expected += expected[k] * n;
    auto it = h.counts.find(k);
    pending.observed += it == h.counts.end() ? 0.0 : static_cast<double>(it->second);
    if (pending.expected >= 5.0) {
      cells.push_back(pending);
      pending = {};
    }
  }
  if (pending.expected > 0.0) {
    if (cells.empty()) {
      cells.push_back(pending);
    } else {
      cells.back().expected += pending.expected;
      cells.back().observed += pending.observed;
    }
  }
  if (cells.size() < 2) {
    throw InvalidConfig("chi-square needs at least two cells");
  }
  ChiSquareResult r;
  for (const Cell& c : cells) {
    const double diff = c.observed - c.expected;
    r.statistic += diff * diff / c.expected;
  }
  r.dof = cells.size() - 1;
  r.p_value = boost::math::gamma_q(static_cast<double>(r.dof) / 2.0,
                                   r.statistic / 2.0);
  return r;
}

// 1/2 sum |empirical - exact| over the union of supports.
template <typename Key>
double tv_distance(const Histogram<Key>& empirical,
                   const std::map<Key, double>& exact) {
  double sum = 0.0;
  for (const auto& [k, p] : exact) sum += std::abs(empirical.fraction(k) - p);
  for (const auto& [k, c] : empirical.counts) {
    if (!exact.contains(k)) sum += empirical.fraction(k);
  }
  return 0.5 * sum;
}

inline double tv_distance(const Histogram<std::uint64_t>& empirical,
                          std::span<const double> exact) {
  std::map<std::uint64_t, double> as_map;
  for (std::size_t k = 0; k < exact.size(); ++k) {
    if (exact[k] != 0.0) as_map[k] = exact[k];
  }
  return tv_distance(empirical, as_map);
}

template <typename Key>
double tv_distance(const Histogram<Key>& a, const Histogram<Key>& b) {
  double sum = 0.0;
  for (const auto& [k, c] : a.counts) sum += std::abs(a.fraction(k) - b.fraction(k));
  for (const auto& [k, c] : b.counts) {
    if (!a.counts.contains(k)) sum += b.fraction(k);
  }
  return 0.5 * sum;
}

// Passes when a strict majority of independent repetitions passed.
inline bool majority_pass(std::span<const bool> outcomes) {
  const auto passed = std::count(outcomes.begin(), outcomes.end(), true);
  return 2 * static_cast<std::size_t>(passed) > outcomes.size();
}

}  // namespace polypa
