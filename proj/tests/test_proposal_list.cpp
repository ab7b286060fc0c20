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

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "polypa/errors.hpp"
#include "polypa/proposal_list.hpp"
#include "polypa/random.hpp"
#include "polypa/reference.hpp"
#include "polypa/seed.hpp"
#include "polypa/stats.hpp"

namespace polypa {
namespace {

using Degrees = std::vector<std::uint32_t>;

// Full scan of every documented invariant.
void expect_consistent(const ProposalList& pl) {
  const auto n = pl.node_count();
  std::vector<std::uint64_t> seen(n, pl.implicit_first_entry() ? 1 : 0);
  for (NodeId v : pl.explicit_entries()) {
    ASSERT_LT(v, n);
    ++seen[v];
  }
  std::uint64_t total_entries = 0;
  double w = 0.0;
  const auto& f = pl.weight_function();
  for (NodeId v = 0; v < n; ++v) {
    ASSERT_EQ(seen[v], pl.count(v)) << "node " << v;
    ASSERT_GE(pl.count(v), 1u);
    total_entries += seen[v];
    w += f(pl.degree(v));
    ASSERT_LE(pl.node_weight(v), pl.accept_bound() * (1 + 1e-9)) << "node " << v;
  }
  ASSERT_EQ(total_entries, pl.size());
  ASSERT_NEAR(pl.total_weight(), w, 1e-9 * w);
}

std::vector<std::uint32_t> counts_of(const ProposalList& pl) {
  std::vector<std::uint32_t> c;
  for (NodeId v = 0; v < pl.node_count(); ++v) c.push_back(pl.count(v));
  return c;
}

TEST(RequiredCount, RoundsUpWithFloor) {
  EXPECT_EQ(required_count(1.0, 4, 6), 1u);
  EXPECT_EQ(required_count(3.0, 4, 6), 2u);
  EXPECT_EQ(required_count(4.0, 50, 100), 2u);
  EXPECT_EQ(required_count(4.1, 50, 100), 3u);
  EXPECT_EQ(required_count(0.0, 50, 100), 1u);
}

TEST(ProposalList, BuildOneRegular) {
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    const auto f = WeightFunction::polynomial(alpha);
    const auto pl = ProposalList::build(make_seed_graph(OneRegularSeed{4}), f);
    EXPECT_EQ(counts_of(pl), (std::vector<std::uint32_t>{1, 1, 1, 1}));
    const auto s = pl.stats();
    EXPECT_EQ(s.size, 4u);
    EXPECT_DOUBLE_EQ(s.total_weight, 4 * f(1));
    EXPECT_EQ(s.node_count, 4u);
    EXPECT_DOUBLE_EQ(s.accept_bound, f(1));
    expect_consistent(pl);
  }
}

TEST(ProposalList, BuildMixedDegrees) {
  const Degrees d = {1, 1, 1, 3};
  const auto pl = ProposalList::build(d, WeightFunction::polynomial(1.0));
  EXPECT_EQ(counts_of(pl), (std::vector<std::uint32_t>{1, 1, 1, 2}));
  EXPECT_EQ(pl.size(), 5u);
  expect_consistent(pl);
}

TEST(ProposalList, BuildRingSquared) {
  const auto pl = ProposalList::build(make_seed_graph(RingSeed{3}),
                                      WeightFunction::polynomial(2.0));
  EXPECT_EQ(counts_of(pl), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_DOUBLE_EQ(pl.total_weight(), 12.0);
}

TEST(ProposalList, ImplicitEntriesSplitStats) {
  const Degrees d = {1, 1, 1, 3};
  const auto pl = ProposalList::build(d, WeightFunction::polynomial(1.0),
                                      {.implicit_first_entry = true});
  const auto s = pl.stats();
  EXPECT_EQ(s.explicit_size, 1u);
  EXPECT_EQ(s.implicit_size, 4u);
  EXPECT_EQ(s.size, 5u);
  expect_consistent(pl);
}

TEST(ProposalList, BuildErrors) {
  const Degrees zero = {1, 0};
  EXPECT_THROW(ProposalList::build(zero, WeightFunction::polynomial(1.0)),
               InvalidConfig);
  const Degrees d = {1, 1};
  EXPECT_THROW(ProposalList::build(d, WeightFunction::table({0.0})),
               InvalidConfig);
}

TEST(ProposalList, InsertSingleEdgeNodeGetsOneEntry) {
  for (double alpha : {0.5, 1.0, 1.5}) {
    const Degrees d = {1, 3, 2, 7, 1};
    auto pl = ProposalList::build(d, WeightFunction::polynomial(alpha));
    pl.insert_node(5, 1);
    EXPECT_EQ(pl.count(5), 1u);
    EXPECT_EQ(pl.node_count(), 6u);
    expect_consistent(pl);
  }
}

TEST(ProposalList, InsertTwoEdgeNodeQuadratic) {
  // 46 nodes of degree 1 and degrees 3, 4, 5: W = 96 before, 100 after a
  // degree-2 node arrives; n = 50 after it.
  Degrees d(46, 1);
  d.insert(d.end(), {3, 4, 5});
  auto pl = ProposalList::build(d, WeightFunction::polynomial(2.0));
  pl.insert_node(49, 2);
  EXPECT_DOUBLE_EQ(pl.total_weight(), 100.0);
  EXPECT_EQ(pl.node_count(), 50u);
  EXPECT_EQ(pl.count(49), 2u);
  expect_consistent(pl);
}

TEST(ProposalList, InsertErrors) {
  const Degrees d = {1, 1};
  auto pl = ProposalList::build(d, WeightFunction::polynomial(1.0));
  EXPECT_THROW(pl.insert_node(1, 1), LogicError);
  EXPECT_THROW(pl.insert_node(3, 1), LogicError);
  EXPECT_THROW(pl.insert_node(2, 0), LogicError);
  EXPECT_THROW(pl.increment_host(5), LogicError);
}

TEST(ProposalList, IncrementAppendsOnce) {
  const Degrees d = {1, 1};
  auto pl = ProposalList::build(d, WeightFunction::polynomial(1.0));
  pl.increment_host(0);
  EXPECT_DOUBLE_EQ(pl.total_weight(), 3.0);
  EXPECT_EQ(pl.count(0), 2u);
  EXPECT_DOUBLE_EQ(pl.node_weight(0), 1.0);
  EXPECT_DOUBLE_EQ(pl.accept_bound(), 1.5);
  expect_consistent(pl);
}

TEST(ProposalList, IncrementUniformNeverAppends) {
  const Degrees d = {1, 2, 3};
  auto pl = ProposalList::build(d, WeightFunction::polynomial(0.0));
  const auto before = pl.size();
  for (int k = 0; k < 20; ++k) pl.increment_host(k % 3);
  EXPECT_EQ(pl.size(), before);
}

TEST(ProposalList, WeightDecreaseIsLogicError) {
  const Degrees d = {2, 1};
  auto pl = ProposalList::build(d, WeightFunction::table({1.0, 3.0, 2.0}));
  EXPECT_THROW(pl.increment_host(0), LogicError);
}

// Random growth sequences keep every invariant.
TEST(ProposalList, PropertyRandomOperations) {
  RandomSource rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const double alpha = 0.25 * static_cast<double>(rng.uniform_below(9));
    const bool implicit = trial % 2 == 0;
    Degrees d;
    const auto n0 = 2 + rng.uniform_below(10);
    for (std::uint64_t v = 0; v < n0; ++v) {
      d.push_back(static_cast<std::uint32_t>(1 + rng.uniform_below(6)));
    }
    auto pl = ProposalList::build(d, WeightFunction::polynomial(alpha),
                                  {.implicit_first_entry = implicit});
    expect_consistent(pl);
    double bound = pl.accept_bound();
    for (int op = 0; op < 300; ++op) {
      if (rng.bernoulli(0.3)) {
        pl.insert_node(static_cast<NodeId>(pl.node_count()),
                       static_cast<std::uint32_t>(1 + rng.uniform_below(3)));
      } else {
        pl.increment_host(pl.sample(rng));
      }
      ASSERT_GE(pl.accept_bound(), bound);
      bound = pl.accept_bound();
      ASSERT_GE(pl.accept_bound(),
                pl.total_weight() / pl.node_count() * (1 - 1e-12));
    }
    expect_consistent(pl);
  }
}

// Chi-square of single draws on fixed states, including one reached through
// increments so that U exceeds the current W / n.
TEST(ProposalList, MarginalMatchesExactWeights) {
  struct State {
    Degrees degrees;
    double alpha;
    std::vector<NodeId> increments;
  };
  const std::vector<State> states = {
      {{1, 3}, 1.0, {}},
      {{1, 1, 2, 4}, 2.0, {}},
      {{1, 1, 1, 1, 1}, 1.5, {0, 0, 0, 2, 4}},
  };
  for (const auto& st : states) {
    const auto f = WeightFunction::polynomial(st.alpha);
    auto pl = ProposalList::build(st.degrees, f, {.implicit_first_entry = true});
    Degrees now = st.degrees;
    for (NodeId h : st.increments) {
      pl.increment_host(h);
      ++now[h];
    }
    RandomSource rng(77);
    Histogram<std::uint64_t> h;
    std::uint64_t proposals = 0;
    const std::uint64_t draws = 1000000;
    for (std::uint64_t k = 0; k < draws; ++k) h.add(pl.sample(rng, proposals));
    const auto r = chi_square(h, exact_host_distribution(now, f));
    EXPECT_GT(r.p_value, 0.001) << "statistic " << r.statistic;
    const double expected_cost =
        pl.size() * pl.accept_bound() / pl.total_weight();
    EXPECT_NEAR(static_cast<double>(proposals) / draws, expected_cost,
                0.01 * expected_cost);
  }
}

TEST(ProposalList, SampleProbabilitiesExample) {
  // degrees [1,3], alpha 2: node 1 carries 9 / 10 of the mass.
  const Degrees d = {1, 3};
  const auto pl = ProposalList::build(d, WeightFunction::polynomial(2.0));
  RandomSource rng(1);
  int ones = 0;
  const int draws = 200000;
  for (int k = 0; k < draws; ++k) ones += pl.sample(rng) == 1;
  EXPECT_NEAR(static_cast<double>(ones) / draws, 0.9, 0.005);
}

}  // namespace
}  // namespace polypa
