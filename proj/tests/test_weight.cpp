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

#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "polypa/errors.hpp"
#include "polypa/random.hpp"
#include "polypa/weight.hpp"

namespace polypa {
namespace {

TEST(Weight, PolynomialExamples) {
  EXPECT_DOUBLE_EQ(WeightFunction::polynomial(1.0)(5), 5.0);
  EXPECT_DOUBLE_EQ(WeightFunction::polynomial(2.0)(3), 9.0);
  EXPECT_DOUBLE_EQ(WeightFunction::polynomial(0.5)(4), 2.0);
  EXPECT_DOUBLE_EQ(weight(WeightFunction::polynomial(0.0), 7), 1.0);
}

TEST(Weight, DegreeZeroHasNoWeight) {
  EXPECT_EQ(WeightFunction::polynomial(0.0)(0), 0.0);
  EXPECT_EQ(WeightFunction::table({2.0, 3.0})(0), 0.0);
}

TEST(Weight, MemoMatchesDirectEvaluationAcrossThreshold) {
  const auto f = WeightFunction::polynomial(1.5);
  for (std::uint64_t d : {1ull, 2ull, 1023ull, 1024ull, 1025ull, 100000ull}) {
    EXPECT_DOUBLE_EQ(f(d), std::pow(static_cast<double>(d), 1.5)) << d;
  }
}

TEST(Weight, RejectsNegativeOrNonFiniteExponent) {
  EXPECT_THROW(WeightFunction::polynomial(-0.5), InvalidSpec);
  EXPECT_THROW(WeightFunction::polynomial(std::nan("")), InvalidSpec);
}

TEST(Weight, TableTailRules) {
  const auto ext = WeightFunction::table({1.0, 4.0, 6.0});
  EXPECT_DOUBLE_EQ(ext(2), 4.0);
  EXPECT_DOUBLE_EQ(ext(3), 6.0);
  EXPECT_DOUBLE_EQ(ext(50), 6.0);
  const auto strict =
      WeightFunction::table({1.0, 4.0}, WeightFunction::TailRule::kError);
  EXPECT_DOUBLE_EQ(strict(2), 4.0);
  EXPECT_THROW(strict(3), OutOfDomain);
}

TEST(Weight, TableValidation) {
  EXPECT_THROW(WeightFunction::table({}), InvalidSpec);
  EXPECT_THROW(WeightFunction::table({1.0, -1.0}), InvalidSpec);
}

TEST(Weight, Monotonicity) {
  EXPECT_TRUE(WeightFunction::polynomial(0.0).is_non_decreasing());
  EXPECT_TRUE(WeightFunction::table({1.0, 1.0, 2.0}).is_non_decreasing());
  EXPECT_FALSE(WeightFunction::table({1.0, 3.0, 2.0}).is_non_decreasing());
}

TEST(Weight, CsvWithHeader) {
  std::istringstream in("degree,weight\n1,1\n2,1.414\n3,1.732\n");
  const auto f = WeightFunction::from_csv(in);
  EXPECT_FALSE(f.is_polynomial());
  EXPECT_EQ(f.table_size(), 3u);
  EXPECT_DOUBLE_EQ(f(2), 1.414);
  EXPECT_DOUBLE_EQ(f(9), 1.732);
}

TEST(Weight, CsvRejectsGapsWithLine) {
  std::istringstream in("1,1\n3,2\n");
  try {
    WeightFunction::from_csv(in);
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.offset(), 4u);
  }
}

TEST(Random, SameSeedSameSequence) {
  RandomSource a(99), b(99);
  for (int k = 0; k < 1000; ++k) ASSERT_EQ(a.next(), b.next());
}

TEST(Random, ChildStreamsDiffer) {
  for (std::uint64_t i = 0; i < 8; ++i) {
    for (std::uint64_t j = i + 1; j < 8; ++j) {
      RandomSource a = RandomSource::child(7, i);
      RandomSource b = RandomSource::child(7, j);
      int equal = 0;
      for (int k = 0; k < 64; ++k) equal += a.next() == b.next();
      EXPECT_LT(equal, 64) << i << " vs " << j;
    }
  }
  EXPECT_NE(RandomSource::derive_seed(7, 1), RandomSource::derive_seed(8, 1));
  EXPECT_NE(RandomSource::child(1, 2, 3).next(),
            RandomSource::child(1, 3, 2).next());
}

TEST(Random, RangesHold) {
  RandomSource rng(3);
  for (int k = 0; k < 100000; ++k) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.uniform_below(7), 7u);
  }
  EXPECT_FALSE(rng.bernoulli(0.0));
  EXPECT_TRUE(rng.bernoulli(1.0));
}

}  // namespace
}  // namespace polypa
