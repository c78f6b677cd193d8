// Copyright 2026 The l2dim Authors
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

#include "l2dim/linalg.hpp"

#include <random>

#include "gtest/gtest.h"
#include "l2dim/cayley_complex.hpp"
#include "test_support.hpp"

namespace l2dim {
namespace {

using testing::naive_rank;

SparseRationalMatrix identity(std::size_t k) {
  SparseRationalMatrix m(k, k);
  for (std::size_t i = 0; i < k; ++i) m.set(i, i, 1);
  return m;
}

// Random sparse matrix of prescribed rank-ish structure: a product of two
// thin random factors plus noise rows that are combinations of others.
SparseRationalMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                   double density, bool fractions) {
  std::uniform_real_distribution<double> u(0, 1);
  std::uniform_int_distribution<int> v(-4, 4), den(1, 5);
  SparseRationalMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (u(rng) < density) m.set(i, j, fractions ? Rational(v(rng), den(rng)) : Rational(v(rng)));
    }
  }
  // Duplicate a few rows as combinations to force rank deficiency.
  for (std::size_t i = 0; i + 2 < rows; i += 3) {
    for (const auto& [j, x] : m.row(i)) m.add(i + 2, j, 2 * x);
  }
  return m;
}

TEST(RankExact, ZeroMatrices) {
  EXPECT_EQ(rank_exact(SparseRationalMatrix(0, 0)), 0u);
  EXPECT_EQ(rank_exact(SparseRationalMatrix(3, 7)), 0u);
  EXPECT_EQ(rank_exact(SparseRationalMatrix(100, 90)), 0u);
}

TEST(RankExact, Identity) {
  for (std::size_t k : {1u, 5u, 63u, 64u, 150u}) EXPECT_EQ(rank_exact(identity(k)), k);
}

TEST(RankExact, CyclicCayleyGraphBoundary) {
  const std::vector<Permutation> images = {{1, 2, 3, 4, 0}};
  const auto c = build_complex(realize(images, 5), Presentation({"a"}, {}));
  EXPECT_EQ(rank_exact(boundary1(c)), 4u);
}

TEST(RankExact, MatchesNaiveEliminationOnSmallDenseMatrices) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 150; ++trial) {
    const auto m = random_matrix(rng, 1 + trial % 12, 1 + (trial * 7) % 13, 0.5, trial % 2 == 0);
    EXPECT_EQ(rank_exact(m), naive_rank(m));
    EXPECT_EQ(rank_exact(m.transpose()), rank_exact(m));
  }
}

TEST(RankExact, MatchesNaiveEliminationOnSparsePath) {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 12; ++trial) {
    const auto m = random_matrix(rng, 70 + trial * 3, 80 - trial, 0.04, trial % 3 == 0);
    EXPECT_EQ(rank_exact(m), naive_rank(m));
    EXPECT_EQ(rank_exact(m.transpose()), rank_exact(m));
  }
}

TEST(RankExact, DenseAndSparseEliminatorsAgree) {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = random_matrix(rng, 20, 25, 0.2, true);
    const auto rows = linalg::integer_rows(m);
    EXPECT_EQ(linalg::dense_rank(rows, m.cols(), linalg::IntegerRing{}),
              linalg::sparse_rank(rows, m.cols(), linalg::IntegerRing{}));
  }
}

TEST(RankExact, LargeEntriesStayExact) {
  // Rows (1, N), (N, N^2 + 1): determinant 1, so rank 2 for any N.
  const Rational big("123456789012345678901234567890");
  SparseRationalMatrix m(2, 2);
  m.set(0, 0, 1);
  m.set(0, 1, big);
  m.set(1, 0, big);
  m.set(1, 1, big * big + 1);
  EXPECT_EQ(rank_exact(m), 2u);
  m.set(1, 1, big * big);
  EXPECT_EQ(rank_exact(m), 1u);
}

TEST(RankModP, Examples) {
  EXPECT_EQ(rank_mod_p(identity(10), 7), 10u);
  EXPECT_EQ(rank_mod_p(SparseRationalMatrix(4, 4), 7), 0u);
  SparseRationalMatrix two(1, 1);
  two.set(0, 0, 2);
  EXPECT_EQ(rank_mod_p(two, 2), 0u);
  EXPECT_EQ(rank_exact(two), 1u);
}

TEST(RankModP, BadPrimes) {
  SparseRationalMatrix half(1, 1);
  half.set(0, 0, Rational(1, 2));
  EXPECT_THROW(rank_mod_p(half, 2), BadPrime);
  EXPECT_EQ(rank_mod_p(half, 3), 1u);
  EXPECT_THROW(rank_mod_p(identity(2), 9), BadPrime);
  EXPECT_THROW(rank_mod_p(identity(2), 1), BadPrime);
}

TEST(RankModP, IsALowerBound) {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 100; ++trial) {
    const auto m = random_matrix(rng, 1 + trial % 30, 1 + trial % 17, 0.4, false);
    const std::size_t exact = rank_exact(m);
    for (std::uint64_t p : {2ull, 3ull, 5ull}) EXPECT_LE(rank_mod_p(m, p), exact);
    EXPECT_EQ(rank_mod_p(m, kLargePrime), exact);
  }
}

TEST(RankCertified, AgreesWithExact) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = random_matrix(rng, 1 + trial % 20, 1 + trial % 23, 0.3, trial % 2 == 1);
    EXPECT_EQ(rank_certified(m), rank_exact(m));
  }
}

TEST(SparseRationalMatrix, StoresOnlyNonzeros) {
  SparseRationalMatrix m(2, 3);
  m.add(0, 1, 3);
  m.add(0, 1, -3);
  EXPECT_EQ(m.nonzeros(), 0u);
  m.set(1, 2, Rational(1, 3));
  EXPECT_EQ(m.at(1, 2), Rational(1, 3));
  EXPECT_EQ(m.transpose().at(2, 1), Rational(1, 3));
  EXPECT_THROW(m.at(2, 0), std::out_of_range);
}

}  // namespace
}  // namespace l2dim
