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

/**
 * @file linalg.hpp
 * @brief Exact rank of sparse rational matrices.
 *
 * Rows are scaled to primitive integer vectors and eliminated without
 * fractions. Small matrices go through dense Bareiss elimination, larger
 * ones through sparse elimination with a minimal-fill pivot rule: the
 * column with the fewest live entries, then its shortest row. A modular
 * variant over Z/p gives a cheap lower bound on the rank.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "l2dim/rational.hpp"
#include "l2dim/sparse_matrix.hpp"

namespace l2dim {

/// Dimensions below which elimination is done densely.
inline constexpr std::size_t kDenseThreshold = 64;

/// 2^31 - 1, the default prime for modular prescreens.
inline constexpr std::uint64_t kLargePrime = 2147483647ull;

class BadPrime : public Error {
 public:
  explicit BadPrime(const std::string& message) : Error("bad_prime", message) {}
};

namespace linalg {

/// Integers with exact division; rows are kept primitive after each update.
struct IntegerRing {
  using value_type = Integer;

  static bool is_zero(const Integer& x) { return x == 0; }
  static Integer one() { return 1; }
  // p * x - a * y
  Integer combine(const Integer& p, const Integer& x, const Integer& a, const Integer& y) const {
    return p * x - a * y;
  }
  Integer divexact(const Integer& x, const Integer& d) const {
    Integer q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
  }
  template <class Row>
  void normalize(Row& row) const {
    Integer g = 0;
    for (const auto& [c, v] : row) {
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
      if (g == 1) return;
    }
    if (g > 1) {
      for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
    }
  }
};

/// Z/p for a prime p < 2^32, residues in [0, p).
struct PrimeField {
  using value_type = std::uint64_t;
  std::uint64_t p;

  static bool is_zero(std::uint64_t x) { return x == 0; }
  static std::uint64_t one() { return 1; }
  std::uint64_t combine(std::uint64_t a, std::uint64_t x, std::uint64_t b,
                        std::uint64_t y) const {
    return (a * x % p + p - b * y % p) % p;
  }
  std::uint64_t inverse(std::uint64_t x) const {
    std::uint64_t result = 1, base = x % p, e = p - 2;
    while (e > 0) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return result;
  }
  std::uint64_t divexact(std::uint64_t x, std::uint64_t d) const { return x * inverse(d) % p; }
  template <class Row>
  void normalize(Row&) const {}
};

template <class T>
using SparseRow = std::vector<std::pair<std::size_t, T>>;

/// Fraction-free Bareiss elimination on a dense copy. Columns without a
/// pivot are skipped; divisions by the previous pivot stay exact because
/// every live entry is a minor of the input.
template <class Ring>
std::size_t dense_rank(std::vector<SparseRow<typename Ring::value_type>> rows, std::size_t cols,
                       const Ring& ring) {
  using T = typename Ring::value_type;
  std::vector<std::vector<T>> m(rows.size(), std::vector<T>(cols, T(0)));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (auto& [c, v] : rows[i]) m[i][c] = std::move(v);
  }
  T prev = Ring::one();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && Ring::is_zero(m[pivot][c])) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        m[i][j] = ring.divexact(ring.combine(m[rank][c], m[i][j], m[i][c], m[rank][j]), prev);
      }
      m[i][c] = T(0);
    }
    prev = m[rank][c];
    ++rank;
  }
  return rank;
}

/// Sparse elimination with minimal-count pivot columns. A row update is
/// r_i <- p * r_i - a_i * r_pivot followed by ring.normalize.
template <class Ring>
std::size_t sparse_rank(std::vector<SparseRow<typename Ring::value_type>> rows, std::size_t cols,
                        const Ring& ring) {
  using T = typename Ring::value_type;
  std::vector<std::set<std::size_t>> col_rows(cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (const auto& [c, v] : rows[i]) col_rows[c].insert(i);
  }

  std::size_t rank = 0;
  SparseRow<T> merged;
  for (;;) {
    std::size_t best_col = cols;
    for (std::size_t c = 0; c < cols; ++c) {
      if (col_rows[c].empty()) continue;
      if (best_col == cols || col_rows[c].size() < col_rows[best_col].size()) best_col = c;
      if (col_rows[best_col].size() == 1) break;
    }
    if (best_col == cols) break;

    std::size_t pivot_row = *col_rows[best_col].begin();
    for (std::size_t i : col_rows[best_col]) {
      if (rows[i].size() < rows[pivot_row].size()) pivot_row = i;
    }
    const SparseRow<T> pivot = std::move(rows[pivot_row]);
    for (const auto& [c, v] : pivot) col_rows[c].erase(pivot_row);
    ++rank;

    const T pivot_value =
        std::find_if(pivot.begin(), pivot.end(), [&](const auto& e) { return e.first == best_col; })
            ->second;
    const std::vector<std::size_t> targets(col_rows[best_col].begin(), col_rows[best_col].end());
    for (std::size_t i : targets) {
      SparseRow<T>& row = rows[i];
      const T factor =
          std::find_if(row.begin(), row.end(), [&](const auto& e) { return e.first == best_col; })
              ->second;
      for (const auto& [c, v] : row) col_rows[c].erase(i);

      merged.clear();
      auto a = row.begin();
      auto b = pivot.begin();
      const T zero(0);
      while (a != row.end() || b != pivot.end()) {
        std::size_t c;
        T value;
        if (b == pivot.end() || (a != row.end() && a->first < b->first)) {
          c = a->first;
          value = ring.combine(pivot_value, a->second, factor, zero);
          ++a;
        } else if (a == row.end() || b->first < a->first) {
          c = b->first;
          value = ring.combine(pivot_value, zero, factor, b->second);
          ++b;
        } else {
          c = a->first;
          value = ring.combine(pivot_value, a->second, factor, b->second);
          ++a;
          ++b;
        }
        if (!Ring::is_zero(value)) merged.emplace_back(c, std::move(value));
      }
      ring.normalize(merged);
      row.swap(merged);
      for (const auto& [c, v] : row) col_rows[c].insert(i);
    }
  }
  return rank;
}

template <class Ring>
std::size_t rank_dispatch(std::vector<SparseRow<typename Ring::value_type>> rows,
                          std::size_t cols, const Ring& ring) {
  if (rows.size() < kDenseThreshold && cols < kDenseThreshold) {
    return dense_rank(std::move(rows), cols, ring);
  }
  return sparse_rank(std::move(rows), cols, ring);
}

/// Each row scaled by the lcm of its denominators, then made primitive.
inline std::vector<SparseRow<Integer>> integer_rows(const SparseRationalMatrix& m) {
  std::vector<SparseRow<Integer>> rows(m.rows());
  IntegerRing ring;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer scale = 1;
    for (const auto& [c, v] : m.row(i)) {
      mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), v.get_den_mpz_t());
    }
    for (const auto& [c, v] : m.row(i)) {
      rows[i].emplace_back(c, ring.divexact(scale, v.get_den()) * v.get_num());
    }
    ring.normalize(rows[i]);
  }
  return rows;
}

}  // namespace linalg

/// Exact rank over Q.
inline std::size_t rank_exact(const SparseRationalMatrix& m) {
  return linalg::rank_dispatch(linalg::integer_rows(m), m.cols(), linalg::IntegerRing{});
}

/// Rank of the reduction mod p. Never exceeds rank_exact(m).
inline std::size_t rank_mod_p(const SparseRationalMatrix& m, std::uint64_t p) {
  if (p < 2 || p > 0xffffffffull ||
      mpz_probab_prime_p(Integer(static_cast<unsigned long>(p)).get_mpz_t(), 30) == 0) {
    throw BadPrime("modulus " + std::to_string(p) + " is not a prime below 2^32");
  }
  const linalg::PrimeField field{p};
  const Integer modulus(static_cast<unsigned long>(p));
  std::vector<linalg::SparseRow<std::uint64_t>> rows(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (const auto& [c, v] : m.row(i)) {
      Integer num = v.get_num() % modulus;
      Integer den = v.get_den() % modulus;
      if (num < 0) num += modulus;
      if (den == 0) {
        throw BadPrime("denominator of entry (" + std::to_string(i) + ", " + std::to_string(c) +
                       ") vanishes mod " + std::to_string(p));
      }
      const std::uint64_t x = field.divexact(num.get_ui(), den.get_ui());
      if (x != 0) rows[i].emplace_back(c, x);
    }
  }
  return linalg::rank_dispatch(std::move(rows), m.cols(), field);
}

/// rank_exact, skipping exact elimination when the modular rank already
/// attains min(rows, cols).
inline std::size_t rank_certified(const SparseRationalMatrix& m,
                                  std::uint64_t p = kLargePrime) {
  const std::size_t full = std::min(m.rows(), m.cols());
  try {
    if (rank_mod_p(m, p) == full) return full;
  } catch (const BadPrime&) {
  }
  return rank_exact(m);
}

}  // namespace l2dim
