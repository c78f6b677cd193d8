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

#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "l2dim/rational.hpp"

namespace l2dim {

/// Row-major sparse matrix over Q. Only nonzero entries are stored; each row
/// is a column-ordered map.
class SparseRationalMatrix {
 public:
  using Row = std::map<std::size_t, Rational>;

  SparseRationalMatrix() = default;
  SparseRationalMatrix(std::size_t rows, std::size_t cols) : cols_(cols), data_(rows) {}

  std::size_t rows() const { return data_.size(); }
  std::size_t cols() const { return cols_; }

  const Row& row(std::size_t i) const { return data_.at(i); }

  Rational at(std::size_t i, std::size_t j) const {
    check(i, j);
    auto it = data_[i].find(j);
    return it == data_[i].end() ? Rational(0) : it->second;
  }

  void add(std::size_t i, std::size_t j, const Rational& v) {
    check(i, j);
    if (v == 0) return;
    auto [it, inserted] = data_[i].try_emplace(j, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) data_[i].erase(it);
    }
  }

  void set(std::size_t i, std::size_t j, const Rational& v) {
    check(i, j);
    if (v == 0) {
      data_[i].erase(j);
    } else {
      data_[i][j] = v;
    }
  }

  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const Row& r : data_) n += r.size();
    return n;
  }

  bool is_zero() const { return nonzeros() == 0; }

  SparseRationalMatrix transpose() const {
    SparseRationalMatrix t(cols_, rows());
    for (std::size_t i = 0; i < rows(); ++i) {
      for (const auto& [j, v] : data_[i]) t.data_[j].emplace(i, v);
    }
    return t;
  }

  friend SparseRationalMatrix operator*(const SparseRationalMatrix& a,
                                        const SparseRationalMatrix& b) {
    if (a.cols() != b.rows()) {
      throw std::invalid_argument("matrix product: inner dimensions differ");
    }
    SparseRationalMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (const auto& [k, av] : a.data_[i]) {
        for (const auto& [j, bv] : b.data_[k]) out.add(i, j, av * bv);
      }
    }
    return out;
  }

  friend bool operator==(const SparseRationalMatrix&, const SparseRationalMatrix&) = default;

 private:
  void check(std::size_t i, std::size_t j) const {
    if (i >= rows() || j >= cols_) {
      throw std::out_of_range("matrix index (" + std::to_string(i) + ", " + std::to_string(j) +
                              ") out of range");
    }
  }

  std::size_t cols_ = 0;
  std::vector<Row> data_;
};

}  // namespace l2dim
