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
 * @file cayley_complex.hpp
 * @brief Cayley 2-complex of a finite realization of a presentation.
 *
 * Cells, for Q the realization and g_j / r_i the generators / active relators:
 *   vertex x                      index x
 *   edge   (x, j): x -> x g_j     index x * n + j
 *   face   (x, i): r_i based at x index x * k + i   (k active relators)
 *
 * Boundary matrices are stored with one row per cell of the higher
 * dimension: boundary1 is edges x vertices and boundary2 is faces x edges,
 * so the chain condition reads boundary2 * boundary1 == 0.
 */
#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "l2dim/realization.hpp"
#include "l2dim/sparse_matrix.hpp"
#include "l2dim/words.hpp"

namespace l2dim {

class RelatorNotSatisfied : public Error {
 public:
  explicit RelatorNotSatisfied(std::size_t index)
      : Error("relator_not_satisfied",
              "relator " + std::to_string(index) + " does not evaluate to the identity"),
        index_(index) {}

  std::size_t relator_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

enum class BoundaryMode { path, fox };

class CayleyComplex {
 public:
  /// Throws RelatorNotSatisfied for the first active relator that is not a
  /// loop in the Cayley graph of `realization`.
  CayleyComplex(FiniteGroupRealization realization, Presentation presentation,
                std::vector<std::size_t> active_relators)
      : realization_(std::move(realization)),
        presentation_(std::move(presentation)),
        active_(std::move(active_relators)) {
    if (realization_.generator_count() != presentation_.generator_count()) {
      throw Error("schema_error", "realization has " +
                                      std::to_string(realization_.generator_count()) +
                                      " generator images, presentation has " +
                                      std::to_string(presentation_.generator_count()));
    }
    for (std::size_t i : active_) {
      if (i >= presentation_.relator_count()) {
        throw Error("schema_error", "active relator index " + std::to_string(i) + " out of range");
      }
      if (evaluate_word(realization_, presentation_.relator(i)) != realization_.identity_index()) {
        throw RelatorNotSatisfied(i);
      }
    }
  }

  const FiniteGroupRealization& realization() const { return realization_; }
  const Presentation& presentation() const { return presentation_; }
  const std::vector<std::size_t>& active_relators() const { return active_; }

  std::size_t vertex_count() const { return realization_.order(); }
  std::size_t generator_count() const { return presentation_.generator_count(); }
  std::size_t edge_count() const { return vertex_count() * generator_count(); }
  std::size_t face_count() const { return vertex_count() * active_.size(); }

  std::size_t edge_index(std::size_t x, std::size_t j) const { return x * generator_count() + j; }
  std::size_t face_index(std::size_t x, std::size_t i) const { return x * active_.size() + i; }

 private:
  FiniteGroupRealization realization_;
  Presentation presentation_;
  std::vector<std::size_t> active_;
};

/// Complex over every relator of `p`.
inline CayleyComplex build_complex(FiniteGroupRealization r, Presentation p) {
  std::vector<std::size_t> all(p.relator_count());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return CayleyComplex(std::move(r), std::move(p), std::move(all));
}

inline CayleyComplex build_complex(FiniteGroupRealization r, Presentation p,
                                   std::vector<std::size_t> active) {
  return CayleyComplex(std::move(r), std::move(p), std::move(active));
}

/// Row for edge (x, j): +1 at x g_j, -1 at x. A self-loop gives a zero row.
inline SparseRationalMatrix boundary1(const CayleyComplex& c) {
  SparseRationalMatrix m(c.edge_count(), c.vertex_count());
  const auto& q = c.realization();
  for (std::size_t x = 0; x < c.vertex_count(); ++x) {
    for (std::size_t j = 0; j < c.generator_count(); ++j) {
      const std::size_t e = c.edge_index(x, j);
      m.add(e, q.right_action(j)[x], 1);
      m.add(e, x, -1);
    }
  }
  return m;
}

namespace detail {

// Walk r_i from x: a positive letter g_j crosses edge (pos, j) forwards, a
// negative letter crosses edge (pos g_j^-1, j) backwards.
inline SparseRationalMatrix boundary2_path(const CayleyComplex& c) {
  SparseRationalMatrix m(c.face_count(), c.edge_count());
  const auto& q = c.realization();
  const auto& active = c.active_relators();
  for (std::size_t x = 0; x < c.vertex_count(); ++x) {
    for (std::size_t i = 0; i < active.size(); ++i) {
      const std::size_t f = c.face_index(x, i);
      std::size_t pos = x;
      for (const Letter& l : c.presentation().relator(active[i]).letters()) {
        if (l.exponent > 0) {
          m.add(f, c.edge_index(pos, l.generator), 1);
          pos = q.right_action(l.generator)[pos];
        } else {
          pos = q.inverse_action(l.generator)[pos];
          m.add(f, c.edge_index(pos, l.generator), -1);
        }
      }
    }
  }
  return m;
}

// Row of face (x, i) carries the coefficient of y in the image of
// d r_i / d g_j at edge (x y, j).
inline SparseRationalMatrix boundary2_fox(const CayleyComplex& c) {
  SparseRationalMatrix m(c.face_count(), c.edge_count());
  const auto& q = c.realization();
  const auto& active = c.active_relators();
  std::vector<std::vector<GroupRingElement>> jacobian(active.size());
  for (std::size_t i = 0; i < active.size(); ++i) {
    for (std::size_t j = 0; j < c.generator_count(); ++j) {
      jacobian[i].push_back(push_to_quotient(
          fox_derivative(c.presentation().relator(active[i]), static_cast<std::uint32_t>(j)), q));
    }
  }
  for (std::size_t x = 0; x < c.vertex_count(); ++x) {
    for (std::size_t i = 0; i < active.size(); ++i) {
      const std::size_t f = c.face_index(x, i);
      for (std::size_t j = 0; j < c.generator_count(); ++j) {
        for (const auto& [y, coef] : jacobian[i][j]) {
          m.add(f, c.edge_index(q.multiply(x, y), j), coef);
        }
      }
    }
  }
  return m;
}

}  // namespace detail

inline SparseRationalMatrix boundary2(const CayleyComplex& c,
                                      BoundaryMode mode = BoundaryMode::path) {
  return mode == BoundaryMode::path ? detail::boundary2_path(c) : detail::boundary2_fox(c);
}

}  // namespace l2dim
