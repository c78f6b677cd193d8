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
 * @file realization.hpp
 * @brief Finite groups generated by permutations, enumerated as the regular
 * right action on their own elements.
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "l2dim/rational.hpp"
#include "l2dim/words.hpp"

namespace l2dim {

/// image[i] is where point i goes.
using Permutation = std::vector<std::uint32_t>;

inline constexpr std::size_t kDefaultOrderCap = 100000;

class OrderCapExceeded : public Error {
 public:
  explicit OrderCapExceeded(std::size_t cap)
      : Error("order_cap_exceeded",
              "generated group order exceeds the cap of " + std::to_string(cap)),
        cap_(cap) {}

  std::size_t cap() const noexcept { return cap_; }

 private:
  std::size_t cap_;
};

inline bool is_permutation(std::span<const std::uint32_t> image, std::size_t degree) {
  if (image.size() != degree) return false;
  std::vector<bool> seen(degree, false);
  for (std::uint32_t x : image) {
    if (x >= degree || seen[x]) return false;
    seen[x] = true;
  }
  return true;
}

namespace detail {

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t x : p) {
      h ^= x;
      h *= 0x100000001b3ull;
    }
    return h;
  }
};

// (x * g)[i] = g[x[i]]: apply x first, then g.
inline Permutation compose(const Permutation& x, const Permutation& g) {
  Permutation out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = g[x[i]];
  return out;
}

inline Permutation invert(const Permutation& g) {
  Permutation out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[g[i]] = static_cast<std::uint32_t>(i);
  return out;
}

}  // namespace detail

/// An enumerated finite group Q together with the images of the free
/// generators. Element i is represented by the witness word element_word(i);
/// right_action(j)[x] is the index of x * g_j.
class FiniteGroupRealization {
 public:
  std::size_t order() const { return words_.size(); }
  std::size_t generator_count() const { return action_.size(); }
  std::size_t identity_index() const { return 0; }

  const FreeWord& element_word(std::size_t x) const { return words_.at(x); }
  std::span<const std::uint32_t> right_action(std::size_t j) const { return action_.at(j); }
  std::span<const std::uint32_t> inverse_action(std::size_t j) const {
    return inverse_action_.at(j);
  }

  /// Index of x * w, walking w letter by letter from x.
  std::size_t act(std::size_t x, const FreeWord& w) const {
    for (const Letter& l : w.letters()) {
      x = l.exponent > 0 ? action_[l.generator][x] : inverse_action_[l.generator][x];
    }
    return x;
  }

  std::size_t multiply(std::size_t x, std::size_t y) const { return act(x, words_[y]); }

  friend FiniteGroupRealization realize(std::span<const Permutation> images, std::size_t degree,
                                        std::size_t order_cap);

 private:
  std::vector<FreeWord> words_;
  std::vector<std::vector<std::uint32_t>> action_;
  std::vector<std::vector<std::uint32_t>> inverse_action_;
};

/// Breadth-first closure of the group generated by `images` inside
/// Sym(degree). Neighbours are visited as x*g_0, x*g_0^-1, x*g_1, ... so the
/// element numbering is fully determined by the input order.
inline FiniteGroupRealization realize(std::span<const Permutation> images, std::size_t degree,
                                      std::size_t order_cap = kDefaultOrderCap) {
  for (std::size_t j = 0; j < images.size(); ++j) {
    if (!is_permutation(images[j], degree)) {
      throw Error("schema_error", "image of generator " + std::to_string(j) +
                                      " is not a permutation of degree " +
                                      std::to_string(degree));
    }
  }

  const std::size_t n = images.size();
  std::vector<Permutation> steps;  // g_0, g_0^-1, g_1, g_1^-1, ...
  std::vector<Letter> step_letters;
  for (std::size_t j = 0; j < n; ++j) {
    steps.push_back(images[j]);
    step_letters.push_back({static_cast<std::uint32_t>(j), 1});
    steps.push_back(detail::invert(images[j]));
    step_letters.push_back({static_cast<std::uint32_t>(j), -1});
  }

  Permutation identity(degree);
  for (std::size_t i = 0; i < degree; ++i) identity[i] = static_cast<std::uint32_t>(i);

  std::vector<Permutation> elements{identity};
  std::unordered_map<Permutation, std::uint32_t, detail::PermutationHash> index{{identity, 0}};
  FiniteGroupRealization r;
  r.words_.emplace_back();
  std::vector<std::vector<std::uint32_t>> step_table(steps.size());

  for (std::size_t head = 0; head < elements.size(); ++head) {
    for (std::size_t s = 0; s < steps.size(); ++s) {
      Permutation next = detail::compose(elements[head], steps[s]);
      auto [it, inserted] = index.try_emplace(next, static_cast<std::uint32_t>(elements.size()));
      if (inserted) {
        if (elements.size() >= order_cap) throw OrderCapExceeded(order_cap);
        r.words_.push_back(r.words_[head] * FreeWord{step_letters[s]});
        elements.push_back(std::move(next));
      }
      step_table[s].push_back(it->second);
    }
  }

  r.action_.resize(n);
  r.inverse_action_.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    r.action_[j] = std::move(step_table[2 * j]);
    r.inverse_action_[j] = std::move(step_table[2 * j + 1]);
  }
  return r;
}

/// Image of w in Q.
inline std::size_t evaluate_word(const FiniteGroupRealization& r, const FreeWord& w) {
  return r.act(r.identity_index(), w);
}

using GroupRingElement = std::map<std::size_t, Rational>;

/// Linear extension of evaluate_word to Q[F] -> Q[Q]; zero coefficients are
/// dropped.
inline GroupRingElement push_to_quotient(const FreeRingElement& x,
                                         const FiniteGroupRealization& r) {
  GroupRingElement out;
  for (const auto& [w, c] : x.terms()) {
    auto [it, inserted] = out.try_emplace(evaluate_word(r, w), c);
    if (!inserted) it->second += c;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Product in the group ring Q[Q].
inline GroupRingElement multiply(const GroupRingElement& a, const GroupRingElement& b,
                                 const FiniteGroupRealization& r) {
  GroupRingElement out;
  for (const auto& [x, cx] : a) {
    for (const auto& [y, cy] : b) out[r.multiply(x, y)] += cx * cy;
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace l2dim
