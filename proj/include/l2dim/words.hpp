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
 * @file words.hpp
 * @brief Free-group words, finite presentations and Fox derivatives.
 *
 * Words are kept freely reduced at all times. The Fox derivative of a
 * relator r with respect to generator g_j is the element of the free group
 * ring Z[F] whose image in a finite quotient Q gives the coefficients of the
 * cellular boundary of the 2-cell glued along r.
 */
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "l2dim/rational.hpp"

namespace l2dim {

struct Letter {
  std::uint32_t generator = 0;
  std::int8_t exponent = 1;  // +1 or -1

  Letter inverse() const { return {generator, static_cast<std::int8_t>(-exponent)}; }

  friend bool operator==(const Letter&, const Letter&) = default;
  friend auto operator<=>(const Letter&, const Letter&) = default;
};

/// Cancels adjacent inverse pairs in a single stack pass.
inline std::vector<Letter> free_reduce(std::span<const Letter> letters) {
  std::vector<Letter> out;
  out.reserve(letters.size());
  for (const Letter& l : letters) {
    if (!out.empty() && out.back() == l.inverse()) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return out;
}

/// A freely reduced word. The empty word is the identity.
class FreeWord {
 public:
  FreeWord() = default;

  explicit FreeWord(std::span<const Letter> letters) : letters_(free_reduce(letters)) {}
  FreeWord(std::initializer_list<Letter> letters)
      : FreeWord(std::span<const Letter>(letters.begin(), letters.size())) {}

  static FreeWord generator(std::uint32_t j, int exponent = 1) {
    FreeWord w;
    const Letter l{j, static_cast<std::int8_t>(exponent < 0 ? -1 : 1)};
    const int count = exponent < 0 ? -exponent : exponent;
    w.letters_.assign(static_cast<std::size_t>(count), l);
    return w;
  }

  std::span<const Letter> letters() const { return letters_; }
  std::size_t length() const { return letters_.size(); }
  bool is_identity() const { return letters_.empty(); }

  FreeWord inverse() const {
    FreeWord w;
    w.letters_.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
      w.letters_.push_back(it->inverse());
    }
    return w;
  }

  /// Largest generator index used plus one (0 for the identity).
  std::uint32_t generator_bound() const {
    std::uint32_t b = 0;
    for (const Letter& l : letters_) b = std::max(b, l.generator + 1);
    return b;
  }

  friend FreeWord operator*(const FreeWord& u, const FreeWord& v) {
    FreeWord w;
    w.letters_ = u.letters_;
    std::size_t i = 0;
    while (i < v.letters_.size() && !w.letters_.empty() &&
           w.letters_.back() == v.letters_[i].inverse()) {
      w.letters_.pop_back();
      ++i;
    }
    w.letters_.insert(w.letters_.end(), v.letters_.begin() + static_cast<std::ptrdiff_t>(i),
                      v.letters_.end());
    return w;
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

  /// Shortlex order; gives deterministic iteration in FreeRingElement.
  friend std::strong_ordering operator<=>(const FreeWord& a, const FreeWord& b) {
    if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                  b.letters_.begin(), b.letters_.end());
  }

 private:
  std::vector<Letter> letters_;
};

/// Parse failure with a 0-based character offset into the parsed text.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t position)
      : Error("parse_error", message + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

inline bool is_valid_generator_name(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name[0]))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace detail {

inline std::size_t name_length(std::string_view s) {
  std::size_t n = 0;
  if (n < s.size() && std::isalpha(static_cast<unsigned char>(s[n]))) {
    ++n;
    while (n < s.size() && (std::isalnum(static_cast<unsigned char>(s[n])) || s[n] == '_')) ++n;
  }
  return n;
}

}  // namespace detail

/// Grammar: token := name | name "'" | name "^" integer, tokens separated by
/// whitespace. "^k" repeats the generator |k| times, inverted when k < 0.
inline FreeWord parse_word(std::string_view text, std::span<const std::string> generator_names) {
  std::vector<Letter> letters;
  std::size_t pos = 0;
  bool any_token = false;
  auto skip_space = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };

  skip_space();
  while (pos < text.size()) {
    const std::size_t token_start = pos;
    const std::size_t len = detail::name_length(text.substr(pos));
    if (len == 0) {
      throw ParseError("expected generator name", pos);
    }
    const std::string_view name = text.substr(pos, len);
    auto it = std::find(generator_names.begin(), generator_names.end(), name);
    if (it == generator_names.end()) {
      throw ParseError("unknown generator '" + std::string(name) + "'", token_start);
    }
    const auto gen = static_cast<std::uint32_t>(it - generator_names.begin());
    pos += len;

    long long exponent = 1;
    if (pos < text.size() && text[pos] == '\'') {
      exponent = -1;
      ++pos;
    } else if (pos < text.size() && text[pos] == '^') {
      const std::size_t exp_start = ++pos;
      if (pos < text.size() && text[pos] == '-') ++pos;
      const std::size_t digits_start = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      if (pos == digits_start || pos - digits_start > 9) {
        throw ParseError("malformed exponent", exp_start);
      }
      exponent = std::stoll(std::string(text.substr(exp_start, pos - exp_start)));
      if (exponent == 0) {
        throw ParseError("malformed exponent (must be nonzero)", exp_start);
      }
    }
    if (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) {
      throw ParseError("unexpected character '" + std::string(1, text[pos]) + "'", pos);
    }

    const Letter l{gen, static_cast<std::int8_t>(exponent < 0 ? -1 : 1)};
    for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) letters.push_back(l);
    any_token = true;
    skip_space();
  }
  if (!any_token) {
    throw ParseError("empty token", pos);
  }
  return FreeWord(letters);
}

/// Inverse of parse_word on reduced words; runs of equal letters are
/// written with "^k".
inline std::string render_word(const FreeWord& w, std::span<const std::string> generator_names) {
  std::string out;
  const auto letters = w.letters();
  for (std::size_t i = 0; i < letters.size();) {
    std::size_t run = 1;
    while (i + run < letters.size() && letters[i + run] == letters[i]) ++run;
    if (!out.empty()) out += ' ';
    out += generator_names[letters[i].generator];
    if (run > 1) {
      out += '^';
      out += std::to_string(letters[i].exponent < 0 ? -static_cast<long long>(run)
                                                    : static_cast<long long>(run));
    } else if (letters[i].exponent < 0) {
      out += '\'';
    }
    i += run;
  }
  return out;
}

/// Generator names plus non-trivial relators over them.
class Presentation {
 public:
  Presentation() = default;

  Presentation(std::vector<std::string> generator_names, std::vector<FreeWord> relators)
      : names_(std::move(generator_names)), relators_(std::move(relators)) {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!is_valid_generator_name(names_[i])) {
        throw Error("schema_error", "invalid generator name '" + names_[i] + "'");
      }
      for (std::size_t k = 0; k < i; ++k) {
        if (names_[k] == names_[i]) {
          throw Error("schema_error", "duplicate generator name '" + names_[i] + "'");
        }
      }
    }
    for (std::size_t i = 0; i < relators_.size(); ++i) {
      if (relators_[i].is_identity()) {
        throw Error("schema_error", "relator " + std::to_string(i) + " is the empty word");
      }
      if (relators_[i].generator_bound() > names_.size()) {
        throw Error("schema_error",
                    "relator " + std::to_string(i) + " uses an out-of-range generator");
      }
    }
  }

  /// Parses relator strings; a ParseError is rethrown with the relator index
  /// in its message and the position inside that relator.
  static Presentation parse(std::vector<std::string> generator_names,
                            std::span<const std::string> relator_texts) {
    std::vector<FreeWord> relators;
    for (std::size_t i = 0; i < relator_texts.size(); ++i) {
      FreeWord w;
      try {
        w = parse_word(relator_texts[i], generator_names);
      } catch (const ParseError& e) {
        throw ParseError("relator " + std::to_string(i) + ": " + e.what(), e.position());
      }
      if (w.is_identity()) {
        throw ParseError("relator " + std::to_string(i) + " reduces to the empty word", 0);
      }
      relators.push_back(std::move(w));
    }
    return Presentation(std::move(generator_names), std::move(relators));
  }

  std::size_t generator_count() const { return names_.size(); }
  std::size_t relator_count() const { return relators_.size(); }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<FreeWord>& relators() const { return relators_; }
  const FreeWord& relator(std::size_t i) const { return relators_.at(i); }

 private:
  std::vector<std::string> names_;
  std::vector<FreeWord> relators_;
};

/// Finitely supported element of the rational free group ring Q[F].
class FreeRingElement {
 public:
  using Terms = std::map<FreeWord, Rational>;

  FreeRingElement() = default;
  explicit FreeRingElement(const FreeWord& w, const Rational& c = 1) { add_term(w, c); }

  static FreeRingElement one() { return FreeRingElement(FreeWord{}); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const FreeWord& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const FreeWord& w, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }

  FreeRingElement& operator+=(const FreeRingElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
  }
  FreeRingElement& operator-=(const FreeRingElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
  }

  friend FreeRingElement operator+(FreeRingElement a, const FreeRingElement& b) { return a += b; }
  friend FreeRingElement operator-(FreeRingElement a, const FreeRingElement& b) { return a -= b; }

  friend FreeRingElement operator*(const FreeRingElement& a, const FreeRingElement& b) {
    FreeRingElement out;
    for (const auto& [u, cu] : a.terms_) {
      for (const auto& [v, cv] : b.terms_) out.add_term(u * v, cu * cv);
    }
    return out;
  }

  friend FreeRingElement operator*(const Rational& s, const FreeRingElement& a) {
    FreeRingElement out;
    for (const auto& [w, c] : a.terms_) out.add_term(w, s * c);
    return out;
  }

  friend bool operator==(const FreeRingElement&, const FreeRingElement&) = default;

 private:
  Terms terms_;
};

/// Fox derivative d(w)/d(g_j): for each occurrence of g_j in w with prefix u,
/// contributes +u; for each occurrence of g_j^-1, contributes -u g_j^-1.
inline FreeRingElement fox_derivative(const FreeWord& w, std::uint32_t j) {
  FreeRingElement out;
  std::vector<Letter> prefix;
  prefix.reserve(w.length());
  for (const Letter& l : w.letters()) {
    if (l.generator == j && l.exponent > 0) out.add_term(FreeWord(prefix), 1);
    prefix.push_back(l);
    if (l.generator == j && l.exponent < 0) out.add_term(FreeWord(prefix), -1);
  }
  return out;
}

}  // namespace l2dim
