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
 * @file betti.hpp
 * @brief First two l2-Betti numbers and delta2 = beta1 - beta0 + 1 of a
 * Cayley 2-complex over a finite group Q.
 *
 * Dimensions are normalized by |Q|, which is the von Neumann dimension over
 * the group algebra of a finite group:
 *
 *   beta0  = 1 - rank(d1) / |Q|
 *   beta1  = (dim ker d1 - rank(d2)) / |Q|,  dim ker d1 = n |Q| - rank(d1)
 *   delta2 = beta1 - beta0 + 1
 *
 * and independently delta2_alt = n - rank(d2) / |Q|. The two agree on every
 * complex; a report with consistent == false indicates a bug.
 *
 * For an infinite presented group the sweep over finite quotients yields an
 * approximating sequence only; nothing here certifies a limit.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "l2dim/cayley_complex.hpp"
#include "l2dim/linalg.hpp"
#include "l2dim/realization.hpp"

namespace l2dim {

struct BettiReport {
  std::size_t order = 0;
  std::size_t generator_count = 0;
  std::size_t relator_count = 0;  // active relators
  std::size_t rank_d1 = 0;
  std::size_t rank_d2 = 0;
  std::size_t dim_ker_d1 = 0;
  Rational beta0;
  Rational beta1;
  Rational delta2;
  Rational delta2_alt;
  bool consistent = false;

  friend bool operator==(const BettiReport&, const BettiReport&) = default;
};

inline BettiReport betti_invariants(const CayleyComplex& c) {
  BettiReport r;
  r.order = c.vertex_count();
  r.generator_count = c.generator_count();
  r.relator_count = c.active_relators().size();
  r.rank_d1 = rank_exact(boundary1(c));
  r.rank_d2 = rank_exact(boundary2(c, BoundaryMode::path));
  r.dim_ker_d1 = c.edge_count() - r.rank_d1;

  const Rational q(static_cast<unsigned long>(r.order));
  const auto as_q = [](std::size_t v) { return Rational(static_cast<unsigned long>(v)); };
  r.beta0 = 1 - as_q(r.rank_d1) / q;
  r.beta1 = (as_q(r.dim_ker_d1) - as_q(r.rank_d2)) / q;
  r.delta2 = r.beta1 - r.beta0 + 1;
  r.delta2_alt = as_q(r.generator_count) - as_q(r.rank_d2) / q;
  r.beta0.canonicalize();
  r.beta1.canonicalize();
  r.delta2.canonicalize();
  r.delta2_alt.canonicalize();
  r.consistent = r.delta2 == r.delta2_alt;
  return r;
}

/// Report over the subcomplex glued from the first `j` relators only.
inline BettiReport betti1_exhaustion(const FiniteGroupRealization& r, const Presentation& p,
                                     std::size_t j) {
  if (j > p.relator_count()) {
    throw Error("invalid_argument", "exhaustion index " + std::to_string(j) + " exceeds the " +
                                        std::to_string(p.relator_count()) + " relators");
  }
  std::vector<std::size_t> active(j);
  std::iota(active.begin(), active.end(), std::size_t{0});
  return betti_invariants(CayleyComplex(r, p, std::move(active)));
}

/// Reports for j = 0, 1, ..., relator count.
inline std::vector<BettiReport> betti1_exhaustion_series(const FiniteGroupRealization& r,
                                                         const Presentation& p) {
  std::vector<BettiReport> out;
  for (std::size_t j = 0; j <= p.relator_count(); ++j) out.push_back(betti1_exhaustion(r, p, j));
  return out;
}

/// Generator images of one finite quotient, in generator order.
struct PermutationRealizationSpec {
  std::size_t degree = 0;
  std::vector<Permutation> images;
};

struct QuotientFamilySpec {
  enum class Kind { abelian_grid, cyclic, explicit_members };

  Kind kind = Kind::abelian_grid;
  std::size_t from = 0;
  std::size_t to = 0;
  std::vector<PermutationRealizationSpec> members;  // explicit_members only

  std::size_t size() const {
    if (kind == Kind::explicit_members) return members.size();
    return from > to ? 0 : to - from + 1;
  }
};

/// Generator i translates by the i-th unit vector on (Z/m)^n, points encoded
/// little-endian in base m.
inline PermutationRealizationSpec abelian_grid_member(std::size_t m, std::size_t n) {
  std::size_t degree = 1;
  for (std::size_t i = 0; i < n; ++i) degree *= m;
  PermutationRealizationSpec spec{degree, {}};
  std::size_t stride = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Permutation image(degree);
    for (std::size_t x = 0; x < degree; ++x) {
      const std::size_t digit = (x / stride) % m;
      image[x] = static_cast<std::uint32_t>(x - digit * stride + ((digit + 1) % m) * stride);
    }
    spec.images.push_back(std::move(image));
    stride *= m;
  }
  return spec;
}

/// Every generator maps to the same m-cycle.
inline PermutationRealizationSpec cyclic_member(std::size_t m, std::size_t n) {
  Permutation cycle(m);
  for (std::size_t x = 0; x < m; ++x) cycle[x] = static_cast<std::uint32_t>((x + 1) % m);
  return {m, std::vector<Permutation>(n, cycle)};
}

inline PermutationRealizationSpec family_member(const QuotientFamilySpec& family, std::size_t k,
                                                std::size_t generator_count) {
  switch (family.kind) {
    case QuotientFamilySpec::Kind::abelian_grid:
      return abelian_grid_member(family.from + k, generator_count);
    case QuotientFamilySpec::Kind::cyclic:
      return cyclic_member(family.from + k, generator_count);
    case QuotientFamilySpec::Kind::explicit_members:
      return family.members.at(k);
  }
  return {};
}

struct SweepError {
  std::string kind;
  std::string message;

  friend bool operator==(const SweepError&, const SweepError&) = default;
};

struct SweepEntry {
  std::size_t parameter = 0;  // m for generated families, member index otherwise
  std::optional<BettiReport> report;
  std::optional<SweepError> error;

  friend bool operator==(const SweepEntry&, const SweepEntry&) = default;
};

struct SweepResult {
  std::vector<SweepEntry> entries;
  bool complete = true;  // false when the order cap stopped the sweep

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct SweepOptions {
  std::size_t jobs = 1;
  std::size_t order_cap = kDefaultOrderCap;
};

/// One report per family member, in family order regardless of `jobs`.
/// Members that fail carry an error record. The first member that exceeds
/// the order cap ends the sweep: it is reported, later members are dropped
/// and `complete` is cleared.
inline SweepResult sweep_quotients(const Presentation& p, const QuotientFamilySpec& family,
                                   const SweepOptions& options = {}) {
  if (family.kind != QuotientFamilySpec::Kind::explicit_members &&
      (family.from < 2 || family.from > family.to)) {
    throw Error("invalid_argument", "family range must satisfy 2 <= from <= to (got " +
                                        std::to_string(family.from) + ".." +
                                        std::to_string(family.to) + ")");
  }
  const std::size_t count = family.size();
  std::vector<SweepEntry> entries(count);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> stop_at{count};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto run_member = [&](std::size_t k) {
    SweepEntry& entry = entries[k];
    entry.parameter = family.kind == QuotientFamilySpec::Kind::explicit_members ? k : family.from + k;
    try {
      // Generated families act regularly, so the order is the degree; refuse
      // before allocating the images.
      if (family.kind != QuotientFamilySpec::Kind::explicit_members) {
        std::size_t degree = 1;
        const std::size_t m = family.from + k;
        const std::size_t factors =
            family.kind == QuotientFamilySpec::Kind::abelian_grid ? p.generator_count() : 1;
        for (std::size_t i = 0; i < factors; ++i) {
          if (degree > options.order_cap / m) throw OrderCapExceeded(options.order_cap);
          degree *= m;
        }
      }
      const PermutationRealizationSpec spec = family_member(family, k, p.generator_count());
      if (spec.images.size() != p.generator_count()) {
        throw Error("schema_error", "member " + std::to_string(k) + " has " +
                                        std::to_string(spec.images.size()) +
                                        " generator images, expected " +
                                        std::to_string(p.generator_count()));
      }
      entry.report = betti_invariants(build_complex(realize(spec.images, spec.degree, options.order_cap), p));
    } catch (const OrderCapExceeded& e) {
      entry.error = SweepError{e.kind(), e.what()};
      std::size_t cur = stop_at.load();
      while (k < cur && !stop_at.compare_exchange_weak(cur, k)) {
      }
    } catch (const Error& e) {
      entry.error = SweepError{e.kind(), e.what()};
    }
  };

  auto worker = [&] {
    try {
      for (std::size_t k = next++; k < count; k = next++) {
        if (k > stop_at.load()) continue;
        run_member(k);
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, count));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  SweepResult result;
  const std::size_t end = stop_at.load();
  result.complete = end == count;
  entries.resize(std::min(count, end + 1));
  result.entries = std::move(entries);
  return result;
}

}  // namespace l2dim
