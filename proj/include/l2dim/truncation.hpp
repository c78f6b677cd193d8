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
 * @file truncation.hpp
 * @brief Approximating lp-summable coboundaries by coboundaries of bounded
 * 0-cochains on a graph.
 *
 * For a 0-cochain f and t >= 0, the truncation f_t clamps f to [-t, t].
 * With U_t = f^-1([-t, t]) and dU_t the edges whose endpoints all lie in
 * U_t:
 *   - |df_t(e)| <= |df(e)| on every edge,
 *   - df - df_t vanishes on dU_t,
 *   - |df(e) - df_t(e)| is nonincreasing in t.
 * So ||df - df_t||_p is nonincreasing in t and reaches 0 at t = max|f|; the
 * smallest breakpoint t in {0} U {|f(x)|} with deficit below epsilon is the
 * returned approximation.
 *
 * Cochain values are exact rationals; only the p-norms are evaluated in
 * double precision (absolute tolerance 1e-9).
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "l2dim/rational.hpp"

namespace l2dim {

/// Absolute tolerance documented for floating-point p-norms.
inline constexpr double kNormTolerance = 1e-9;

struct Edge {
  std::size_t source = 0;
  std::size_t target = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Finite graph with oriented edges; parallel edges and self-loops allowed.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), edges_(std::move(edges)) {
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      if (edges_[e].source >= vertex_count_ || edges_[e].target >= vertex_count_) {
        throw Error("schema_error", "edge " + std::to_string(e) + " has an endpoint out of range");
      }
    }
  }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

/// Vertex-indexed values.
struct Cochain0 {
  std::vector<Rational> values;
  friend bool operator==(const Cochain0&, const Cochain0&) = default;
};

/// Edge-indexed values.
struct Cochain1 {
  std::vector<Rational> values;
  friend bool operator==(const Cochain1&, const Cochain1&) = default;
};

namespace detail {

inline void require_cochain(const Graph& g, const Cochain0& f) {
  if (f.values.size() != g.vertex_count()) {
    throw Error("schema_error", "cochain has " + std::to_string(f.values.size()) +
                                    " values for " + std::to_string(g.vertex_count()) +
                                    " vertices");
  }
}

inline void require_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw Error("invalid_argument", "p must be a finite real >= 1");
  }
}

}  // namespace detail

/// (df)(u, v) = f(v) - f(u).
inline Cochain1 coboundary(const Graph& g, const Cochain0& f) {
  detail::require_cochain(g, f);
  Cochain1 out;
  out.values.reserve(g.edge_count());
  for (const Edge& e : g.edges()) out.values.push_back(f.values[e.target] - f.values[e.source]);
  return out;
}

/// Clamp every value to [-t, t].
inline Cochain0 truncate(const Cochain0& f, const Rational& t) {
  if (t < 0) throw Error("invalid_argument", "truncation level must be nonnegative");
  Cochain0 out;
  out.values.reserve(f.values.size());
  for (const Rational& v : f.values) {
    if (v < -t) {
      out.values.push_back(-t);
    } else if (v > t) {
      out.values.push_back(t);
    } else {
      out.values.push_back(v);
    }
  }
  return out;
}

inline Rational sup_norm(const Cochain0& f) {
  Rational m = 0;
  for (const Rational& v : f.values) m = std::max(m, abs_value(v));
  return m;
}

/// Indicator of U_t = f^-1([-t, t]).
inline std::vector<bool> sublevel_set(const Cochain0& f, const Rational& t) {
  std::vector<bool> in(f.values.size());
  for (std::size_t x = 0; x < f.values.size(); ++x) in[x] = abs_value(f.values[x]) <= t;
  return in;
}

/// Edges of dU_t: both endpoints in U_t.
inline std::vector<std::size_t> interior_edges(const Graph& g, const Cochain0& f,
                                               const Rational& t) {
  detail::require_cochain(g, f);
  const auto in = sublevel_set(f, t);
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    if (in[g.edge(e).source] && in[g.edge(e).target]) out.push_back(e);
  }
  return out;
}

/// (sum |c_e|^p)^(1/p).
inline double lp_norm(const Cochain1& c, double p) {
  detail::require_exponent(p);
  double sum = 0;
  for (const Rational& v : c.values) {
    if (v != 0) sum += std::pow(std::abs(v.get_d()), p);
  }
  return std::pow(sum, 1.0 / p);
}

struct Deficit {
  double deficit = 0;                      // ||df - df_t||_p
  std::vector<std::size_t> boundary_edges;  // edges outside dU_t, ascending
};

/// ||df - df_t||_p together with the complement of dU_t, which contains the
/// support of df - df_t.
inline Deficit lp_deficit(const Graph& g, const Cochain0& f, const Rational& t, double p) {
  detail::require_cochain(g, f);
  detail::require_exponent(p);
  const Cochain1 df = coboundary(g, f);
  const Cochain1 dft = coboundary(g, truncate(f, t));
  const auto in = sublevel_set(f, t);
  Deficit out;
  Cochain1 diff;
  diff.values.reserve(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    diff.values.push_back(df.values[e] - dft.values[e]);
    if (!in[g.edge(e).source] || !in[g.edge(e).target]) out.boundary_edges.push_back(e);
  }
  out.deficit = lp_norm(diff, p);
  return out;
}

/// Distinct values of {0} U {|f(x)|}, ascending.
inline std::vector<Rational> truncation_breakpoints(const Cochain0& f) {
  std::set<Rational> levels{Rational(0)};
  for (const Rational& v : f.values) levels.insert(abs_value(v));
  return {levels.begin(), levels.end()};
}

struct Approximation {
  Rational t;
  Cochain0 bounded;  // truncate(f, t)
  double certified_deficit = 0;
  std::size_t boundary_edge_count = 0;
};

/// Smallest breakpoint t with ||df - df_t||_p < epsilon, scanning the
/// breakpoints upwards.
inline Approximation approximate_bounded(const Graph& g, const Cochain0& f, double p,
                                         double epsilon) {
  detail::require_cochain(g, f);
  detail::require_exponent(p);
  if (!(epsilon > 0)) throw Error("invalid_argument", "epsilon must be positive");

  // The last breakpoint is max|f|, where the deficit is exactly 0.
  for (const Rational& t : truncation_breakpoints(f)) {
    Deficit d = lp_deficit(g, f, t, p);
    if (d.deficit < epsilon) return {t, truncate(f, t), d.deficit, d.boundary_edges.size()};
  }
  throw std::logic_error("no breakpoint reached zero deficit");
}

struct ComplexApproximation {
  Approximation real;
  Approximation imag;
  double certified_deficit = 0;  // complex lp norm of d(f - g)
};

/// Complex-valued f = re + i im: each part is approximated to epsilon / 2,
/// and the combined deficit is then measured directly.
inline ComplexApproximation approximate_bounded_complex(const Graph& g, const Cochain0& re,
                                                        const Cochain0& im, double p,
                                                        double epsilon) {
  ComplexApproximation out{approximate_bounded(g, re, p, epsilon / 2),
                           approximate_bounded(g, im, p, epsilon / 2), 0};
  const Cochain1 dre = coboundary(g, re), dim = coboundary(g, im);
  const Cochain1 gre = coboundary(g, out.real.bounded), gim = coboundary(g, out.imag.bounded);
  double sum = 0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const double a = Rational(dre.values[e] - gre.values[e]).get_d();
    const double b = Rational(dim.values[e] - gim.values[e]).get_d();
    sum += std::pow(std::hypot(a, b), p);
  }
  out.certified_deficit = std::pow(sum, 1.0 / p);
  return out;
}

}  // namespace l2dim
