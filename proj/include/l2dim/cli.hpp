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
 * @file cli.hpp
 * @brief The compute / sweep / truncate commands as functions returning a
 * JSON document and an exit code. tools/l2dim.cpp only parses flags and
 * writes files.
 */
#pragma once

#include <cstddef>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>

#include "l2dim/betti.hpp"
#include "l2dim/io.hpp"
#include "l2dim/truncation.hpp"

namespace l2dim::cli {

using io::Json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 2;

struct CommandOutcome {
  Json document;
  int exit_code = kExitOk;
  std::optional<std::string> csv;
};

/// L2DIM_ORDER_CAP if set to a positive integer, else the library default.
inline std::size_t order_cap_from_env() {
  if (const char* env = std::getenv("L2DIM_ORDER_CAP")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefaultOrderCap;
}

inline CommandOutcome failure(const std::string& command, Json error) {
  Json doc;
  doc["command"] = command;
  doc["error"] = std::move(error);
  return {std::move(doc), kExitError, std::nullopt};
}

template <class Body>
CommandOutcome guarded(const std::string& command, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return failure(command, io::error_json(e));
  } catch (const Json::exception& e) {
    return failure(command, io::error_json("schema_error", e.what()));
  }
}

struct ComputeOptions {
  std::string input;
  bool exhaust = false;
  std::size_t order_cap = kDefaultOrderCap;
};

inline CommandOutcome run_compute(const ComputeOptions& opt) {
  return guarded("compute", [&] {
    const io::PresentationFile in = io::parse_presentation(io::load_json(opt.input));
    if (!in.realization) throw Error("schema_error", "input is missing \"realization\"");
    FiniteGroupRealization q = realize(in.realization->images, in.realization->degree, opt.order_cap);

    Json doc;
    doc["command"] = "compute";
    doc["generators"] = in.presentation.generator_names();
    Json relators = Json::array();
    for (const FreeWord& r : in.presentation.relators()) {
      relators.push_back(render_word(r, in.presentation.generator_names()));
    }
    doc["relators"] = std::move(relators);
    doc["report"] = io::report_json(betti_invariants(build_complex(q, in.presentation)));
    if (opt.exhaust) {
      Json rows = Json::array();
      std::size_t j = 0;
      for (const BettiReport& r : betti1_exhaustion_series(q, in.presentation)) {
        Json row;
        row["j"] = j++;
        row.update(io::report_json(r));
        rows.push_back(std::move(row));
      }
      doc["exhaustion"] = std::move(rows);
    }
    return CommandOutcome{std::move(doc), kExitOk, std::nullopt};
  });
}

struct SweepCommandOptions {
  std::string input;
  std::string family;  // "abelian-grid" | "cyclic"; ignored with family_file
  std::size_t from = 0;
  std::size_t to = 0;
  std::optional<std::string> family_file;
  bool csv = false;
  std::size_t jobs = 1;
  std::size_t order_cap = kDefaultOrderCap;
};

inline CommandOutcome run_sweep(const SweepCommandOptions& opt) {
  return guarded("sweep", [&] {
    const io::PresentationFile in = io::parse_presentation(io::load_json(opt.input));
    const auto& names = in.presentation.generator_names();
    QuotientFamilySpec family;
    if (opt.family_file) {
      family = io::parse_family(io::load_json(*opt.family_file), names);
    } else {
      Json f;
      f["kind"] = opt.family;
      f["from"] = opt.from;
      f["to"] = opt.to;
      family = io::parse_family(f, names);
    }
    if (family.kind != QuotientFamilySpec::Kind::explicit_members && family.from > family.to) {
      throw Error("empty_range", "empty family range " + std::to_string(family.from) + ".." +
                                     std::to_string(family.to));
    }
    const SweepResult result = sweep_quotients(in.presentation, family, {opt.jobs, opt.order_cap});

    Json doc;
    doc["command"] = "sweep";
    doc["generators"] = names;
    Json relators = Json::array();
    for (const FreeWord& r : in.presentation.relators()) relators.push_back(render_word(r, names));
    doc["relators"] = std::move(relators);
    doc["family"] = io::family_json(family);
    doc["approximation"] = true;
    doc["complete"] = result.complete;
    doc["members"] = io::sweep_json(result);

    bool any_ok = false;
    for (const SweepEntry& e : result.entries) any_ok = any_ok || e.report.has_value();
    return CommandOutcome{std::move(doc), any_ok ? kExitOk : kExitError,
                          opt.csv ? std::optional(io::sweep_csv(result)) : std::nullopt};
  });
}

struct TruncateOptions {
  std::string graph;
  std::string function;
  double p = 2;
  double epsilon = 0.1;
};

inline CommandOutcome run_truncate(const TruncateOptions& opt) {
  return guarded("truncate", [&] {
    const Graph g = io::parse_graph(io::load_json(opt.graph));
    const Json fj = io::load_json(opt.function);
    const Cochain0 f = io::parse_cochain(fj);

    Json doc;
    doc["command"] = "truncate";
    doc["vertices"] = g.vertex_count();
    doc["edges"] = g.edge_count();
    doc["p"] = opt.p;
    doc["epsilon"] = opt.epsilon;
    if (auto im = fj.find("imag"); im != fj.end()) {
      const Cochain0 fi = io::parse_cochain_values(*im, "cochain.imag");
      const ComplexApproximation a = approximate_bounded_complex(g, f, fi, opt.p, opt.epsilon);
      doc["t"] = io::rational_string(a.real.t);
      doc["t_imag"] = io::rational_string(a.imag.t);
      doc["certified_deficit"] = a.certified_deficit;
      doc["sup_norm_truncated"] = io::rational_string(sup_norm(a.real.bounded));
      doc["sup_norm_truncated_imag"] = io::rational_string(sup_norm(a.imag.bounded));
      doc["boundary_edge_count"] = a.real.boundary_edge_count;
      doc["boundary_edge_count_imag"] = a.imag.boundary_edge_count;
    } else {
      const Approximation a = approximate_bounded(g, f, opt.p, opt.epsilon);
      doc["t"] = io::rational_string(a.t);
      doc["certified_deficit"] = a.certified_deficit;
      doc["sup_norm_truncated"] = io::rational_string(sup_norm(a.bounded));
      doc["boundary_edge_count"] = a.boundary_edge_count;
    }
    return CommandOutcome{std::move(doc), kExitOk, std::nullopt};
  });
}

/// Canonical serialization used for every report file.
inline std::string render(const Json& doc) { return doc.dump(2) + "\n"; }

}  // namespace l2dim::cli
