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
 * @file io.hpp
 * @brief JSON input schemas and report serialization.
 *
 * Inputs:
 *   presentation  {"generators":["a","b"],"relators":["a b a' b'"],
 *                  "realization":{"kind":"permutation","degree":D,
 *                                 "images":{"a":[...],"b":[...]}}}
 *   family        {"kind":"abelian-grid"|"cyclic","from":M1,"to":M2}
 *                 {"kind":"explicit","members":[<realization>, ...]}
 *   graph         {"vertices":N,"edges":[[u,v],...]}
 *   cochain       {"values":["p/q",...]}  (optional "imag":[...] for complex)
 *
 * Reports use ordered keys and "p/q" strings for every exact rational so
 * that output is byte-stable.
 */
#pragma once

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "l2dim/betti.hpp"
#include "l2dim/rational.hpp"
#include "l2dim/truncation.hpp"
#include "l2dim/words.hpp"

namespace l2dim::io {

using Json = nlohmann::ordered_json;

/// Presentation plus the optional realization it was shipped with.
struct PresentationFile {
  Presentation presentation;
  std::optional<PermutationRealizationSpec> realization;
};

class RelatorParseError : public ParseError {
 public:
  RelatorParseError(const ParseError& e, std::size_t relator)
      : ParseError(std::string("relator ") + std::to_string(relator) + ": " + e.what(),
                   e.position()),
        relator_(relator) {}

  std::size_t relator() const noexcept { return relator_; }

 private:
  std::size_t relator_;
};

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("io_error", "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error("parse_error", "'" + path + "' is not valid JSON: " + e.what());
  }
}

namespace detail {

[[noreturn]] inline void schema(const std::string& message) { throw Error("schema_error", message); }

inline const Json& member(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) schema(where + " must be an object");
  auto it = j.find(key);
  if (it == j.end()) schema(where + " is missing \"" + key + "\"");
  return *it;
}

inline std::size_t natural(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    schema(where + " must be a nonnegative integer");
  }
  return j.get<std::size_t>();
}

inline Rational rational(const Json& j, const std::string& where) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(std::to_string(j.get<long long>()));
  schema(where + " must be a rational string \"p/q\"");
}

}  // namespace detail

inline PermutationRealizationSpec parse_realization(const Json& j,
                                                    const std::vector<std::string>& names) {
  const std::string where = "realization";
  if (detail::member(j, "kind", where) != "permutation") {
    detail::schema("realization kind must be \"permutation\"");
  }
  PermutationRealizationSpec spec;
  spec.degree = detail::natural(detail::member(j, "degree", where), where + ".degree");
  const Json& images = detail::member(j, "images", where);
  if (!images.is_object()) detail::schema("realization.images must be an object");
  for (const auto& [key, value] : images.items()) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      detail::schema("realization.images has unknown generator '" + key + "'");
    }
  }
  for (const std::string& name : names) {
    auto it = images.find(name);
    if (it == images.end()) detail::schema("realization.images is missing generator '" + name + "'");
    if (!it->is_array()) detail::schema("image of '" + name + "' must be an array");
    Permutation p;
    for (const Json& x : *it) {
      p.push_back(static_cast<std::uint32_t>(detail::natural(x, "image of '" + name + "'")));
    }
    if (!is_permutation(p, spec.degree)) {
      detail::schema("image of '" + name + "' is not a permutation of degree " +
                     std::to_string(spec.degree));
    }
    spec.images.push_back(std::move(p));
  }
  return spec;
}

inline PresentationFile parse_presentation(const Json& j) {
  const Json& gens = detail::member(j, "generators", "input");
  if (!gens.is_array()) detail::schema("\"generators\" must be an array of names");
  std::vector<std::string> names;
  for (const Json& g : gens) {
    if (!g.is_string()) detail::schema("generator names must be strings");
    names.push_back(g.get<std::string>());
  }

  std::vector<FreeWord> relators;
  if (auto it = j.find("relators"); it != j.end()) {
    if (!it->is_array()) detail::schema("\"relators\" must be an array of strings");
    for (std::size_t i = 0; i < it->size(); ++i) {
      if (!(*it)[i].is_string()) detail::schema("relator " + std::to_string(i) + " must be a string");
      FreeWord w;
      try {
        w = parse_word((*it)[i].get<std::string>(), names);
      } catch (const ParseError& e) {
        throw RelatorParseError(e, i);
      }
      if (w.is_identity()) {
        throw RelatorParseError(ParseError("relator reduces to the empty word", 0), i);
      }
      relators.push_back(std::move(w));
    }
  }

  PresentationFile out{Presentation(names, std::move(relators)), std::nullopt};
  if (auto it = j.find("realization"); it != j.end()) {
    out.realization = parse_realization(*it, names);
  }
  return out;
}

inline QuotientFamilySpec parse_family(const Json& j, const std::vector<std::string>& names) {
  const Json& kind = detail::member(j, "kind", "family");
  QuotientFamilySpec spec;
  if (kind == "abelian-grid" || kind == "cyclic") {
    spec.kind = kind == "cyclic" ? QuotientFamilySpec::Kind::cyclic
                                 : QuotientFamilySpec::Kind::abelian_grid;
    spec.from = detail::natural(detail::member(j, "from", "family"), "family.from");
    spec.to = detail::natural(detail::member(j, "to", "family"), "family.to");
  } else if (kind == "explicit") {
    spec.kind = QuotientFamilySpec::Kind::explicit_members;
    const Json& members = detail::member(j, "members", "family");
    if (!members.is_array()) detail::schema("family.members must be an array");
    for (const Json& m : members) spec.members.push_back(parse_realization(m, names));
  } else {
    detail::schema("unknown family kind " + kind.dump());
  }
  return spec;
}

inline Graph parse_graph(const Json& j) {
  const std::size_t n = detail::natural(detail::member(j, "vertices", "graph"), "graph.vertices");
  const Json& edges = detail::member(j, "edges", "graph");
  if (!edges.is_array()) detail::schema("graph.edges must be an array");
  std::vector<Edge> out;
  for (const Json& e : edges) {
    if (!e.is_array() || e.size() != 2) detail::schema("each edge must be a pair [u, v]");
    out.push_back({detail::natural(e[0], "edge endpoint"), detail::natural(e[1], "edge endpoint")});
  }
  return Graph(n, std::move(out));
}

inline Cochain0 parse_cochain_values(const Json& values, const std::string& where) {
  if (!values.is_array()) detail::schema(where + " must be an array");
  Cochain0 f;
  for (const Json& v : values) f.values.push_back(detail::rational(v, where));
  return f;
}

inline Cochain0 parse_cochain(const Json& j) {
  return parse_cochain_values(detail::member(j, "values", "cochain"), "cochain.values");
}

inline std::string rational_string(const Rational& q) { return to_fraction_string(q); }

inline Json report_json(const BettiReport& r) {
  Json j;
  j["order"] = r.order;
  j["generators"] = r.generator_count;
  j["relators"] = r.relator_count;
  j["rank_d1"] = r.rank_d1;
  j["rank_d2"] = r.rank_d2;
  j["dim_ker_d1"] = r.dim_ker_d1;
  j["beta0"] = rational_string(r.beta0);
  j["beta1"] = rational_string(r.beta1);
  j["delta2"] = rational_string(r.delta2);
  j["delta2_alt"] = rational_string(r.delta2_alt);
  j["consistent"] = r.consistent;
  return j;
}

/// Structured error record; parse errors carry a position, relator failures
/// the relator index.
inline Json error_json(const std::string& kind, const std::string& message,
                       std::optional<std::size_t> position = std::nullopt,
                       std::optional<std::size_t> relator = std::nullopt) {
  Json e;
  e["kind"] = kind;
  e["message"] = message;
  if (position) e["position"] = *position;
  if (relator) e["relator"] = *relator;
  return e;
}

inline Json error_json(const Error& err) {
  std::optional<std::size_t> position, relator;
  if (const auto* p = dynamic_cast<const ParseError*>(&err)) position = p->position();
  if (const auto* r = dynamic_cast<const RelatorParseError*>(&err)) relator = r->relator();
  if (const auto* r = dynamic_cast<const RelatorNotSatisfied*>(&err)) relator = r->relator_index();
  return error_json(err.kind(), err.what(), position, relator);
}

inline Json family_json(const QuotientFamilySpec& f) {
  Json j;
  switch (f.kind) {
    case QuotientFamilySpec::Kind::abelian_grid:
    case QuotientFamilySpec::Kind::cyclic:
      j["kind"] = f.kind == QuotientFamilySpec::Kind::cyclic ? "cyclic" : "abelian-grid";
      j["from"] = f.from;
      j["to"] = f.to;
      break;
    case QuotientFamilySpec::Kind::explicit_members:
      j["kind"] = "explicit";
      j["members"] = f.members.size();
      break;
  }
  return j;
}

inline Json sweep_json(const SweepResult& result) {
  Json members = Json::array();
  for (const SweepEntry& e : result.entries) {
    Json m;
    m["parameter"] = e.parameter;
    if (e.report) m["report"] = report_json(*e.report);
    if (e.error) m["error"] = error_json(e.error->kind, e.error->message);
    members.push_back(std::move(m));
  }
  return members;
}

/// order,beta0,beta1,delta2 with 12 significant digits, successful members
/// only.
inline std::string sweep_csv(const SweepResult& result) {
  std::ostringstream out;
  out << "order,beta0,beta1,delta2\n";
  for (const SweepEntry& e : result.entries) {
    if (!e.report) continue;
    out << e.report->order << ',' << to_decimal_string(e.report->beta0) << ','
        << to_decimal_string(e.report->beta1) << ',' << to_decimal_string(e.report->delta2)
        << '\n';
  }
  return out.str();
}

}  // namespace l2dim::io
