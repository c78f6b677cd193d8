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

// End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
// exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "l2dim/cli.hpp"
#include "l2dim/l2dim.hpp"
#include "test_support.hpp"
#include "truncation_oracle.hpp"

namespace {

using namespace l2dim;
using Clock = std::chrono::steady_clock;

// Pinned limits.
constexpr double kCyclicSecondsPerGroup = 1.0;
constexpr double kTruncationSuiteSeconds = 60.0;
constexpr double kHarmonicEpsilon = 0.1;
constexpr double kHarmonicP = 2.0;
constexpr std::size_t kHarmonicVertices = 101;  // path 0..100
constexpr int kRandomPresentations = 100;
constexpr int kRandomGraphs = 1000;
constexpr std::size_t kMaxGraphVertices = 50;
constexpr std::size_t kMaxRelatorLength = 12;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Failure messages collected by one criterion.
struct Check {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

std::string str(const Rational& q) { return to_fraction_string(q); }

Rational ratio(std::size_t a, std::size_t b) {
  return Rational(static_cast<unsigned long>(a)) / Rational(static_cast<unsigned long>(b));
}

// Every report produced by criteria 1-5, fed to the identity check.
std::vector<BettiReport> g_reports;

bool identity_holds(const BettiReport& r) {
  const Rational lhs = r.beta1 - r.beta0 + 1;
  const Rational rhs = Rational(static_cast<unsigned long>(r.generator_count)) - ratio(r.rank_d2, r.order);
  return lhs == rhs && r.consistent;
}

FiniteGroupRealization from_spec(const PermutationRealizationSpec& s) { return realize(s.images, s.degree); }

FiniteGroupRealization s3() {
  const std::vector<Permutation> images = {{1, 0, 2}, {1, 2, 0}};
  return realize(images, 3);
}

void criterion1(Check& c) {
  for (std::size_t k = 2; k <= 12; ++k) {
    const auto start = Clock::now();
    const auto p = testing::parse_presentation({"a"}, {"a^" + std::to_string(k)});
    const auto r = betti_invariants(build_complex(from_spec(cyclic_member(k, 1)), p));
    const double elapsed = seconds_since(start);
    g_reports.push_back(r);
    const std::string tag = "k=" + std::to_string(k) + ": ";
    c.expect(r.beta0 == ratio(1, k), tag + "beta0 " + str(r.beta0));
    c.expect(r.beta1 == 0, tag + "beta1 " + str(r.beta1));
    c.expect(r.delta2 == 1 - ratio(1, k), tag + "delta2 " + str(r.delta2));
    c.expect(elapsed < kCyclicSecondsPerGroup, tag + "took " + std::to_string(elapsed) + " s");
  }
}

void criterion2(Check& c) {
  const auto complex = build_complex(s3(), testing::parse_presentation({"a", "b"}, {"a^2", "b^3", "a b a b"}));
  const auto r = betti_invariants(complex);
  g_reports.push_back(r);
  c.expect(r.order == 6, "order " + std::to_string(r.order));
  c.expect(r.rank_d1 == 5, "rank d1 " + std::to_string(r.rank_d1));
  c.expect(r.rank_d2 == 7, "rank d2 " + std::to_string(r.rank_d2));
  c.expect(testing::naive_rank(boundary2(complex)) == 7, "naive rank d2 disagrees");
  c.expect(r.beta0 == Rational(1, 6), "beta0 " + str(r.beta0));
  c.expect(r.beta1 == 0, "beta1 " + str(r.beta1));
  c.expect(r.delta2 == Rational(5, 6), "delta2 " + str(r.delta2));
}

void criterion3(Check& c) {
  for (std::size_t n = 1; n <= 3; ++n) {
    const Presentation free(testing::generator_names(n), {});
    std::vector<PermutationRealizationSpec> quotients;
    for (std::size_t m = 2; m <= 5; ++m) quotients.push_back(abelian_grid_member(m, n));
    for (std::size_t m = 2; m <= 7; ++m) quotients.push_back(cyclic_member(m, n));
    for (const auto& spec : quotients) {
      const auto r = betti_invariants(build_complex(from_spec(spec), free));
      g_reports.push_back(r);
      c.expect(r.delta2 == Rational(static_cast<unsigned long>(n)),
               "n=" + std::to_string(n) + " order " + std::to_string(r.order) + ": delta2 " + str(r.delta2));
    }
  }
  const Presentation free2({"a", "b"}, {});
  const auto r = betti_invariants(build_complex(s3(), free2));
  g_reports.push_back(r);
  c.expect(r.beta1 == Rational(7, 6), "S3 beta1 " + str(r.beta1));
  c.expect(r.beta0 == Rational(1, 6), "S3 beta0 " + str(r.beta0));
  c.expect(r.delta2 == 2, "S3 delta2 " + str(r.delta2));
}

void criterion4(Check& c) {
  const Presentation integers({"a"}, {});
  for (std::size_t m = 2; m <= 5; ++m) {
    const auto complex = build_complex(from_spec(cyclic_member(m, 1)), integers);
    const std::size_t rank_d1 = testing::naive_rank(boundary1(complex));
    const Rational beta0 = 1 - ratio(rank_d1, m);
    const Rational beta1 = ratio(m - rank_d1 - testing::naive_rank(boundary2(complex)), m);
    c.expect(beta0 == ratio(1, m) && beta1 == ratio(1, m), "naive elimination m=" + std::to_string(m));
  }
  QuotientFamilySpec family{QuotientFamilySpec::Kind::cyclic, 2, 64, {}};
  const auto sweep = sweep_quotients(integers, family, {4, kDefaultOrderCap});
  c.expect(sweep.complete && sweep.entries.size() == 63, "sweep incomplete");
  Rational prev_beta0 = 2, prev_beta1 = 2;
  for (const auto& e : sweep.entries) {
    if (!e.report) {
      c.expect(false, "m=" + std::to_string(e.parameter) + " failed");
      continue;
    }
    const auto& r = *e.report;
    g_reports.push_back(r);
    const std::size_t m = e.parameter;
    const std::string tag = "m=" + std::to_string(m) + ": ";
    c.expect(r.beta0 == ratio(1, m), tag + "beta0 " + str(r.beta0));
    c.expect(r.beta1 == ratio(1, m), tag + "beta1 " + str(r.beta1));
    c.expect(r.delta2 == 1, tag + "delta2 " + str(r.delta2));
    c.expect(r.beta0 < prev_beta0 && r.beta1 < prev_beta1, tag + "not decreasing");
    prev_beta0 = r.beta0;
    prev_beta1 = r.beta1;
  }
}

void criterion5(Check& c) {
  const auto p = testing::parse_presentation({"a", "b"}, {"a b a' b'"});
  // Plain elimination confirms the closed form before it is used below.
  for (std::size_t m : {2u, 3u}) {
    const auto complex = build_complex(from_spec(abelian_grid_member(m, 2)), p);
    const std::size_t order = m * m;
    const std::size_t rank_d1 = testing::naive_rank(boundary1(complex));
    const std::size_t rank_d2 = testing::naive_rank(boundary2(complex));
    const Rational beta1 = ratio(2 * order - rank_d1 - rank_d2, order);
    c.expect(beta1 == ratio(2, order), "naive elimination m=" + std::to_string(m) + " beta1 " + str(beta1));
    c.expect(1 - ratio(rank_d1, order) == ratio(1, order), "naive elimination m=" + std::to_string(m) + " beta0");
  }
  if (!c.failures.empty()) return;

  QuotientFamilySpec family{QuotientFamilySpec::Kind::abelian_grid, 2, 12, {}};
  const auto sweep = sweep_quotients(p, family, {4, kDefaultOrderCap});
  c.expect(sweep.complete && sweep.entries.size() == 11, "sweep incomplete");
  Rational prev = 1;
  for (const auto& e : sweep.entries) {
    if (!e.report) {
      c.expect(false, "m=" + std::to_string(e.parameter) + " failed");
      continue;
    }
    const auto& r = *e.report;
    g_reports.push_back(r);
    const std::size_t m2 = e.parameter * e.parameter;
    const std::string tag = "m=" + std::to_string(e.parameter) + ": ";
    c.expect(r.beta1 == ratio(2, m2), tag + "beta1 " + str(r.beta1));
    c.expect(r.beta0 == ratio(1, m2), tag + "beta0 " + str(r.beta0));
    c.expect(r.delta2 == 1 + ratio(1, m2), tag + "delta2 " + str(r.delta2));
    c.expect(r.beta1 < prev, tag + "beta1 not decreasing");
    prev = r.beta1;
  }
}

void criterion6(Check& c) {
  for (const auto& r : g_reports) {
    c.expect(identity_holds(r), "identity fails at order " + std::to_string(r.order));
  }
  c.expect(g_reports.size() > 100, "criteria 1-5 produced too few reports");
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < kRandomPresentations; ++trial) {
    const auto inst = testing::random_instance(rng, kMaxRelatorLength);
    const auto r = betti_invariants(build_complex(realize(inst.images, inst.degree), inst.presentation));
    c.expect(identity_holds(r), "random trial " + std::to_string(trial));
  }
}

void criterion7(Check& c) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < kRandomPresentations; ++trial) {
    const auto inst = testing::random_instance(rng, kMaxRelatorLength);
    const auto complex = build_complex(realize(inst.images, inst.degree), inst.presentation);
    for (const FreeWord& w : inst.presentation.relators()) {
      c.expect(w.length() <= kMaxRelatorLength, "relator too long in trial " + std::to_string(trial));
    }
    const auto path = boundary2(complex, BoundaryMode::path);
    c.expect(path == boundary2(complex, BoundaryMode::fox), "path != fox in trial " + std::to_string(trial));
    c.expect((path * boundary1(complex)).is_zero(), "d1 d2 != 0 in trial " + std::to_string(trial));
  }
}

void criterion8(Check& c) {
  const auto start = Clock::now();
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < kRandomGraphs; ++trial) {
    const Graph g = testing::random_graph(rng, kMaxGraphVertices);
    const Cochain0 f = testing::random_cochain(rng, g.vertex_count());
    const auto levels = truncation_breakpoints(f);
    std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
    Rational t = levels[pick(rng)], t2 = levels[pick(rng)];
    if (trial % 3 == 0) t = (t + t2) / 2;
    if (t2 < t) std::swap(t, t2);
    const std::string err = testing::check_truncation_properties(g, f, t, t2);
    c.expect(err.empty(), "graph trial " + std::to_string(trial) + ": " + err);
  }

  const auto [g, f] = testing::harmonic_path(kHarmonicVertices);
  const auto a = approximate_bounded(g, f, kHarmonicP, kHarmonicEpsilon);
  const Rational scanned = testing::scan_minimal_breakpoint(g, f, kHarmonicP, kHarmonicEpsilon);
  c.expect(a.t == scanned, "harmonic t " + str(a.t) + " != scan " + str(scanned));
  // Independent re-verification in long double from the clamp definition.
  long double sum = 0;
  const long double t = a.t.get_d();
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    const long double fu = f.values[u].get_d(), fv = f.values[v].get_d();
    const long double diff = (fv - fu) - (std::clamp(fv, -t, t) - std::clamp(fu, -t, t));
    sum += diff * diff;
  }
  const double recomputed = static_cast<double>(std::sqrt(sum));
  c.expect(recomputed < kHarmonicEpsilon, "recomputed deficit " + std::to_string(recomputed));
  c.expect(std::fabs(recomputed - a.certified_deficit) <= kNormTolerance, "certified deficit mismatch");

  const double elapsed = seconds_since(start);
  c.expect(elapsed < kTruncationSuiteSeconds, "suite took " + std::to_string(elapsed) + " s");
}

std::string sample(const std::string& name) { return std::string(L2DIM_SAMPLES_DIR) + "/" + name; }

// All criteria 1-5 documents rendered through the command layer.
std::string determinism_run(std::size_t jobs) {
  std::ostringstream out;
  for (std::size_t k = 2; k <= 12; ++k) {
    std::ostringstream in;
    in << R"({"generators":["a"],"relators":["a^)" << k
       << R"("],"realization":{"kind":"permutation","degree":)" << k << R"(,"images":{"a":[)";
    for (std::size_t x = 0; x < k; ++x) in << (x ? "," : "") << (x + 1) % k;
    in << "]}}}";
    const auto path = testing::write_scratch("cyclic.json", in.str());
    out << cli::render(cli::run_compute({path.string(), true}).document);
  }
  out << cli::render(cli::run_compute({sample("s3.json"), true}).document);
  out << cli::render(cli::run_compute({sample("free2_s3.json"), true}).document);

  cli::SweepCommandOptions sweep;
  sweep.jobs = jobs;
  sweep.input = sample("integers.json");
  sweep.family = "cyclic";
  sweep.from = 2;
  sweep.to = 64;
  const auto integers = cli::run_sweep(sweep);
  out << cli::render(integers.document);
  sweep.input = sample("lattice.json");
  sweep.family = "abelian-grid";
  sweep.to = 12;
  sweep.csv = true;
  const auto lattice = cli::run_sweep(sweep);
  out << cli::render(lattice.document) << lattice.csv.value_or("");
  return out.str();
}

std::string binary_sweep(std::size_t jobs) {
  const auto path = testing::scratch_file("sweep_" + std::to_string(jobs) + ".json");
  const std::string cmd = std::string(L2DIM_CLI_PATH) + " sweep --input " + sample("lattice.json") +
                          " --family abelian-grid --from 2 --to 12 --jobs " + std::to_string(jobs) +
                          " --output " + path.string();
  if (std::system(cmd.c_str()) != 0) return "<failed>";
  return testing::read_file(path);
}

void criterion9(Check& c) {
  const std::string first = determinism_run(1);
  c.expect(first.find("\"error\"") == std::string::npos, "a command reported an error");
  c.expect(determinism_run(1) == first, "repeated jobs=1 runs differ");
  c.expect(determinism_run(8) == first, "jobs=8 differs from jobs=1");
  const std::string bin1 = binary_sweep(1);
  c.expect(bin1 != "<failed>", "executable failed");
  c.expect(binary_sweep(8) == bin1, "executable output differs between --jobs 1 and 8");
  c.expect(binary_sweep(1) == bin1, "executable output differs between repeated runs");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
      {"finite cyclic groups k=2..12", criterion1},
      {"S3 presentation", criterion2},
      {"free groups", criterion3},
      {"Z via cyclic quotients m=2..64", criterion4},
      {"Z^2 via grids m=2..12", criterion5},
      {"delta2 identity", criterion6},
      {"path/fox boundary equivalence and chain condition", criterion7},
      {"truncation property suite and harmonic path", criterion8},
      {"determinism", criterion9},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check check;
    const auto start = Clock::now();
    try {
      criteria[i].second(check);
    } catch (const std::exception& e) {
      check.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = check.failures.empty();
    failed += ok ? 0 : 1;
    std::printf("[%s] criterion %zu: %s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                seconds_since(start));
    for (std::size_t k = 0; k < check.failures.size() && k < 10; ++k) {
      std::printf("    %s\n", check.failures[k].c_str());
    }
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
