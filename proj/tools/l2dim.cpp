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

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "l2dim/cli.hpp"

namespace {

bool write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  return static_cast<bool>(out);
}

// Report to --output (stdout when absent); a one-line summary goes to stderr.
int emit(const l2dim::cli::CommandOutcome& outcome, const std::string& output,
         const std::string& csv_path) {
  const std::string text = l2dim::cli::render(outcome.document);
  if (output.empty()) {
    std::cout << text;
  } else if (!write_file(output, text)) {
    std::cerr << "l2dim: cannot write '" << output << "'\n";
    return l2dim::cli::kExitError;
  }
  if (outcome.csv && !csv_path.empty() && !write_file(csv_path, *outcome.csv)) {
    std::cerr << "l2dim: cannot write '" << csv_path << "'\n";
    return l2dim::cli::kExitError;
  }
  if (outcome.document.contains("error")) {
    std::cerr << "l2dim: " << outcome.document["error"]["message"].get<std::string>() << "\n";
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l2dim: l2-Betti numbers of finite presentations and coboundary truncation"};
  app.require_subcommand(1);
  std::string output;

  l2dim::cli::ComputeOptions compute;
  auto* compute_cmd = app.add_subcommand("compute", "Betti report for a presentation + realization");
  compute_cmd->add_option("--input", compute.input, "presentation JSON")->required();
  compute_cmd->add_option("--output", output, "report path (default stdout)");
  compute_cmd->add_flag("--exhaust", compute.exhaust, "add one row per relator prefix j = 0..m");

  l2dim::cli::SweepCommandOptions sweep;
  std::string family_file;
  std::string csv_path;
  auto* sweep_cmd = app.add_subcommand("sweep", "Betti reports over a family of finite quotients");
  sweep_cmd->add_option("--input", sweep.input, "presentation JSON")->required();
  sweep_cmd->add_option("--family", sweep.family, "abelian-grid | cyclic");
  sweep_cmd->add_option("--from", sweep.from, "first family parameter (>= 2)");
  sweep_cmd->add_option("--to", sweep.to, "last family parameter");
  sweep_cmd->add_option("--family-file", family_file, "QuotientFamilySpec JSON (any kind)");
  sweep_cmd->add_option("--output", output, "report path (default stdout)");
  sweep_cmd->add_option("--csv", csv_path, "also write order,beta0,beta1,delta2 CSV here");
  sweep_cmd->add_option("--jobs", sweep.jobs, "maximum concurrent members")
      ->check(CLI::PositiveNumber);

  l2dim::cli::TruncateOptions truncate;
  auto* truncate_cmd = app.add_subcommand("truncate", "bounded approximation of a coboundary");
  truncate_cmd->add_option("--graph", truncate.graph, "graph JSON")->required();
  truncate_cmd->add_option("--function", truncate.function, "0-cochain JSON")->required();
  truncate_cmd->add_option("--p", truncate.p, "norm exponent, finite and >= 1")->required();
  truncate_cmd->add_option("--epsilon", truncate.epsilon, "target deficit, > 0")->required();
  truncate_cmd->add_option("--output", output, "report path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : l2dim::cli::kExitError;
  }

  const std::size_t cap = l2dim::cli::order_cap_from_env();
  if (*compute_cmd) {
    compute.order_cap = cap;
    return emit(l2dim::cli::run_compute(compute), output, "");
  }
  if (*sweep_cmd) {
    sweep.order_cap = cap;
    if (!family_file.empty()) sweep.family_file = family_file;
    sweep.csv = !csv_path.empty();
    return emit(l2dim::cli::run_sweep(sweep), output, csv_path);
  }
  return emit(l2dim::cli::run_truncate(truncate), output, "");
}
