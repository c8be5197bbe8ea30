//
// Copyright 2026 The AnonRepro Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

// anonrepro: anonymize failure traces, regenerate inputs from them, and run
// reproduction experiments over bug oracles.

#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "anonrepro/commands.h"

namespace {

using anonrepro::Error;
using anonrepro::ErrorCode;

template <typename T>
std::optional<T> IfSet(const CLI::Option* opt, const T& value) {
  return opt->count() > 0 ? std::optional<T>(value) : std::nullopt;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anonymize failure traces and measure how often anonymized "
               "inputs still reproduce the failure."};
  app.require_subcommand(1);

  std::string trace, config, out;
  uint64_t seed = 0;
  int64_t trials = 0;
  int workers = 1;
  bool verify = false;
  std::string in_dir, format = "table";

  auto* anonymize = app.add_subcommand("anonymize", "Anonymize a failure trace");
  anonymize->add_option("--trace", trace, "Failure trace (JSON)")->required();
  anonymize->add_option("--config", config, "Run config (JSON)")->required();
  anonymize->add_option("--out", out, "Anonymized trace to write")->required();
  auto* anon_seed = anonymize->add_option("--seed", seed, "Random seed");

  auto* regenerate =
      app.add_subcommand("regenerate", "Regenerate concrete inputs");
  regenerate->add_option("--trace", trace, "Anonymized trace (JSON)")->required();
  regenerate->add_option("--seed", seed, "Random seed")->required();
  regenerate->add_option("--out", out, "Concrete trace to write")->required();

  auto* simulate = app.add_subcommand("simulate", "Run reproduction trials");
  simulate->add_option("--config", config, "Run config (JSON)")->required();
  simulate->add_option("--out", out, "Output directory")->required();
  simulate->add_flag("--verify", verify,
                     "Check frequencies against exhaustive enumeration");
  auto* sim_trials = simulate->add_option("--trials", trials, "Trials per run");
  auto* sim_seed = simulate->add_option("--seed", seed, "Random seed");
  auto* sim_workers =
      simulate->add_option("--workers", workers, "Worker threads");

  auto* report = app.add_subcommand("report", "Render trial reports");
  report->add_option("--in", in_dir, "Directory of report CSV files")->required();
  report->add_option("--format", format, "csv or table")
      ->check(CLI::IsMember({"csv", "table"}));
  report->add_option("--out", out, "Write to a file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? anonrepro::kExitOk : anonrepro::kExitValidation;
  }

  try {
    if (anonymize->parsed()) {
      anonrepro::CmdAnonymize(trace, config, out, IfSet(anon_seed, seed));
    } else if (regenerate->parsed()) {
      anonrepro::CmdRegenerate(trace, seed, out);
    } else if (simulate->parsed()) {
      anonrepro::RunConfig c = anonrepro::LoadRunConfig(config);
      anonrepro::RunOverrides o;
      o.trials = IfSet(sim_trials, trials);
      o.seed = IfSet(sim_seed, seed);
      o.workers = IfSet(sim_workers, workers);
      o.verify = verify;
      anonrepro::ApplyOverrides(c, o);
      anonrepro::CmdSimulate(c, out);
    } else if (report->parsed()) {
      const std::string text = anonrepro::CmdReport(
          in_dir, format == "csv" ? anonrepro::ReportFormat::kCsv
                                  : anonrepro::ReportFormat::kTable);
      if (out.empty()) {
        std::cout << text;
      } else {
        anonrepro::json_util::WriteFile(out, text);
      }
    }
  } catch (const Error& e) {
    std::cerr << "anonrepro: " << e.what() << "\n";
    return anonrepro::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "anonrepro: " << e.what() << "\n";
    return anonrepro::kExitRuntime;
  }
  return anonrepro::kExitOk;
}
