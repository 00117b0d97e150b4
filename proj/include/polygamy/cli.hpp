// Copyright 2026 The polygamy-lab Authors
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

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace polygamy::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kInternalError = 1,
  kUsageError = 2,
  kInputError = 3,
};

/// Everything a subcommand needs, as parsed from flags.
struct RunConfig {
  std::string subcommand;
  std::uint64_t seed = 42;
  double beta = 0.5;
  double beta_start = 0.0;
  double beta_stop = 1.0;
  int beta_steps = 101;
  std::vector<double> betas{0.3, 0.5, 0.8};
  std::optional<double> k_override;
  bool sort_profile = true;
  bool estimated = false;
  std::vector<double> profile;
  std::optional<double> lhs;
  std::string source = "wstate";
  std::string measure = "entropy";
  int restarts = 30;
  int iterations = 500;
  std::size_t ensemble_size = 0;
  std::size_t ensemble_cap = 16;
  std::vector<std::size_t> layout{2, 2, 2};
  std::vector<std::size_t> keep;
  int trials = 0;
  int resolution = 50;
  std::string input_path;
  std::string output_path;
  std::string summary_path;
  bool quiet = false;
  double analytic_tolerance = 1e-9;
  double estimated_tolerance = 1e-3;
};

/// Throws ValidationError when the parsed values break RunConfig's
/// invariants (beta grid in [0, 1], trials >= 0, restarts >= 1, ...).
void validate(const RunConfig& config);

/// Runs the command line `args` (args[0] is the program name). Primary output
/// goes to `out` unless --out names a file; diagnostics and the one-line
/// error reason go to `err`. Returns an ExitCode.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace polygamy::cli
