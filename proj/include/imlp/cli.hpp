// Copyright 2026 The imlp Authors
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

// Command-line front end: `imlp solve`, `imlp compare` and `imlp suite`.
//
// Exit codes:
//   0  optimal
//   1  usage error
//   2  iteration limit reached
//   3  invalid or infeasible input (parse, dimension or validation errors)
//   4  numerical failure
//   5  I/O error

#ifndef IMLP_CLI_HPP_
#define IMLP_CLI_HPP_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "imlp/pdhg.hpp"
#include "imlp/problem_io.hpp"

namespace imlp {

enum ExitCode : int {
  kExitOptimal = 0,
  kExitUsage = 1,
  kExitIterationLimit = 2,
  kExitInvalidInput = 3,
  kExitNumericalFailure = 4,
  kExitIoError = 5,
};

struct RunConfig {
  std::filesystem::path problem;
  std::optional<ProblemFormat> format;  // guessed from the extension if unset
  std::string backend = "exact";        // exact | rram
  std::string profile = "taox-hfox";    // bundled name or JSON path
  std::filesystem::path profile_dir;    // overrides $IMLP_PROFILE_DIR
  PdhgConfig pdhg;
  std::filesystem::path output_dir;  // where default-named files go
  std::filesystem::path solution_out;
  std::filesystem::path trace_out;
  std::filesystem::path telemetry_out;
  int verbosity = 0;
};

struct RunResult {
  LpProblem problem;
  Solution solution;
  Vector x;  // in the original variables
  double objective = 0.0;
  SolutionRecord record;
};

// Loads, converts to standard form, solves and recovers. Throws on errors.
RunResult SolveProblem(const RunConfig& config);

// Exit code for a finished solve.
int StatusExitCode(SolveStatus status);

// Relative error |z - z_ref| / |z_ref| where z_ref is the ground truth.
double RelativeError(double z, double z_ref);

// `solve`: runs, writes outputs and prints a summary with the per-phase
// energy/latency breakdown.
int Run(const RunConfig& config, std::ostream& out, std::ostream& err);

// `compare`: Delta_rel of a solution against a reference solution file. If
// `candidate` is empty the candidate is produced by solving `config`.
int Compare(const RunConfig& config, const std::filesystem::path& reference,
            const std::filesystem::path& candidate, std::ostream& out,
            std::ostream& err);

// `suite`: solves every *.json / *.mps instance of `dir` with each backend and
// prints one table row per (instance, backend). Delta_rel is measured against
// the exact backend.
int Suite(const RunConfig& config, const std::filesystem::path& dir,
          const std::vector<std::string>& backends, std::ostream& out,
          std::ostream& err);

// Parses argv and dispatches.
int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace imlp

#endif  // IMLP_CLI_HPP_
