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

// Reading LP instances from disk and writing solutions back.
//
// Two problem formats are supported:
//   * native: a JSON document described in docs/native_format.md;
//   * mps:    the NAME/ROWS/COLUMNS/RHS/RANGES/BOUNDS subset of MPS, fixed or
//             free format (detected per line). Integrality markers are read
//             and ignored, so integer programs load as their LP relaxation.

#ifndef IMLP_PROBLEM_IO_HPP_
#define IMLP_PROBLEM_IO_HPP_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

#include "imlp/lp_problem.hpp"

namespace imlp {

enum class ProblemFormat { kNative, kMps };

// "native" / "json" -> kNative, "mps" -> kMps. Throws ValidationError.
ProblemFormat ParseProblemFormat(std::string_view name);
// Chooses by file extension (.mps, .mps.txt -> mps, everything else native).
ProblemFormat GuessProblemFormat(const std::filesystem::path& path);

LpProblem LoadProblem(const std::filesystem::path& path, ProblemFormat format);
LpProblem ParseNativeProblem(std::string_view text);
LpProblem ParseMps(std::string_view text);

// Serializes `problem` in the native format. Infinite bounds become the
// strings "inf" / "-inf".
std::string FormatNativeProblem(const LpProblem& problem);

// Everything a solution file carries. Residual names are free-form keys so
// both scaled and unscaled sets can be stored side by side.
struct SolutionRecord {
  std::string name;
  std::string status;
  double objective = 0.0;
  long long iterations = 0;
  Vector x;
  Vector y;
  std::map<std::string, double> residuals;
};

std::string FormatSolution(const SolutionRecord& record);
SolutionRecord ParseSolution(std::string_view text);

void WriteSolutionFile(const std::filesystem::path& path,
                       const SolutionRecord& record);
SolutionRecord ReadSolutionFile(const std::filesystem::path& path);

// Whole-file helpers that throw IoError.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace imlp

#endif  // IMLP_PROBLEM_IO_HPP_
