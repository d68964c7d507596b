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

#include "imlp/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "imlp/accel.hpp"
#include "imlp/error.hpp"
#include "imlp/rram.hpp"

namespace imlp {
namespace {

namespace fs = std::filesystem;

// Raised for bad flag values that CLI11 cannot check on its own.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::unique_ptr<Backend> MakeBackend(const RunConfig& config) {
  if (config.backend == "exact") return std::make_unique<ExactBackend>();
  if (config.backend == "rram") {
    return std::make_unique<RramBackend>(
        ResolveProfile(config.profile, config.profile_dir), config.pdhg.seed);
  }
  throw UsageError("unknown backend '" + config.backend +
                   "' (expected exact or rram)");
}

std::string Format(const char* fmt, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

int ExitCodeFor(const std::exception& e, std::ostream& err) {
  err << "imlp: " << e.what() << "\n";
  if (dynamic_cast<const UsageError*>(&e)) return kExitUsage;
  if (dynamic_cast<const IoError*>(&e)) return kExitIoError;
  if (dynamic_cast<const ParseError*>(&e) ||
      dynamic_cast<const DimensionError*>(&e) ||
      dynamic_cast<const ValidationError*>(&e) ||
      dynamic_cast<const CapacityError*>(&e)) {
    return kExitInvalidInput;
  }
  if (dynamic_cast<const Error*>(&e)) return kExitNumericalFailure;
  return kExitNumericalFailure;
}

// Runs `body` and maps exceptions onto exit codes.
template <typename F>
int Guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return ExitCodeFor(e, err);
  }
}

void PrintPhaseTable(const TelemetryLedger& t, std::ostream& out) {
  char line[256];
  std::snprintf(line, sizeof(line), "  %-16s %7s %10s %12s %14s %14s %14s\n",
                "phase", "encodes", "mvm_calls", "write_pulses", "cell_reads",
                "energy_j", "latency_s");
  out << line;
  auto row = [&](const char* name, const Counters& c) {
    std::snprintf(line, sizeof(line),
                  "  %-16s %7llu %10llu %12llu %14llu %14.6e %14.6e\n", name,
                  static_cast<unsigned long long>(c.n_encodes),
                  static_cast<unsigned long long>(c.n_mvm_calls),
                  static_cast<unsigned long long>(c.n_write_pulses),
                  static_cast<unsigned long long>(c.n_cell_reads),
                  Energy(c, t.costs()), Latency(c, t.costs()));
    out << line;
  };
  row("encode", t.phase_counters(Phase::kEncode));
  row("step1 (lanczos)", t.phase_counters(Phase::kLanczos));
  row("step2 (pdhg)", t.phase_counters(Phase::kPdhg));
  row("total", t.totals());
}

fs::path DefaultPath(const RunConfig& config, const std::string& name,
                     const char* suffix) {
  return config.output_dir / (name + suffix);
}

void EnsureOutputDir(const RunConfig& config) {
  if (config.output_dir.empty()) return;
  std::error_code ec;
  fs::create_directories(config.output_dir, ec);
  if (ec) {
    throw IoError("cannot create output directory '" +
                  config.output_dir.string() + "': " + ec.message());
  }
}

}  // namespace

int StatusExitCode(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return kExitOptimal;
    case SolveStatus::kIterationLimit:
      return kExitIterationLimit;
    case SolveStatus::kNumericalFailure:
      return kExitNumericalFailure;
  }
  return kExitNumericalFailure;
}

double RelativeError(double z, double z_ref) {
  if (z == z_ref) return 0.0;
  return std::abs(z - z_ref) / std::abs(z_ref);
}

RunResult SolveProblem(const RunConfig& config) {
  ValidateConfig(config.pdhg);
  const ProblemFormat format =
      config.format.value_or(GuessProblemFormat(config.problem));
  RunResult r;
  r.problem = LoadProblem(config.problem, format);
  const StandardLp standard = ToStandardForm(r.problem);
  std::unique_ptr<Backend> backend = MakeBackend(config);
  r.solution = PdhgSolve(standard, config.pdhg, *backend);
  r.x = RecoverSolution(standard, r.solution.x);
  r.objective = r.problem.Objective(r.x);

  SolutionRecord& rec = r.record;
  rec.name = r.problem.name;
  rec.status = std::string(StatusName(r.solution.status));
  rec.objective = r.objective;
  rec.iterations = r.solution.iterations;
  rec.x = r.x;
  rec.y = r.solution.y;
  const Residuals& u = r.solution.residuals;
  const Residuals& s = r.solution.scaled_residuals;
  rec.residuals = {{"r_pri", u.r_pri},          {"r_dual", u.r_dual},
                   {"r_iter", u.r_iter},        {"gap", u.gap},
                   {"scaled_r_pri", s.r_pri},   {"scaled_r_dual", s.r_dual},
                   {"scaled_r_iter", s.r_iter}, {"scaled_gap", s.gap}};
  return r;
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    EnsureOutputDir(config);
    const RunResult r = SolveProblem(config);
    const Solution& sol = r.solution;
    const std::string& name = r.problem.name;

    const fs::path solution_path =
        config.solution_out.empty()
            ? DefaultPath(config, name, ".solution.json")
            : config.solution_out;
    WriteSolutionFile(solution_path, r.record);
    fs::path trace_path = config.trace_out;
    fs::path telemetry_path = config.telemetry_out;
    if (!config.output_dir.empty()) {
      if (trace_path.empty())
        trace_path = DefaultPath(config, name, ".trace.csv");
      if (telemetry_path.empty()) {
        telemetry_path = DefaultPath(config, name, ".telemetry.json");
      }
    }
    if (!trace_path.empty())
      WriteTextFile(trace_path, FormatTraceCsv(sol.trace));
    if (!telemetry_path.empty()) {
      WriteTextFile(telemetry_path, sol.telemetry.ToJson());
    }

    out << "problem     " << name << " (" << r.problem.num_vars() << " vars, "
        << r.problem.num_ineq() << " ineq, " << r.problem.num_eq() << " eq)\n";
    out << "backend     " << config.backend;
    if (config.backend == "rram") out << " (" << config.profile << ")";
    out << "\n";
    out << "status      " << StatusName(sol.status) << "\n";
    out << "objective   " << Format("%.10g", r.objective) << "\n";
    out << "iterations  " << sol.iterations << "\n";
    out << "sigma1      " << Format("%.10g", sol.sigma1_estimate) << "\n";
    out << "residuals   r_pri=" << Format("%.3e", sol.residuals.r_pri)
        << " r_dual=" << Format("%.3e", sol.residuals.r_dual)
        << " r_iter=" << Format("%.3e", sol.residuals.r_iter) << " (scaled max "
        << Format("%.3e", sol.scaled_residuals.max()) << ")\n";
    out << "solution    " << solution_path.string() << "\n";
    PrintPhaseTable(sol.telemetry, out);
    if (config.verbosity > 0) {
      for (const std::string& w : sol.warnings) err << "warning: " << w << "\n";
      out << "ritz        ";
      for (double v : sol.ritz_history) out << Format("%.10g", v) << " ";
      out << "\n";
    }
    if (sol.status == SolveStatus::kIterationLimit) {
      err << "imlp: iteration limit reached; returning best iterate (primal "
             "norm growth "
          << Format("%.3e", sol.primal_norm_growth) << " per iteration)\n";
    }
    return StatusExitCode(sol.status);
  });
}

int Compare(const RunConfig& config, const fs::path& reference,
            const fs::path& candidate, std::ostream& out, std::ostream& err) {
  return Guarded(err, [&] {
    const SolutionRecord ref = ReadSolutionFile(reference);
    SolutionRecord cand;
    if (candidate.empty()) {
      if (config.problem.empty()) {
        throw UsageError("compare needs --candidate or --problem");
      }
      cand = SolveProblem(config).record;
    } else {
      cand = ReadSolutionFile(candidate);
    }
    out << "reference   " << Format("%.12g", ref.objective) << " ("
        << ref.status << ")\n";
    out << "candidate   " << Format("%.12g", cand.objective) << " ("
        << cand.status << ")\n";
    out << "delta_rel   "
        << Format("%.6e", RelativeError(cand.objective, ref.objective)) << "\n";
    if (!ref.x.empty() && ref.x.size() == cand.x.size()) {
      out << "x_diff_inf  " << Format("%.6e", NormInf(Subtract(cand.x, ref.x)))
          << "\n";
    }
    for (const auto& [key, value] : cand.residuals) {
      auto it = ref.residuals.find(key);
      out << "  " << key << "  candidate=" << Format("%.3e", value);
      if (it != ref.residuals.end()) {
        out << " reference=" << Format("%.3e", it->second);
      }
      out << "\n";
    }
    return kExitOptimal;
  });
}

int Suite(const RunConfig& config, const fs::path& dir,
          const std::vector<std::string>& backends, std::ostream& out,
          std::ostream& err) {
  return Guarded(err, [&] {
    if (!fs::is_directory(dir)) {
      throw IoError("suite directory '" + dir.string() + "' not found");
    }
    EnsureOutputDir(config);
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(dir)) {
      const std::string ext = entry.path().extension().string();
      if (entry.is_regular_file() && (ext == ".json" || ext == ".mps")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());

    char line[512];
    std::snprintf(line, sizeof(line),
                  "%-24s %-6s %-17s %16s %11s %8s %12s %12s %12s %12s\n",
                  "instance", "backend", "status", "objective", "delta_rel",
                  "iters", "encode_j", "step1_j", "step2_j", "latency_s");
    out << line;
    int code = kExitOptimal;
    for (const fs::path& file : files) {
      std::optional<double> reference;
      for (const std::string& backend : backends) {
        RunConfig c = config;
        c.problem = file;
        c.backend = backend;
        try {
          const RunResult r = SolveProblem(c);
          const Solution& s = r.solution;
          if (backend == "exact") reference = r.objective;
          const TelemetryLedger& t = s.telemetry;
          const double delta =
              reference ? RelativeError(r.objective, *reference) : std::nan("");
          std::snprintf(line, sizeof(line),
                        "%-24s %-6s %-17s %16.10g %11.3e %8lld %12.4e %12.4e "
                        "%12.4e %12.4e\n",
                        file.stem().string().c_str(), backend.c_str(),
                        std::string(StatusName(s.status)).c_str(), r.objective,
                        delta, s.iterations, t.energy_j(Phase::kEncode),
                        t.energy_j(Phase::kLanczos), t.energy_j(Phase::kPdhg),
                        t.latency_s());
          out << line;
          if (!config.output_dir.empty()) {
            WriteSolutionFile(config.output_dir / (file.stem().string() + "." +
                                                   backend + ".solution.json"),
                              r.record);
          }
        } catch (const std::exception& e) {
          out << file.stem().string() << " " << backend << " error\n";
          code = std::max(code, ExitCodeFor(e, err));
        }
      }
    }
    return code;
  });
}

int CliMain(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "imlp: PDHG linear-programming solver with a simulated RRAM "
      "accelerator backend"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format;
  fs::path reference;
  fs::path candidate;
  fs::path suite_dir;
  std::vector<std::string> backends{"exact", "rram"};
  unsigned long long seed = 0;

  auto add_common = [&](CLI::App* sub, bool problem_required) {
    auto* p = sub->add_option("--problem", config.problem, "problem file");
    if (problem_required) p->required();
    sub->add_option("--format", format, "native | mps (default: by extension)");
    sub->add_option("--backend", config.backend, "exact | rram");
    sub->add_option("--profile", config.profile,
                    "device profile name or JSON path (rram backend)");
    sub->add_option("--profile-dir", config.profile_dir,
                    "directory searched for <profile>.json");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--tol", config.pdhg.tolerance, "stopping tolerance");
    sub->add_option("--max-iters", config.pdhg.max_iters, "iteration limit");
    sub->add_option("--eta", config.pdhg.eta, "step-size safety factor");
    sub->add_option("--gamma", config.pdhg.gamma, "acceleration parameter");
    sub->add_option("--ruiz-iters", config.pdhg.ruiz_iters, "Ruiz passes");
    sub->add_option("--lanczos-max", config.pdhg.lanczos_max,
                    "maximum Lanczos steps");
    sub->add_option("--check-interval", config.pdhg.check_interval,
                    "iterations between residual checks");
    sub->add_flag("--zero-start", config.pdhg.zero_start,
                  "start from x = 0, y = 0");
    sub->add_option("--output-dir", config.output_dir,
                    "directory for default-named output files");
    sub->add_option("--solution-out", config.solution_out, "solution file");
    sub->add_option("--trace-out", config.trace_out, "trace CSV file");
    sub->add_option("--telemetry-out", config.telemetry_out,
                    "telemetry JSON file");
    sub->add_flag("-v,--verbose", config.verbosity, "more output");
  };

  CLI::App* solve = app.add_subcommand("solve", "solve one problem");
  add_common(solve, true);
  CLI::App* compare =
      app.add_subcommand("compare", "relative objective error vs a reference");
  add_common(compare, false);
  compare->add_option("--reference", reference, "reference solution file")
      ->required();
  compare->add_option("--candidate", candidate,
                      "candidate solution file (default: solve --problem)");
  CLI::App* suite =
      app.add_subcommand("suite", "solve every instance in a directory");
  add_common(suite, false);
  suite->add_option("--dir", suite_dir, "instance directory")->required();
  suite->add_option("--backends", backends, "backends to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOptimal : kExitUsage;
  }
  config.pdhg.seed = seed;
  if (!format.empty()) {
    try {
      config.format = ParseProblemFormat(format);
    } catch (const ValidationError& e) {
      err << "imlp: " << e.what() << "\n";
      return kExitUsage;
    }
  }
  if (solve->parsed()) return Run(config, out, err);
  if (compare->parsed()) return Compare(config, reference, candidate, out, err);
  return Suite(config, suite_dir, backends, out, err);
}

}  // namespace imlp
