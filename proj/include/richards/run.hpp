#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include "richards/config.hpp"
#include "richards/discretization.hpp"
#include "richards/report.hpp"

namespace richards {

enum class ExitCode : int {
  Success = 0,
  Config = 1,
  LinearSolver = 2,
  Newton = 3,
  ContinuationFloor = 4,
  PseudoTransientFloor = 5,
  Io = 6,
};

struct RunResult {
  ExitCode exit_code = ExitCode::Success;
  std::string failure = "none"; ///< failure class written to summary.txt
  ConvergenceReport report;
  HeadState state;
  BoundaryFluxReport fluxes;
  std::size_t cells = 0;
  std::size_t floored_cells = 0;
};

/// Solves the configured problem in memory; no files are written.
RunResult solve_problem(const ProblemConfig& config);

void write_summary(std::ostream& out, const ProblemConfig& config, const RunResult& result);

/// Solves and writes head.vtk, convergence.csv and summary.txt into
/// `out_dir` (created if missing).  Errors are mapped to exit codes.
RunResult run(const ProblemConfig& config, const std::filesystem::path& out_dir);

} // namespace richards
