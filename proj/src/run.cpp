#include "richards/run.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <spdlog/spdlog.h>

#include <chrono>
#include <fstream>

#include "richards/continuation.hpp"
#include "richards/newton.hpp"
#include "richards/pseudotransient.hpp"

namespace richards {

namespace {

std::string table_label(const ProblemConfig& config) {
  switch (config.solver.strategy) {
  case Strategy::Newton: return "Newton";
  case Strategy::Continuation:
    return config.solver.continuation.kind == ContinuationKind::Power ? "Continuation, power"
                                                                      : "Continuation, linear";
  case Strategy::PseudoTransient: return "Pseudo-transient";
  }
  return "unknown";
}

void write_failure_summary(const std::filesystem::path& out_dir, const RunResult& res) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  std::ofstream summary(out_dir / "summary.txt");
  if (summary) {
    fmt::print(summary, "status = config_error\nfailure = {}\nexit_code = {}\n", res.failure,
               static_cast<int>(res.exit_code));
  }
}

void log_report(const ConvergenceReport& rep) {
  for (const auto& r : rep.rows) {
    spdlog::debug("{} step {} attempt {} ({}) iter {}: |r|2 = {:.3e} |r|inf = {:.3e} omega = {} lin = {}",
                  r.stage, r.step, r.attempt, r.q_or_dt, r.newton_iter, r.res_l2, r.res_inf, r.omega,
                  r.lin_iters);
  }
}

} // namespace

RunResult solve_problem(const ProblemConfig& config) {
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res;
  const FlowModel model = build_model(config);
  res.cells = model.num_cells();
  const SolverSpec& sol = config.solver;
  const HeadState start = constant_initial_state(config, model);

  try {
    switch (sol.strategy) {
    case Strategy::Newton: {
      const SteadyProblem problem(model, AssemblyOptions{1.0, sol.continuation.kind, sol.kr_scheme});
      NewtonOutcome out = newton_solve(problem, start, sol.newton);
      res.report = report_from(out);
      res.state = std::move(out.state);
      if (!out.converged()) {
        res.failure = std::string(to_string(out.status));
        res.exit_code = out.status == NewtonStatus::LinearSolveFailed ? ExitCode::LinearSolver
                                                                       : ExitCode::Newton;
      }
      break;
    }
    case Strategy::Continuation: {
      ContinuationOutcome out =
          continuation_solve(model, start, sol.kr_scheme, sol.newton, sol.continuation);
      res.report = report_from(out);
      res.state = std::move(out.state);
      if (!out.solved()) {
        res.failure = std::string(to_string(out.status));
        res.exit_code = ExitCode::ContinuationFloor;
      }
      break;
    }
    case Strategy::PseudoTransient: {
      const HeadState initial =
          sol.pt_initial == InitialGuess::Linear
              ? solve_linear_problem(model, start, sol.kr_scheme, sol.newton.linear)
              : start;
      PseudoTransientOutcome out =
          pseudo_transient_solve(model, initial, sol.kr_scheme, sol.newton, sol.pseudo_transient);
      res.report = report_from(out);
      res.state = std::move(out.state);
      if (!out.reached_steady_state()) {
        res.failure = std::string(to_string(out.status));
        res.exit_code = ExitCode::PseudoTransientFloor;
      }
      break;
    }
    }
  } catch (const LinearSolverError& e) {
    res.failure = std::string("linear_solver: ") + e.what();
    res.exit_code = ExitCode::LinearSolver;
    res.report.strategy = std::string(to_string(sol.strategy));
    res.report.status = "linear_solve_failed";
    res.state = start;
  }
  res.report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const AssemblyOptions final_opts{1.0, sol.continuation.kind, sol.kr_scheme};
  res.fluxes = boundary_flux_report(model, res.state, final_opts);
  res.floored_cells = count_floored_cells(model, res.state);
  log_report(res.report);
  return res;
}

void write_summary(std::ostream& out, const ProblemConfig& config, const RunResult& r) {
  const auto& rep = r.report;
  fmt::print(out, "strategy = {}\n", rep.strategy);
  fmt::print(out, "status = {}\n", rep.status);
  fmt::print(out, "failure = {}\n", r.failure);
  fmt::print(out, "exit_code = {}\n", static_cast<int>(r.exit_code));
  fmt::print(out, "kind = {}\n", to_string(config.solver.continuation.kind));
  fmt::print(out, "kr_scheme = {}\n", to_string(config.solver.kr_scheme));
  fmt::print(out, "cells = {}\n", r.cells);
  fmt::print(out, "wall_time_s = {:.3f}\n", rep.wall_time);
  fmt::print(out, "steps_successful = {}\n", rep.successful_steps);
  fmt::print(out, "steps_failed = {}\n", rep.failed_steps);
  fmt::print(out, "newton_iterations = {}\n", rep.newton_iterations);
  fmt::print(out, "correction_hook = {}\n", rep.correction.empty() ? "none" : rep.correction);
  fmt::print(out, "kr_floor_cells = {}\n", r.floored_cells);
  fmt::print(out, "boundary_inflow = {}\n", r.fluxes.inflow);
  fmt::print(out, "boundary_outflow = {}\n", r.fluxes.outflow);
  fmt::print(out, "seepage_outflow = {}\n", r.fluxes.seepage_outflow);
  fmt::print(out, "source_total = {}\n", r.fluxes.source_total);
  for (std::size_t t = 0; t < kBoundaryTagCount; ++t) {
    fmt::print(out, "flux_{} = {}\n", to_string(static_cast<BoundaryTag>(t)), r.fluxes.outward_by_tag[t]);
  }
  out << '\n';
  const ComparisonRow row = comparison_row(table_label(config), rep);
  out << format_comparison_table(std::span(&row, 1));
}

RunResult run(const ProblemConfig& config, const std::filesystem::path& out_dir) {
  RunResult res;
  try {
    res = solve_problem(config);
  } catch (const std::runtime_error& e) {
    // ConfigError and ModelError: nothing was solved
    spdlog::error("{}", e.what());
    res.exit_code = ExitCode::Config;
    res.failure = std::string("config: ") + e.what();
    write_failure_summary(out_dir, res);
    return res;
  }

  try {
    std::filesystem::create_directories(out_dir);
    const FlowModel model = build_model(config);
    const std::vector<NamedField> fields = {
        {"head", res.state},
        {"saturation", cell_saturation(model, res.state)},
        {"water_content", cell_water_content(model, res.state)},
    };
    write_vtk(out_dir / "head.vtk", model.mesh(), fields);

    std::ofstream csv(out_dir / "convergence.csv");
    std::ofstream summary(out_dir / "summary.txt");
    if (!csv || !summary) {
      throw IoError("cannot write into '" + out_dir.string() + "'");
    }
    write_convergence_csv(csv, res.report);
    write_summary(summary, config, res);
  } catch (const std::exception& e) {
    spdlog::error("output: {}", e.what());
    res.exit_code = ExitCode::Io;
    res.failure = std::string("io: ") + e.what();
    return res;
  }

  const auto& rep = res.report;
  spdlog::info("{}: {} in {:.3f} s, {}({}) steps, {} Newton iterations", rep.strategy, rep.status,
               rep.wall_time, rep.successful_steps, rep.failed_steps, rep.newton_iterations);
  return res;
}

} // namespace richards
