#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "richards/linsolve.hpp"
#include "richards/nonlinear_problem.hpp"

namespace richards {

/// Stopping test shared by every nonlinear driver:
/// ||r||_2 < eps_rel * ||r_0||_2  or  ||r||_inf < eps_abs.
struct ConvergenceTest {
  double eps_rel = 1e-5;
  double eps_abs = 1e-5;

  [[nodiscard]] bool satisfied(double res_l2, double res_inf, double initial_l2) const {
    return res_l2 < eps_rel * initial_l2 || res_inf < eps_abs;
  }
};

/// Post-update head correction.  An empty `apply` is the identity.
struct CorrectionHook {
  std::string name;
  std::function<void(HeadState&)> apply;

  [[nodiscard]] bool is_default() const noexcept { return !apply; }
};

struct NewtonConfig {
  ConvergenceTest tolerance;
  int maxit = 25;
  double gamma = 0.25;          ///< backtracking factor
  int omega_refinements = 7;    ///< smallest trial step is gamma^omega_refinements
  int line_search_start = 5;    ///< first iteration index using line search
  bool line_search = true;
  std::optional<double> fixed_relaxation; ///< constant Omega, disables line search
  LinearSolverConfig linear;
  CorrectionHook correction;

  [[nodiscard]] double omega_min() const;
  void validate() const;
};

enum class NewtonStatus { Converged, LineSearchFailed, MaxIterExceeded, LinearSolveFailed };

std::string_view to_string(NewtonStatus status);

struct NewtonIterationRecord {
  int iteration = 0; ///< 0 is the initial state
  double res_l2 = 0.0;
  double res_inf = 0.0;
  double omega = 0.0; ///< 0 for the initial record
  int linear_iterations = 0;
  int line_search_trials = 0;
};

struct NewtonOutcome {
  NewtonStatus status = NewtonStatus::MaxIterExceeded;
  HeadState state;
  int iterations = 0; ///< number of linear solves performed
  std::vector<NewtonIterationRecord> records;
  std::string correction; ///< name of a non-default correction hook, else empty
  std::string message;

  [[nodiscard]] bool converged() const noexcept { return status == NewtonStatus::Converged; }
};

struct LineSearchResult {
  bool accepted = false;
  double omega = 0.0;
  HeadState state;
  std::vector<double> residual;
  double residual_l2 = 0.0;
  int trials = 0;
};

/// Tries Omega = 1, gamma, gamma^2, ... down to omega_min and accepts the
/// first step with ||F||_2 strictly below `base_norm`.
LineSearchResult line_search(const NonlinearProblem& problem, std::span<const double> base,
                             std::span<const double> direction, double base_norm, double gamma,
                             double omega_min);

/// Newton iteration with backtracking on the residual norm once
/// `line_search_start` iterations have been taken.
NewtonOutcome newton_solve(const NonlinearProblem& problem, std::span<const double> initial,
                           const NewtonConfig& config);

} // namespace richards
