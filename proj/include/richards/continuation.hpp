#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "richards/discretization.hpp"
#include "richards/newton.hpp"

namespace richards {

struct ContinuationConfig {
  ContinuationKind kind = ContinuationKind::Power;
  double dq_min = 1e-4;     ///< attempts stop once the step is at or below this
  double growth = 2.0;      ///< step growth after a success
  double shrink = 0.5;      ///< step reduction after a failure
  double initial_dq_last = 1.0;

  void validate() const;
};

enum class ContinuationStatus { Solved, StepFloorReached };

std::string_view to_string(ContinuationStatus status);

struct ContinuationAttempt {
  double q_from = 0.0;
  double q_target = 0.0;
  double dq = 0.0;
  bool accepted = false;
  NewtonOutcome newton;
};

struct ContinuationOutcome {
  ContinuationStatus status = ContinuationStatus::StepFloorReached;
  HeadState state;       ///< last accepted state
  double q_reached = 0.0;
  std::vector<ContinuationAttempt> attempts;
  int successful_steps = 0;
  int failed_steps = 0;
  int newton_iterations = 0; ///< summed over all attempts, failed ones included
  int linear_iterations_q0 = 0;
  double linear_res_l2 = 0.0; ///< q = 0 residual after the linear solve
  double linear_res_inf = 0.0;

  [[nodiscard]] bool solved() const noexcept { return status == ContinuationStatus::Solved; }
};

/// Next continuation increment, never past q = 1.
double q_schedule_step(double q, double dq_last, double growth = 2.0);

/// Runs one Newton attempt at parameter `q` from `initial`.
using NewtonAttemptFn = std::function<NewtonOutcome(double q, std::span<const double> initial)>;

/// Adaptive stepping in q from an already computed q = 0 solution.
ContinuationOutcome continuation_drive(std::span<const double> q0_solution,
                                       const NewtonAttemptFn& attempt,
                                       const ContinuationConfig& config);

/// Solves the q = 0 (unit relative permeability) problem with one linear
/// solve around `initial`.  Seepage faces take their state from `initial`.
HeadState solve_linear_problem(const FlowModel& model, std::span<const double> initial,
                               KrScheme kr_scheme, const LinearSolverConfig& config,
                               int* linear_iterations = nullptr);

/// Full continuation: linear solve at q = 0, then Newton up to q = 1.
/// Throws LinearSolverError if the q = 0 solve fails.
ContinuationOutcome continuation_solve(const FlowModel& model, std::span<const double> initial,
                                       KrScheme kr_scheme, const NewtonConfig& newton,
                                       const ContinuationConfig& config);

} // namespace richards
