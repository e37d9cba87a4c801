#pragma once

#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "richards/discretization.hpp"
#include "richards/newton.hpp"

namespace richards {

struct PseudoTransientConfig {
  double dt_init = 1e-2; ///< day
  double dt_min = 1e-8;
  double dt_max = 1e6;
  double growth = 1.5;
  double shrink = 0.5;
  int numit_inc = 15;    ///< grow dt only after steps needing at most this many iterations
  int max_steps = 10000; ///< accepted plus failed steps
  bool line_search = false; ///< line search inside each time step
  bool record_states = false;
  ConvergenceTest steady;

  void validate(int newton_maxit) const;
};

enum class PseudoTransientStatus { SteadyStateReached, StepFloorReached, MaxStepsExceeded };

std::string_view to_string(PseudoTransientStatus status);

struct PseudoTransientStep {
  int index = 0; ///< attempt counter, starting at 1
  double dt = 0.0;
  double time = 0.0; ///< simulated time after the step (accepted steps only)
  bool accepted = false;
  NewtonOutcome newton;
  double steady_l2 = 0.0;
  double steady_inf = 0.0;
};

struct PseudoTransientOutcome {
  PseudoTransientStatus status = PseudoTransientStatus::MaxStepsExceeded;
  HeadState state;
  std::vector<PseudoTransientStep> steps;
  std::vector<HeadState> states; ///< accepted states, when record_states is set
  int successful_steps = 0;
  int failed_steps = 0;
  int newton_iterations = 0;
  double time = 0.0;
  double initial_steady_l2 = 0.0;

  [[nodiscard]] bool reached_steady_state() const noexcept {
    return status == PseudoTransientStatus::SteadyStateReached;
  }
};

using TimeStepFn = std::function<NewtonOutcome(std::span<const double> old_state, double dt)>;
using SteadyResidualFn = std::function<std::vector<double>(std::span<const double>)>;

/// Time stepping with the step-size control, independent of the physics.
PseudoTransientOutcome pseudo_transient_drive(std::span<const double> initial,
                                              const TimeStepFn& step,
                                              const SteadyResidualFn& steady_residual,
                                              const PseudoTransientConfig& config);

/// Implicit-Euler pseudo-time stepping of the flow model to steady state.
PseudoTransientOutcome pseudo_transient_solve(const FlowModel& model,
                                              std::span<const double> initial,
                                              KrScheme kr_scheme, const NewtonConfig& newton,
                                              const PseudoTransientConfig& config);

} // namespace richards
