#include "richards/pseudotransient.hpp"

#include <algorithm>
#include <stdexcept>

namespace richards {

void PseudoTransientConfig::validate(int newton_maxit) const {
  if (!(dt_min > 0.0 && dt_min <= dt_init && dt_init <= dt_max)) {
    throw std::invalid_argument("time steps must satisfy 0 < dt_min <= dt_init <= dt_max");
  }
  if (!(growth > 1.0) || !(shrink > 0.0 && shrink < 1.0)) {
    throw std::invalid_argument("time step growth must exceed 1 and shrink lie in (0, 1)");
  }
  if (numit_inc < 0 || numit_inc >= newton_maxit) {
    throw std::invalid_argument("numit_inc must be non-negative and below maxit");
  }
  if (max_steps < 1) {
    throw std::invalid_argument("max_steps must be at least 1");
  }
}

std::string_view to_string(PseudoTransientStatus status) {
  switch (status) {
  case PseudoTransientStatus::SteadyStateReached: return "steady_state_reached";
  case PseudoTransientStatus::StepFloorReached: return "step_floor_reached";
  case PseudoTransientStatus::MaxStepsExceeded: return "max_steps_exceeded";
  }
  return "unknown";
}

PseudoTransientOutcome pseudo_transient_drive(std::span<const double> initial,
                                              const TimeStepFn& step,
                                              const SteadyResidualFn& steady_residual,
                                              const PseudoTransientConfig& config) {
  PseudoTransientOutcome out;
  out.state.assign(initial.begin(), initial.end());

  const std::vector<double> r0 = steady_residual(out.state);
  out.initial_steady_l2 = norm2(r0);
  if (config.steady.satisfied(out.initial_steady_l2, norm_inf(r0), out.initial_steady_l2)) {
    out.status = PseudoTransientStatus::SteadyStateReached;
    return out;
  }

  double dt = config.dt_init;
  for (int attempt = 1; attempt <= config.max_steps; ++attempt) {
    PseudoTransientStep rec;
    rec.index = attempt;
    rec.dt = dt;
    // failed steps restart from the last accepted state
    rec.newton = step(out.state, dt);
    out.newton_iterations += rec.newton.iterations;

    if (!rec.newton.converged()) {
      ++out.failed_steps;
      rec.time = out.time;
      out.steps.push_back(std::move(rec));
      const double next = dt * config.shrink;
      if (next < config.dt_min) {
        out.status = PseudoTransientStatus::StepFloorReached;
        return out;
      }
      dt = next;
      continue;
    }

    rec.accepted = true;
    ++out.successful_steps;
    out.state = rec.newton.state;
    out.time += dt;
    rec.time = out.time;
    const std::vector<double> r = steady_residual(out.state);
    rec.steady_l2 = norm2(r);
    rec.steady_inf = norm_inf(r);
    const bool steady = config.steady.satisfied(rec.steady_l2, rec.steady_inf, out.initial_steady_l2);
    const int iterations = rec.newton.iterations;
    out.steps.push_back(std::move(rec));
    if (config.record_states) {
      out.states.push_back(out.state);
    }
    if (steady) {
      out.status = PseudoTransientStatus::SteadyStateReached;
      return out;
    }
    if (iterations <= config.numit_inc) {
      dt = std::min(dt * config.growth, config.dt_max);
    }
  }
  out.status = PseudoTransientStatus::MaxStepsExceeded;
  return out;
}

PseudoTransientOutcome pseudo_transient_solve(const FlowModel& model,
                                              std::span<const double> initial,
                                              KrScheme kr_scheme, const NewtonConfig& newton,
                                              const PseudoTransientConfig& config) {
  config.validate(newton.maxit);
  NewtonConfig in_step = newton;
  in_step.line_search = config.line_search;
  auto step = [&](std::span<const double> old_state, double dt) {
    const TransientStepProblem problem(model, old_state, dt, kr_scheme);
    return newton_solve(problem, old_state, in_step);
  };
  const AssemblyOptions steady_opts{1.0, ContinuationKind::Power, kr_scheme};
  auto steady = [&](std::span<const double> h) {
    return assemble_steady_residual(model, h, steady_opts);
  };
  return pseudo_transient_drive(initial, step, steady, config);
}

} // namespace richards
