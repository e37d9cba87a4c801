#include "richards/continuation.hpp"

#include <algorithm>
#include <stdexcept>

namespace richards {

void ContinuationConfig::validate() const {
  if (!(dq_min > 0.0 && dq_min < 1.0)) {
    throw std::invalid_argument("dq_min must lie in (0, 1)");
  }
  if (!(growth >= 1.0)) {
    throw std::invalid_argument("continuation growth factor must be >= 1");
  }
  if (!(shrink > 0.0 && shrink < 1.0)) {
    throw std::invalid_argument("continuation shrink factor must lie in (0, 1)");
  }
  if (!(initial_dq_last > 0.0)) {
    throw std::invalid_argument("initial dq_last must be positive");
  }
}

std::string_view to_string(ContinuationStatus status) {
  return status == ContinuationStatus::Solved ? "solved" : "step_floor_reached";
}

double q_schedule_step(double q, double dq_last, double growth) {
  return std::min(1.0 - q, growth * dq_last);
}

ContinuationOutcome continuation_drive(std::span<const double> q0_solution,
                                       const NewtonAttemptFn& attempt,
                                       const ContinuationConfig& config) {
  config.validate();
  ContinuationOutcome out;
  out.state.assign(q0_solution.begin(), q0_solution.end());
  double q = 0.0;
  double dq_last = config.initial_dq_last;

  while (q < 1.0) {
    double dq = q_schedule_step(q, dq_last, config.growth);
    bool advanced = false;
    while (dq > config.dq_min) {
      // land exactly on 1 when the step closes the gap
      const double target = dq == 1.0 - q ? 1.0 : q + dq;
      ContinuationAttempt rec{q, target, dq, false, attempt(target, out.state)};
      out.newton_iterations += rec.newton.iterations;
      if (rec.newton.converged()) {
        rec.accepted = true;
        out.state = rec.newton.state;
        ++out.successful_steps;
        out.attempts.push_back(std::move(rec));
        dq_last = dq;
        q = target;
        advanced = true;
        break;
      }
      ++out.failed_steps;
      out.attempts.push_back(std::move(rec));
      dq *= config.shrink;
    }
    if (!advanced) {
      out.status = ContinuationStatus::StepFloorReached;
      out.q_reached = q;
      return out;
    }
  }
  out.status = ContinuationStatus::Solved;
  out.q_reached = q;
  return out;
}

HeadState solve_linear_problem(const FlowModel& model, std::span<const double> initial,
                               KrScheme kr_scheme, const LinearSolverConfig& config,
                               int* linear_iterations) {
  const AssemblyOptions linear{0.0, ContinuationKind::Power, kr_scheme};
  SparseSystem sys = assemble_jacobian_system(model, initial, linear);
  LinearSolveResult res = solve_linear_system(sys.matrix, sys.rhs, config);
  if (linear_iterations) {
    *linear_iterations = res.iterations;
  }
  HeadState h(initial.begin(), initial.end());
  for (std::size_t i = 0; i < h.size(); ++i) {
    h[i] += res.solution[i];
  }
  return h;
}

ContinuationOutcome continuation_solve(const FlowModel& model, std::span<const double> initial,
                                       KrScheme kr_scheme, const NewtonConfig& newton,
                                       const ContinuationConfig& config) {
  int lin_iters = 0;
  const HeadState h0 = solve_linear_problem(model, initial, kr_scheme, newton.linear, &lin_iters);
  auto attempt = [&](double q, std::span<const double> start) {
    const SteadyProblem problem(model, AssemblyOptions{q, config.kind, kr_scheme});
    return newton_solve(problem, start, newton);
  };
  ContinuationOutcome out = continuation_drive(h0, attempt, config);
  out.linear_iterations_q0 = lin_iters;
  const auto r0 = assemble_steady_residual(model, h0, AssemblyOptions{0.0, config.kind, kr_scheme});
  out.linear_res_l2 = norm2(r0);
  out.linear_res_inf = norm_inf(r0);
  return out;
}

} // namespace richards
