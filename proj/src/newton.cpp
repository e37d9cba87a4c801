#include "richards/newton.hpp"

#include <cmath>
#include <stdexcept>

namespace richards {

double NewtonConfig::omega_min() const { return std::pow(gamma, omega_refinements); }

void NewtonConfig::validate() const {
  if (!(gamma > 0.0 && gamma < 1.0)) {
    throw std::invalid_argument("line-search factor gamma must lie in (0, 1)");
  }
  if (omega_refinements < 0) {
    throw std::invalid_argument("omega_refinements must be non-negative");
  }
  if (maxit < 1) {
    throw std::invalid_argument("maxit must be at least 1");
  }
  if (!(tolerance.eps_rel > 0.0) || !(tolerance.eps_abs > 0.0)) {
    throw std::invalid_argument("Newton tolerances must be positive");
  }
  if (fixed_relaxation && !(*fixed_relaxation > 0.0 && *fixed_relaxation <= 1.0)) {
    throw std::invalid_argument("fixed relaxation must lie in (0, 1]");
  }
  linear.validate();
}

std::string_view to_string(NewtonStatus status) {
  switch (status) {
  case NewtonStatus::Converged: return "converged";
  case NewtonStatus::LineSearchFailed: return "line_search_failed";
  case NewtonStatus::MaxIterExceeded: return "max_iterations_exceeded";
  case NewtonStatus::LinearSolveFailed: return "linear_solve_failed";
  }
  return "unknown";
}

namespace {

HeadState axpy(std::span<const double> x, double omega, std::span<const double> dx) {
  HeadState out(x.begin(), x.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] += omega * dx[i];
  }
  return out;
}

} // namespace

LineSearchResult line_search(const NonlinearProblem& problem, std::span<const double> base,
                             std::span<const double> direction, double base_norm, double gamma,
                             double omega_min) {
  LineSearchResult res;
  // relative slack keeps gamma^k == omega_min inside the sequence
  const double floor = omega_min * (1.0 - 1e-12);
  for (double omega = 1.0; omega >= floor; omega *= gamma) {
    ++res.trials;
    HeadState trial = axpy(base, omega, direction);
    std::vector<double> r = problem.residual(trial);
    const double n2 = norm2(r);
    if (n2 < base_norm) {
      res.accepted = true;
      res.omega = omega;
      res.state = std::move(trial);
      res.residual = std::move(r);
      res.residual_l2 = n2;
      return res;
    }
  }
  return res;
}

NewtonOutcome newton_solve(const NonlinearProblem& problem, std::span<const double> initial,
                           const NewtonConfig& config) {
  config.validate();
  if (initial.size() != problem.size()) {
    throw std::invalid_argument("initial state does not match problem size");
  }
  NewtonOutcome out;
  if (!config.correction.is_default()) {
    out.correction = config.correction.name.empty() ? "custom" : config.correction.name;
  }
  HeadState x(initial.begin(), initial.end());
  std::vector<double> r = problem.residual(x);
  double r_l2 = norm2(r);
  double r_inf = norm_inf(r);
  const double r0_l2 = r_l2;
  out.records.push_back({0, r_l2, r_inf, 0.0, 0, 0});

  auto finish = [&](NewtonStatus status, std::string message = {}) {
    out.status = status;
    out.state = std::move(x);
    out.message = std::move(message);
    return out;
  };

  if (config.tolerance.satisfied(r_l2, r_inf, r0_l2)) {
    return finish(NewtonStatus::Converged);
  }

  for (int k = 0; k < config.maxit; ++k) {
    std::vector<double> minus_r(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) minus_r[i] = -r[i];
    LinearSolveResult lin;
    try {
      lin = solve_linear_system(problem.jacobian(x), minus_r, config.linear);
    } catch (const LinearSolverError& e) {
      return finish(NewtonStatus::LinearSolveFailed, e.what());
    }
    out.iterations = k + 1;

    NewtonIterationRecord rec;
    rec.iteration = k + 1;
    rec.linear_iterations = lin.iterations;
    if (config.fixed_relaxation) {
      rec.omega = *config.fixed_relaxation;
      x = axpy(x, rec.omega, lin.solution);
      r = problem.residual(x);
    } else if (config.line_search && k >= config.line_search_start) {
      LineSearchResult ls =
          line_search(problem, x, lin.solution, r_l2, config.gamma, config.omega_min());
      rec.line_search_trials = ls.trials;
      if (!ls.accepted) {
        rec.res_l2 = r_l2;
        rec.res_inf = r_inf;
        out.records.push_back(rec);
        return finish(NewtonStatus::LineSearchFailed,
                      "no step length reduced the residual at iteration " + std::to_string(k));
      }
      rec.omega = ls.omega;
      x = std::move(ls.state);
      r = std::move(ls.residual);
    } else {
      rec.omega = 1.0;
      x = axpy(x, 1.0, lin.solution);
      r = problem.residual(x);
    }
    if (!config.correction.is_default()) {
      config.correction.apply(x);
      r = problem.residual(x);
    }
    r_l2 = norm2(r);
    r_inf = norm_inf(r);
    rec.res_l2 = r_l2;
    rec.res_inf = r_inf;
    out.records.push_back(rec);
    if (config.tolerance.satisfied(r_l2, r_inf, r0_l2)) {
      return finish(NewtonStatus::Converged);
    }
  }
  return finish(NewtonStatus::MaxIterExceeded,
                "no convergence in " + std::to_string(config.maxit) + " iterations");
}

} // namespace richards
