#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "richards/discretization.hpp"
#include "richards/sparse.hpp"

namespace richards {

/// Residual and Jacobian provider consumed by the Newton solver.
class NonlinearProblem {
public:
  virtual ~NonlinearProblem() = default;

  [[nodiscard]] virtual std::size_t size() const = 0;
  [[nodiscard]] virtual std::vector<double> residual(std::span<const double> x) const = 0;
  [[nodiscard]] virtual SparseMatrix jacobian(std::span<const double> x) const = 0;
};

/// Steady, continuation-parameterised finite-volume system.
class SteadyProblem final : public NonlinearProblem {
public:
  SteadyProblem(const FlowModel& model, AssemblyOptions options)
      : model_(model), options_(options) {}

  [[nodiscard]] std::size_t size() const override { return model_.num_cells(); }
  [[nodiscard]] std::vector<double> residual(std::span<const double> x) const override {
    return assemble_steady_residual(model_, x, options_);
  }
  [[nodiscard]] SparseMatrix jacobian(std::span<const double> x) const override {
    return assemble_jacobian_system(model_, x, options_).matrix;
  }
  [[nodiscard]] const AssemblyOptions& options() const noexcept { return options_; }

private:
  const FlowModel& model_;
  AssemblyOptions options_;
};

/// One implicit-Euler step of the transient equation.
class TransientStepProblem final : public NonlinearProblem {
public:
  TransientStepProblem(const FlowModel& model, std::span<const double> old_state, double dt,
                       KrScheme kr_scheme)
      : model_(model), old_(old_state.begin(), old_state.end()), dt_(dt), kr_scheme_(kr_scheme) {}

  [[nodiscard]] std::size_t size() const override { return model_.num_cells(); }
  [[nodiscard]] std::vector<double> residual(std::span<const double> x) const override {
    return assemble_transient_residual(model_, x, old_, dt_, kr_scheme_);
  }
  [[nodiscard]] SparseMatrix jacobian(std::span<const double> x) const override {
    return assemble_transient_jacobian_system(model_, x, old_, dt_, kr_scheme_).matrix;
  }

private:
  const FlowModel& model_;
  std::vector<double> old_;
  double dt_;
  KrScheme kr_scheme_;
};

} // namespace richards
