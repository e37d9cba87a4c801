#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "richards/sparse.hpp"

namespace richards {

struct LinearSolverConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-14;
  int max_iters = 5000;
  int ilu_level = 0;

  void validate() const;
};

class LinearSolverError : public std::runtime_error {
public:
  enum class Kind { ZeroPivot, Breakdown, IterationLimit, NonFinite };

  LinearSolverError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
  Kind kind_;
};

/// Level-of-fill incomplete LU factorization, stored as a single CSR matrix
/// holding the strict lower part of L (unit diagonal implied) and U.
class IluPreconditioner {
public:
  /// Throws LinearSolverError(ZeroPivot) on a zero or non-finite pivot.
  static IluPreconditioner factorize(const SparseMatrix& a, int level, double diagonal_shift = 0.0);

  /// Solves L U x = y.
  void apply(std::span<const double> y, std::span<double> x) const;

  [[nodiscard]] std::size_t size() const noexcept { return lu_.rows(); }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return lu_.nonzeros(); }
  [[nodiscard]] double shift() const noexcept { return shift_; }

private:
  SparseMatrix lu_;
  std::vector<std::size_t> diag_;
  double shift_ = 0.0;
};

/// ILU(k) with one retry using a diagonal shift of 1e-8 * max|diag| when the
/// unshifted factorization hits a zero pivot.
IluPreconditioner make_preconditioner(const SparseMatrix& a, int level);

struct LinearSolveResult {
  std::vector<double> solution;
  int iterations = 0;
  double residual_norm = 0.0; ///< ||b - A x||_2 recomputed from the returned x
};

/// Right-preconditioned BiCGSTAB from a zero initial guess.  Converged when
/// ||b - A x||_2 <= max(rel_tol * ||b||_2, abs_tol).
LinearSolveResult bicgstab_solve(const SparseMatrix& a, std::span<const double> rhs,
                                 const IluPreconditioner& preconditioner,
                                 const LinearSolverConfig& config);

/// Convenience: build the preconditioner and solve.
LinearSolveResult solve_linear_system(const SparseMatrix& a, std::span<const double> rhs,
                                      const LinearSolverConfig& config);

} // namespace richards
