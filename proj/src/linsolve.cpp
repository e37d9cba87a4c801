#include "richards/linsolve.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace richards {

void LinearSolverConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw std::invalid_argument("linear solver tolerances must be positive");
  }
  if (max_iters < 1) {
    throw std::invalid_argument("linear solver max_iters must be at least 1");
  }
  if (ilu_level < 0) {
    throw std::invalid_argument("ILU fill level must be non-negative");
  }
}

namespace {

/// Symbolic phase: pattern of the level-k factors.
std::vector<std::vector<std::size_t>> ilu_pattern(const SparseMatrix& a, int level) {
  const std::size_t n = a.rows();
  const auto& rp = a.row_ptr();
  const auto& cols = a.cols();
  // per-row (column, level) of the upper part, needed by later rows
  std::vector<std::vector<std::pair<std::size_t, int>>> upper(n);
  std::vector<std::vector<std::size_t>> pattern(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::map<std::size_t, int> row;
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      row.emplace(cols[p], 0);
    }
    row.emplace(i, 0);
    for (auto it = row.begin(); it != row.end() && it->first < i; ++it) {
      const std::size_t k = it->first;
      const int lev_ik = it->second;
      for (const auto& [j, lev_kj] : upper[k]) {
        const int lev = lev_ik + lev_kj + 1;
        if (lev > level) {
          continue;
        }
        auto [pos, inserted] = row.emplace(j, lev);
        if (!inserted) {
          pos->second = std::min(pos->second, lev);
        }
      }
    }
    pattern[i].reserve(row.size());
    for (const auto& [j, lev] : row) {
      pattern[i].push_back(j);
      if (j > i) {
        upper[i].emplace_back(j, lev);
      }
    }
  }
  return pattern;
}

} // namespace

IluPreconditioner IluPreconditioner::factorize(const SparseMatrix& a, int level,
                                               double diagonal_shift) {
  const std::size_t n = a.rows();
  IluPreconditioner ilu;
  ilu.shift_ = diagonal_shift;
  ilu.lu_ = level == 0 ? a : SparseMatrix(n, ilu_pattern(a, level));
  auto& lu = ilu.lu_;
  if (level != 0) {
    lu.set_zero();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t p = a.row_ptr()[i]; p < a.row_ptr()[i + 1]; ++p) {
        lu.at(i, a.cols()[p]) = a.values()[p];
      }
    }
  }
  const auto& rp = lu.row_ptr();
  const auto& cols = lu.cols();
  auto& vals = lu.values();
  ilu.diag_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    ilu.diag_[i] = lu.find(i, i);
    vals[ilu.diag_[i]] += diagonal_shift;
  }

  std::vector<std::size_t> position(n, SparseMatrix::npos);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      position[cols[p]] = p;
    }
    for (std::size_t p = rp[i]; p < rp[i + 1] && cols[p] < i; ++p) {
      const std::size_t k = cols[p];
      vals[p] /= vals[ilu.diag_[k]];
      const double lik = vals[p];
      for (std::size_t q = ilu.diag_[k] + 1; q < rp[k + 1]; ++q) {
        const std::size_t target = position[cols[q]];
        if (target != SparseMatrix::npos) {
          vals[target] -= lik * vals[q];
        }
      }
    }
    const double pivot = vals[ilu.diag_[i]];
    if (pivot == 0.0 || !std::isfinite(pivot)) {
      throw LinearSolverError(LinearSolverError::Kind::ZeroPivot,
                              "zero pivot in ILU factorization at row " + std::to_string(i));
    }
    for (std::size_t p = rp[i]; p < rp[i + 1]; ++p) {
      position[cols[p]] = SparseMatrix::npos;
    }
  }
  return ilu;
}

void IluPreconditioner::apply(std::span<const double> y, std::span<double> x) const {
  const std::size_t n = lu_.rows();
  const auto& rp = lu_.row_ptr();
  const auto& cols = lu_.cols();
  const auto& vals = lu_.values();
  for (std::size_t i = 0; i < n; ++i) {
    double s = y[i];
    for (std::size_t p = rp[i]; p < diag_[i]; ++p) {
      s -= vals[p] * x[cols[p]];
    }
    x[i] = s;
  }
  for (std::size_t i = n; i-- > 0;) {
    double s = x[i];
    for (std::size_t p = diag_[i] + 1; p < rp[i + 1]; ++p) {
      s -= vals[p] * x[cols[p]];
    }
    x[i] = s / vals[diag_[i]];
  }
}

IluPreconditioner make_preconditioner(const SparseMatrix& a, int level) {
  try {
    return IluPreconditioner::factorize(a, level);
  } catch (const LinearSolverError& e) {
    if (e.kind() != LinearSolverError::Kind::ZeroPivot) {
      throw;
    }
    double max_diag = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
      max_diag = std::max(max_diag, std::abs(a.get(i, i)));
    }
    return IluPreconditioner::factorize(a, level, 1e-8 * max_diag);
  }
}

namespace {

void residual(const SparseMatrix& a, std::span<const double> b, std::span<const double> x,
              std::span<double> r) {
  a.multiply(x, r);
  for (std::size_t i = 0; i < r.size(); ++i) {
    r[i] = b[i] - r[i];
  }
}

} // namespace

LinearSolveResult bicgstab_solve(const SparseMatrix& a, std::span<const double> rhs,
                                 const IluPreconditioner& preconditioner,
                                 const LinearSolverConfig& config) {
  const std::size_t n = a.rows();
  if (rhs.size() != n || preconditioner.size() != n) {
    throw std::invalid_argument("linear system dimensions do not agree");
  }
  const double bnorm = norm2(rhs);
  if (!std::isfinite(bnorm)) {
    throw LinearSolverError(LinearSolverError::Kind::NonFinite, "non-finite right-hand side");
  }
  const double tol = std::max(config.rel_tol * bnorm, config.abs_tol);

  LinearSolveResult result;
  result.solution.assign(n, 0.0);
  auto& x = result.solution;
  std::vector<double> r(rhs.begin(), rhs.end());
  if (bnorm <= tol) {
    result.residual_norm = bnorm;
    return result;
  }

  std::vector<double> r_hat(r), p(n, 0.0), v(n, 0.0), p_hat(n), s(n), s_hat(n), t(n);
  double rho = 1.0;
  double alpha = 1.0;
  double omega = 1.0;
  int restarts = 0;

  auto restart = [&](const char* reason) {
    residual(a, rhs, x, r);
    if (++restarts > 3) {
      throw LinearSolverError(LinearSolverError::Kind::Breakdown,
                              std::string("BiCGSTAB breakdown: ") + reason);
    }
    r_hat = r;
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(v.begin(), v.end(), 0.0);
    rho = alpha = omega = 1.0;
  };

  // Accepts x only if the recomputed residual meets the tolerance.
  auto verified = [&]() {
    residual(a, rhs, x, r);
    result.residual_norm = norm2(r);
    return result.residual_norm <= tol;
  };

  for (int it = 1; it <= config.max_iters; ++it) {
    result.iterations = it;
    const double rho_new = dot(r_hat, r);
    if (!std::isfinite(rho_new)) {
      throw LinearSolverError(LinearSolverError::Kind::NonFinite, "non-finite BiCGSTAB iterate");
    }
    if (std::abs(rho_new) <= 1e-300 || std::abs(rho_new) < 1e-30 * norm2(r_hat) * norm2(r)) {
      if (verified()) {
        return result;
      }
      restart("rho vanished");
      continue;
    }
    const double beta = (rho_new / rho) * (alpha / omega);
    rho = rho_new;
    for (std::size_t i = 0; i < n; ++i) {
      p[i] = r[i] + beta * (p[i] - omega * v[i]);
    }
    preconditioner.apply(p, p_hat);
    a.multiply(p_hat, v);
    const double rv = dot(r_hat, v);
    if (rv == 0.0 || !std::isfinite(rv)) {
      restart("(r_hat, v) vanished");
      continue;
    }
    alpha = rho / rv;
    for (std::size_t i = 0; i < n; ++i) {
      s[i] = r[i] - alpha * v[i];
    }
    if (norm2(s) <= tol) {
      for (std::size_t i = 0; i < n; ++i) {
        x[i] += alpha * p_hat[i];
      }
      if (verified()) {
        return result;
      }
      restart("recurrence residual drifted");
      continue;
    }
    preconditioner.apply(s, s_hat);
    a.multiply(s_hat, t);
    const double tt = dot(t, t);
    omega = tt > 0.0 ? dot(t, s) / tt : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] += alpha * p_hat[i] + omega * s_hat[i];
      r[i] = s[i] - omega * t[i];
    }
    if (norm2(r) <= tol) {
      if (verified()) {
        return result;
      }
      restart("recurrence residual drifted");
      continue;
    }
    if (omega == 0.0) {
      restart("omega vanished");
    }
  }
  if (verified()) {
    return result;
  }
  throw LinearSolverError(LinearSolverError::Kind::IterationLimit,
                          "BiCGSTAB did not converge in " + std::to_string(config.max_iters) +
                              " iterations (residual " + std::to_string(result.residual_norm) +
                              ")");
}

LinearSolveResult solve_linear_system(const SparseMatrix& a, std::span<const double> rhs,
                                      const LinearSolverConfig& config) {
  config.validate();
  return bicgstab_solve(a, rhs, make_preconditioner(a, config.ilu_level), config);
}

} // namespace richards
