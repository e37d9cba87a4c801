#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace richards {

/// Compressed-row square matrix with a fixed sparsity pattern.
class SparseMatrix {
public:
  SparseMatrix() = default;

  /// `pattern[i]` lists the column indices of row i; duplicates are merged
  /// and the diagonal is always inserted.
  SparseMatrix(std::size_t n, std::vector<std::vector<std::size_t>> pattern);

  static SparseMatrix from_dense(const std::vector<std::vector<double>>& dense);

  [[nodiscard]] std::size_t rows() const noexcept { return row_ptr_.empty() ? 0 : row_ptr_.size() - 1; }
  [[nodiscard]] std::size_t nonzeros() const noexcept { return cols_.size(); }

  /// Reference to a stored entry; throws std::out_of_range if (i, j) is not
  /// in the pattern.
  double& at(std::size_t i, std::size_t j);
  [[nodiscard]] double get(std::size_t i, std::size_t j) const;
  /// Position of (i, j) in the value array, or npos.
  [[nodiscard]] std::size_t find(std::size_t i, std::size_t j) const;

  void set_zero();
  void multiply(std::span<const double> x, std::span<double> y) const;

  [[nodiscard]] const std::vector<std::size_t>& row_ptr() const noexcept { return row_ptr_; }
  [[nodiscard]] const std::vector<std::size_t>& cols() const noexcept { return cols_; }
  [[nodiscard]] const std::vector<double>& values() const noexcept { return values_; }
  [[nodiscard]] std::vector<double>& values() noexcept { return values_; }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
  std::vector<std::size_t> row_ptr_;
  std::vector<std::size_t> cols_;
  std::vector<double> values_;
};

double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);

} // namespace richards
