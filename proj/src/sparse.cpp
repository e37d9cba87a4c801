#include "richards/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace richards {

SparseMatrix::SparseMatrix(std::size_t n, std::vector<std::vector<std::size_t>> pattern) {
  if (pattern.size() != n) {
    throw std::invalid_argument("sparsity pattern has wrong number of rows");
  }
  row_ptr_.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    auto& row = pattern[i];
    row.push_back(i);
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    if (row.back() >= n) {
      throw std::invalid_argument("column index out of range in row " + std::to_string(i));
    }
    row_ptr_[i + 1] = row_ptr_[i] + row.size();
    cols_.insert(cols_.end(), row.begin(), row.end());
  }
  values_.assign(cols_.size(), 0.0);
}

SparseMatrix SparseMatrix::from_dense(const std::vector<std::vector<double>>& dense) {
  const std::size_t n = dense.size();
  std::vector<std::vector<std::size_t>> pattern(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (dense[i].size() != n) {
      throw std::invalid_argument("dense matrix is not square");
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (dense[i][j] != 0.0) {
        pattern[i].push_back(j);
      }
    }
  }
  SparseMatrix m(n, std::move(pattern));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p = m.row_ptr_[i]; p < m.row_ptr_[i + 1]; ++p) {
      m.values_[p] = dense[i][m.cols_[p]];
    }
  }
  return m;
}

std::size_t SparseMatrix::find(std::size_t i, std::size_t j) const {
  if (i >= rows()) {
    return npos;
  }
  const auto first = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i]);
  const auto last = cols_.begin() + static_cast<std::ptrdiff_t>(row_ptr_[i + 1]);
  const auto it = std::lower_bound(first, last, j);
  if (it == last || *it != j) {
    return npos;
  }
  return static_cast<std::size_t>(it - cols_.begin());
}

double& SparseMatrix::at(std::size_t i, std::size_t j) {
  const std::size_t p = find(i, j);
  if (p == npos) {
    throw std::out_of_range("entry (" + std::to_string(i) + ", " + std::to_string(j) +
                            ") not in sparsity pattern");
  }
  return values_[p];
}

double SparseMatrix::get(std::size_t i, std::size_t j) const {
  const std::size_t p = find(i, j);
  return p == npos ? 0.0 : values_[p];
}

void SparseMatrix::set_zero() { std::fill(values_.begin(), values_.end(), 0.0); }

void SparseMatrix::multiply(std::span<const double> x, std::span<double> y) const {
  const std::size_t n = rows();
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t p = row_ptr_[i]; p < row_ptr_[i + 1]; ++p) {
      sum += values_[p] * x[cols_[p]];
    }
    y[i] = sum;
  }
}

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    s += a[i] * b[i];
  }
  return s;
}

double norm2(std::span<const double> v) { return std::sqrt(dot(v, v)); }

double norm_inf(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) {
    if (std::isnan(x)) {
      return x;
    }
    m = std::max(m, std::abs(x));
  }
  return m;
}

} // namespace richards
