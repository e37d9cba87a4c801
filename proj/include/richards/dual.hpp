#pragma once

#include <array>
#include <cmath>
#include <cstddef>

namespace richards {

/// Forward-mode dual number carrying N partial derivatives.
///
/// Only the operations used by the face-flux and storage kernels are
/// provided.  Comparisons act on the value part so that branch selection in
/// templated kernels is identical for `double` and `Dual<N>`.
template <std::size_t N>
struct Dual {
  double value = 0.0;
  std::array<double, N> grad{};

  constexpr Dual() = default;
  constexpr Dual(double v) : value(v) {} // NOLINT(google-explicit-constructor)

  static constexpr Dual variable(double v, std::size_t slot) {
    Dual d(v);
    d.grad[slot] = 1.0;
    return d;
  }

  constexpr Dual& operator+=(const Dual& o) {
    value += o.value;
    for (std::size_t i = 0; i < N; ++i) grad[i] += o.grad[i];
    return *this;
  }
  constexpr Dual& operator-=(const Dual& o) {
    value -= o.value;
    for (std::size_t i = 0; i < N; ++i) grad[i] -= o.grad[i];
    return *this;
  }
  constexpr Dual& operator*=(const Dual& o) {
    for (std::size_t i = 0; i < N; ++i) grad[i] = grad[i] * o.value + value * o.grad[i];
    value *= o.value;
    return *this;
  }
  constexpr Dual& operator/=(const Dual& o) {
    const double inv = 1.0 / o.value;
    for (std::size_t i = 0; i < N; ++i) grad[i] = (grad[i] - value * inv * o.grad[i]) * inv;
    value *= inv;
    return *this;
  }

  friend constexpr Dual operator+(Dual a, const Dual& b) { return a += b; }
  friend constexpr Dual operator-(Dual a, const Dual& b) { return a -= b; }
  friend constexpr Dual operator*(Dual a, const Dual& b) { return a *= b; }
  friend constexpr Dual operator/(Dual a, const Dual& b) { return a /= b; }
  friend constexpr Dual operator-(Dual a) {
    a.value = -a.value;
    for (auto& g : a.grad) g = -g;
    return a;
  }

  friend constexpr bool operator<(const Dual& a, const Dual& b) { return a.value < b.value; }
  friend constexpr bool operator>(const Dual& a, const Dual& b) { return a.value > b.value; }
  friend constexpr bool operator<=(const Dual& a, const Dual& b) { return a.value <= b.value; }
  friend constexpr bool operator>=(const Dual& a, const Dual& b) { return a.value >= b.value; }
  friend constexpr bool operator==(const Dual& a, const Dual& b) { return a.value == b.value; }
};

template <std::size_t N>
Dual<N> pow(const Dual<N>& base, double exponent) {
  Dual<N> r(std::pow(base.value, exponent));
  const double slope = exponent * std::pow(base.value, exponent - 1.0);
  for (std::size_t i = 0; i < N; ++i) r.grad[i] = slope * base.grad[i];
  return r;
}

inline double value_of(double x) { return x; }
template <std::size_t N>
double value_of(const Dual<N>& x) {
  return x.value;
}

} // namespace richards
