#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>

#include "richards/dual.hpp"
#include "richards/mesh.hpp"

namespace richards {

/// Soil properties of one region.  Conductivity in m/day, alpha_theta in 1/m,
/// specific storage in 1/m.
struct MediumProperties {
  Vec3 conductivity = {1.0, 1.0, 1.0}; ///< diagonal of the conductivity tensor
  double porosity = 0.3;
  double alpha_phi = 0.01;
  double alpha_theta = 1e-3;
  double specific_storage = 0.0;
  double kr_floor = 1e-6; ///< lower bound on relative permeability

  /// Throws std::invalid_argument naming the first violated bound.
  void validate() const;
};

enum class ContinuationKind { Power, Linear };

std::string_view to_string(ContinuationKind kind);

/// Head below which the third (dry) branch of the water content curve applies.
inline double residual_head(const CellGeometry& cell, const MediumProperties& m) {
  return cell.z_min + m.alpha_phi * (cell.z_max - cell.z_min);
}

/// Piecewise-linear water content of a cell.  Branches are closed on the
/// right (h <= z_max, h <= h_r), and the dry branch is clamped at zero.
template <class T>
T water_content(const T& head, const CellGeometry& cell, const MediumProperties& m) {
  const double phi = m.porosity;
  if (head > T(cell.z_max)) {
    return T(phi);
  }
  const double h_r = residual_head(cell, m);
  if (head > T(h_r)) {
    return T(phi / (cell.z_max - cell.z_min)) * (head - T(cell.z_min));
  }
  T theta = T(phi) * (T(m.alpha_phi) - T(m.alpha_theta) * (T(h_r) - head));
  if (theta <= T(0.0)) {
    return T(0.0);
  }
  return theta;
}

double water_content_derivative(double head, const CellGeometry& cell, const MediumProperties& m);

template <class T>
T saturation(const T& head, const CellGeometry& cell, const MediumProperties& m) {
  return water_content(head, cell, m) / T(m.porosity);
}

template <class T>
T relative_permeability(const T& head, const CellGeometry& cell, const MediumProperties& m) {
  T kr = saturation(head, cell, m);
  if (kr < T(m.kr_floor)) {
    return T(m.kr_floor);
  }
  return kr;
}

/// Continuation of the relative permeability: identity at q = 1, constant 1
/// at q = 0.  Both endpoints are returned exactly.
template <class T>
T continuation_permeability(const T& kr, double q, ContinuationKind kind) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw std::domain_error("continuation parameter outside [0, 1]: " + std::to_string(q));
  }
  if (q == 0.0) {
    return T(1.0);
  }
  if (q == 1.0) {
    return kr;
  }
  if (kind == ContinuationKind::Power) {
    using std::pow;
    return pow(kr, q);
  }
  return T(1.0) + T(q) * (kr - T(1.0));
}

} // namespace richards
