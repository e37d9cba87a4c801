#include "richards/constitutive.hpp"

#include <cmath>

namespace richards {

void MediumProperties::validate() const {
  static constexpr const char* kAxes[] = {"k_xx", "k_yy", "k_zz"};
  for (int a = 0; a < 3; ++a) {
    if (!(conductivity[a] > 0.0) || !std::isfinite(conductivity[a])) {
      throw std::invalid_argument(std::string(kAxes[a]) + " must be positive");
    }
  }
  if (!(porosity > 0.0 && porosity < 1.0)) {
    throw std::invalid_argument("porosity must lie in (0, 1)");
  }
  if (!(alpha_phi > 0.0 && alpha_phi < 1.0)) {
    throw std::invalid_argument("alpha_phi must lie in (0, 1)");
  }
  if (!(alpha_theta > 0.0)) {
    throw std::invalid_argument("alpha_theta must be positive");
  }
  if (!(specific_storage >= 0.0)) {
    throw std::invalid_argument("specific_storage must be non-negative");
  }
  if (!(kr_floor > 0.0 && kr_floor <= 1.0)) {
    throw std::invalid_argument("kr_floor must lie in (0, 1]");
  }
}

std::string_view to_string(ContinuationKind kind) {
  return kind == ContinuationKind::Power ? "power" : "linear";
}

double water_content_derivative(double head, const CellGeometry& cell, const MediumProperties& m) {
  return water_content(Dual<1>::variable(head, 0), cell, m).grad[0];
}

} // namespace richards
