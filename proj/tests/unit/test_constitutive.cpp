#include <doctest.h>

#include <cmath>
#include <random>

#include "richards/constitutive.hpp"

using namespace richards;

namespace {

const CellGeometry kUnitCell{{0.5, 0.5, 0.5}, 1.0, 0.0, 1.0};

// Straight transcription of the piecewise law, written independently of the library.
double theta_oracle(double h, double z_lo, double z_hi, double phi, double a_phi, double a_theta) {
  const double h_r = z_lo + a_phi * (z_hi - z_lo);
  if (h > z_hi) return phi;
  if (h > h_r) return phi * (h - z_lo) / (z_hi - z_lo);
  return std::max(0.0, phi * (a_phi - a_theta * (h_r - h)));
}

} // namespace

TEST_CASE("water content examples") {
  const MediumProperties m;
  CHECK(water_content(2.0, kUnitCell, m) == doctest::Approx(0.3));
  CHECK(water_content(0.5, kUnitCell, m) == doctest::Approx(0.15));
  CHECK(water_content(-9.99, kUnitCell, m) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(water_content(-50.0, kUnitCell, m) == 0.0);
}

TEST_CASE("relative permeability examples") {
  const MediumProperties m;
  CHECK(relative_permeability(2.0, kUnitCell, m) == doctest::Approx(1.0));
  CHECK(relative_permeability(0.5, kUnitCell, m) == doctest::Approx(0.5));
  CHECK(relative_permeability(-50.0, kUnitCell, m) == m.kr_floor);
}

TEST_CASE("water content derivative examples") {
  const MediumProperties m;
  CHECK(water_content_derivative(0.5, kUnitCell, m) == doctest::Approx(0.3));
  CHECK(water_content_derivative(2.0, kUnitCell, m) == 0.0);
  CHECK(water_content_derivative(-50.0, kUnitCell, m) == 0.0);
  CHECK(water_content_derivative(-5.0, kUnitCell, m) == doctest::Approx(0.3 * 1e-3));
}

TEST_CASE("water content agrees with the independent oracle on random cells") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int n = 0; n < 1000; ++n) {
    const double z_lo = -5.0 + 10.0 * u(rng);
    const double dz = 0.05 + 2.0 * u(rng);
    const CellGeometry cell{{0, 0, z_lo + dz / 2}, dz, z_lo, z_lo + dz};
    MediumProperties m;
    m.porosity = 0.05 + 0.5 * u(rng);
    m.alpha_phi = 0.001 + 0.1 * u(rng);
    m.alpha_theta = 1e-4 + 1e-2 * u(rng);
    const double h = z_lo - 20.0 + 25.0 * u(rng);
    const double expected = theta_oracle(h, z_lo, z_lo + dz, m.porosity, m.alpha_phi, m.alpha_theta);
    CHECK(water_content(h, cell, m) == doctest::Approx(expected).epsilon(1e-12));
    const double kr = relative_permeability(h, cell, m);
    CHECK(kr >= m.kr_floor);
    CHECK(kr <= 1.0);
    const double theta = water_content(h, cell, m);
    CHECK(theta >= 0.0);
    CHECK(theta <= m.porosity);
  }
}

TEST_CASE("water content is continuous at the branch points and non-decreasing") {
  const MediumProperties m;
  const double h_r = residual_head(kUnitCell, m);
  for (double b : {h_r, kUnitCell.z_max}) {
    const double lo = water_content(b - 1e-10, kUnitCell, m);
    const double hi = water_content(b + 1e-10, kUnitCell, m);
    CHECK(std::abs(hi - lo) < 1e-9);
  }
  double prev = water_content(-30.0, kUnitCell, m);
  for (double h = -30.0; h <= 3.0; h += 1e-3) {
    const double t = water_content(h, kUnitCell, m);
    CHECK(t >= prev);
    prev = t;
  }
}

TEST_CASE("water content derivative matches finite differences away from breakpoints") {
  const MediumProperties m;
  for (double h : {-15.0, -3.0, 0.005, 0.3, 0.77, 1.5}) {
    const double e = 1e-7;
    const double fd = (water_content(h + e, kUnitCell, m) - water_content(h - e, kUnitCell, m)) / (2 * e);
    CHECK(water_content_derivative(h, kUnitCell, m) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("continuation functions: exact endpoints and monotonicity in q") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (ContinuationKind kind : {ContinuationKind::Power, ContinuationKind::Linear}) {
    for (int n = 0; n < 1000; ++n) {
      const double kr = 1e-6 + (1.0 - 1e-6) * u(rng);
      CHECK(continuation_permeability(kr, 0.0, kind) == 1.0);
      CHECK(continuation_permeability(kr, 1.0, kind) == kr);
      double q1 = u(rng);
      double q2 = u(rng);
      if (q1 > q2) std::swap(q1, q2);
      const double k1 = continuation_permeability(kr, q1, kind);
      const double k2 = continuation_permeability(kr, q2, kind);
      // kr <= 1, so the continued permeability decreases from 1 towards kr
      CHECK(k2 <= k1);
      CHECK(k1 <= 1.0);
      CHECK(k2 >= kr);
    }
  }
}

TEST_CASE("continuation functions: closed forms and domain") {
  CHECK(continuation_permeability(0.25, 0.5, ContinuationKind::Power) == doctest::Approx(0.5));
  CHECK(continuation_permeability(0.25, 0.5, ContinuationKind::Linear) == doctest::Approx(0.625));
  CHECK_THROWS_AS(continuation_permeability(0.5, 1.5, ContinuationKind::Power), std::domain_error);
  CHECK_THROWS_AS(continuation_permeability(0.5, -0.1, ContinuationKind::Linear), std::domain_error);
}

TEST_CASE("continuation derivative through dual numbers") {
  const auto kr = Dual<1>::variable(0.25, 0);
  const auto p = continuation_permeability(kr, 0.5, ContinuationKind::Power);
  CHECK(p.grad[0] == doctest::Approx(0.5 * std::pow(0.25, -0.5)));
  const auto l = continuation_permeability(kr, 0.5, ContinuationKind::Linear);
  CHECK(l.grad[0] == doctest::Approx(0.5));
}

TEST_CASE("medium validation") {
  MediumProperties m;
  CHECK_NOTHROW(m.validate());
  m.porosity = 0.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
  m = MediumProperties{};
  m.conductivity[2] = -1.0;
  CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
