#include <doctest.h>

#include <cmath>

#include "richards/mesh.hpp"

using namespace richards;

namespace {

std::size_t count_boundary(const Mesh& m) {
  std::size_t n = 0;
  for (const auto& f : m.faces()) n += f.is_boundary() ? 1 : 0;
  return n;
}

} // namespace

TEST_CASE("single cell has six boundary faces and no interior faces") {
  const Mesh m = build_box_grid({1, 1, 1}, {1, 1, 1}, {});
  CHECK(m.num_cells() == 1);
  CHECK(m.num_faces() == 6);
  CHECK(m.num_interior_faces() == 0);
  CHECK(m.num_nodes() == 8);
  for (std::size_t t = 0; t < kBoundaryTagCount; ++t) {
    CHECK(m.boundary_faces(static_cast<BoundaryTag>(t)).size() == 1);
  }
  CHECK(m.cells()[0].volume == doctest::Approx(1.0));
  CHECK(m.cells()[0].z_min == 0.0);
  CHECK(m.cells()[0].z_max == 1.0);
}

TEST_CASE("two cells share one interior face") {
  const Mesh m = build_box_grid({2, 1, 1}, {2, 1, 1}, {});
  CHECK(m.num_interior_faces() == 1);
  CHECK(count_boundary(m) == 10);
  const Face& f = m.faces()[0];
  CHECK_FALSE(f.is_boundary());
  CHECK(f.axis == X);
  CHECK(f.area == doctest::Approx(1.0));
  CHECK(f.half_distance[0] == doctest::Approx(0.5));
  CHECK(f.half_distance[1] == doctest::Approx(0.5));
  const auto g = face_transmissibility_geometry(m, 0);
  CHECK_FALSE(g.boundary);
  CHECK(g.distances[0] + g.distances[1] == doctest::Approx(1.0));
}

TEST_CASE("dam grid counts and geometry") {
  const Mesh m = build_box_grid({10, 0.25, 10}, {40, 1, 40}, {});
  CHECK(m.num_cells() == 1600);
  // x faces 41*40, z faces 40*41, y faces 2*1600
  CHECK(m.num_faces() == 41 * 40 + 40 * 41 + 2 * 1600);
  CHECK(m.num_interior_faces() == 39 * 40 + 40 * 39);
  CHECK(m.boundary_faces(BoundaryTag::XMin).size() == 40);
  CHECK(m.boundary_faces(BoundaryTag::YMax).size() == 1600);

  double volume = 0.0;
  for (const auto& c : m.cells()) volume += c.volume;
  CHECK(volume == doctest::Approx(25.0).epsilon(1e-12));

  for (const auto& f : m.faces()) {
    const double len = std::sqrt(f.normal[0] * f.normal[0] + f.normal[1] * f.normal[1] +
                                 f.normal[2] * f.normal[2]);
    CHECK(std::abs(len - 1.0) < 1e-12);
    CHECK(f.half_distance[0] > 0.0);
    if (f.axis == Y) {
      CHECK(f.half_distance[0] == doctest::Approx(0.125));
    }
  }
}

TEST_CASE("every cell is closed: signed outward area vectors sum to zero") {
  const Mesh m = build_box_grid({3, 2, 1}, {3, 2, 4}, {});
  for (std::size_t c = 0; c < m.num_cells(); ++c) {
    Vec3 s{0, 0, 0};
    CHECK(m.cell_faces(c).size() == 6);
    for (const auto& cf : m.cell_faces(c)) {
      const Face& f = m.faces()[cf.face];
      for (int d = 0; d < 3; ++d) s[d] += cf.sign * f.area * f.normal[d];
    }
    for (int d = 0; d < 3; ++d) CHECK(std::abs(s[d]) < 1e-12);
  }
}

TEST_CASE("interior faces precede boundary faces and point from cell 0 to cell 1") {
  const Mesh m = build_box_grid({2, 2, 2}, {2, 2, 2}, {});
  for (std::size_t f = 0; f < m.num_faces(); ++f) {
    const Face& face = m.faces()[f];
    CHECK(face.is_boundary() == (f >= m.num_interior_faces()));
    if (!face.is_boundary()) {
      const auto& c0 = m.cells()[face.cells[0]].centroid;
      const auto& c1 = m.cells()[face.cells[1]].centroid;
      double proj = 0.0;
      for (int d = 0; d < 3; ++d) proj += (c1[d] - c0[d]) * face.normal[d];
      CHECK(proj > 0.0);
    }
  }
  CHECK(m.cell_index(1, 1, 1) == 7);
}

TEST_CASE("region layers assign cells by z and reject gaps or overlaps") {
  const std::vector<RegionLayer> ok = {{0, 1, 3}, {1, 4, 7}};
  const Mesh m = build_box_grid({1, 1, 4}, {1, 1, 4}, ok);
  CHECK(m.cell_region() == std::vector<int>{3, 7, 7, 7});

  CHECK_THROWS_AS(build_box_grid({1, 1, 4}, {1, 1, 4}, {{0, 1, 0}, {1.5, 4, 1}}), MeshError);
  CHECK_THROWS_AS(build_box_grid({1, 1, 4}, {1, 1, 4}, {{0, 2, 0}, {1.5, 4, 1}}), MeshError);
  CHECK_THROWS_AS(build_box_grid({1, 1, 4}, {1, 1, 4}, {{0, 3, 0}}), MeshError);
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(build_box_grid({1, 1, 1}, {0, 1, 1}, {}), MeshError);
  CHECK_THROWS_AS(build_box_grid({-1, 1, 1}, {1, 1, 1}, {}), MeshError);
}

TEST_CASE("boundary tag names round-trip") {
  for (std::size_t t = 0; t < kBoundaryTagCount; ++t) {
    const auto tag = static_cast<BoundaryTag>(t);
    CHECK(boundary_tag_from_string(to_string(tag)) == tag);
  }
  CHECK_FALSE(boundary_tag_from_string("left").has_value());
}
