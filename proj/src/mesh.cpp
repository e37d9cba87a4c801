#include "richards/mesh.hpp"

#include <algorithm>
#include <cmath>

namespace richards {

namespace {

constexpr std::array<std::string_view, kBoundaryTagCount> kTagNames = {"xmin", "xmax", "ymin",
                                                                       "ymax", "zmin", "zmax"};

void validate_layers(std::vector<RegionLayer> layers, double height) {
  if (layers.empty()) {
    return;
  }
  std::sort(layers.begin(), layers.end(),
            [](const RegionLayer& a, const RegionLayer& b) { return a.z_low < b.z_low; });
  const double tol = 1e-9 * height;
  if (std::abs(layers.front().z_low) > tol) {
    throw MeshError("region layers do not start at z = 0");
  }
  for (std::size_t l = 0; l < layers.size(); ++l) {
    if (!(layers[l].z_high > layers[l].z_low)) {
      throw MeshError("region layer " + std::to_string(layers[l].region_id) +
                      " has non-positive thickness");
    }
    if (l + 1 < layers.size()) {
      const double mismatch = layers[l + 1].z_low - layers[l].z_high;
      if (mismatch < -tol) {
        throw MeshError("region layers overlap near z = " + std::to_string(layers[l].z_high));
      }
      if (mismatch > tol) {
        throw MeshError("gap between region layers near z = " + std::to_string(layers[l].z_high));
      }
    }
  }
  if (std::abs(layers.back().z_high - height) > tol) {
    throw MeshError("region layers do not reach the top of the domain");
  }
}

int region_at(const std::vector<RegionLayer>& layers, double z) {
  if (layers.empty()) {
    return 0;
  }
  for (const auto& layer : layers) {
    if (z >= layer.z_low && z < layer.z_high) {
      return layer.region_id;
    }
  }
  // centroid strictly inside the box, so this only triggers on round-off at the top
  return layers.back().region_id;
}

} // namespace

std::string_view to_string(BoundaryTag tag) { return kTagNames[static_cast<std::size_t>(tag)]; }

std::optional<BoundaryTag> boundary_tag_from_string(std::string_view name) {
  for (std::size_t t = 0; t < kTagNames.size(); ++t) {
    if (kTagNames[t] == name) {
      return static_cast<BoundaryTag>(t);
    }
  }
  return std::nullopt;
}

void Mesh::set_cell_region(std::vector<int> regions) {
  if (regions.size() != cells_.size()) {
    throw MeshError("region vector length does not match cell count");
  }
  cell_region_ = std::move(regions);
}

Mesh build_box_grid(const Vec3& extents, const std::array<std::size_t, 3>& counts,
                    const std::vector<RegionLayer>& layers) {
  for (int a = 0; a < 3; ++a) {
    if (counts[a] < 1) {
      throw MeshError("cell counts must be at least 1");
    }
    if (!(extents[a] > 0.0) || !std::isfinite(extents[a])) {
      throw MeshError("domain extents must be positive");
    }
  }
  validate_layers(layers, extents[Z]);

  Mesh mesh;
  mesh.extents_ = extents;
  mesh.counts_ = counts;
  const auto [nx, ny, nz] = counts;
  const Vec3 h = {extents[X] / static_cast<double>(nx), extents[Y] / static_cast<double>(ny),
                  extents[Z] / static_cast<double>(nz)};
  auto coord = [&](int axis, std::size_t idx) {
    // exact endpoint avoids round-off in the total volume
    return idx == counts[axis] ? extents[axis] : static_cast<double>(idx) * h[axis];
  };

  mesh.nodes_.reserve((nx + 1) * (ny + 1) * (nz + 1));
  for (std::size_t k = 0; k <= nz; ++k) {
    for (std::size_t j = 0; j <= ny; ++j) {
      for (std::size_t i = 0; i <= nx; ++i) {
        mesh.nodes_.push_back({coord(X, i), coord(Y, j), coord(Z, k)});
      }
    }
  }
  auto node = [&](std::size_t i, std::size_t j, std::size_t k) {
    return i + (nx + 1) * (j + (ny + 1) * k);
  };

  const std::size_t ncells = nx * ny * nz;
  mesh.cells_.resize(ncells);
  mesh.cell_region_.resize(ncells);
  mesh.cell_nodes_.resize(ncells);
  mesh.cell_faces_.resize(ncells);
  for (std::size_t k = 0; k < nz; ++k) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t c = mesh.cell_index(i, j, k);
        const Vec3 lo = {coord(X, i), coord(Y, j), coord(Z, k)};
        const Vec3 hi = {coord(X, i + 1), coord(Y, j + 1), coord(Z, k + 1)};
        auto& cell = mesh.cells_[c];
        cell.centroid = {0.5 * (lo[0] + hi[0]), 0.5 * (lo[1] + hi[1]), 0.5 * (lo[2] + hi[2])};
        cell.volume = (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
        cell.z_min = lo[Z];
        cell.z_max = hi[Z];
        mesh.cell_region_[c] = region_at(layers, cell.centroid[Z]);
        mesh.cell_nodes_[c] = {node(i, j, k),         node(i + 1, j, k),
                               node(i + 1, j + 1, k), node(i, j + 1, k),
                               node(i, j, k + 1),     node(i + 1, j, k + 1),
                               node(i + 1, j + 1, k + 1), node(i, j + 1, k + 1)};
      }
    }
  }

  // Interior faces first, then boundary faces grouped by side.
  std::vector<Face> interior;
  std::vector<Face> boundary;
  for (int axis = 0; axis < 3; ++axis) {
    const int a1 = (axis + 1) % 3;
    const int a2 = (axis + 2) % 3;
    std::array<std::size_t, 3> idx{};
    for (idx[a2] = 0; idx[a2] < counts[a2]; ++idx[a2]) {
      for (idx[a1] = 0; idx[a1] < counts[a1]; ++idx[a1]) {
        for (idx[axis] = 0; idx[axis] <= counts[axis]; ++idx[axis]) {
          Face f;
          f.axis = static_cast<Axis>(axis);
          f.area = h[a1] * h[a2];
          f.centroid[axis] = coord(axis, idx[axis]);
          f.centroid[a1] = 0.5 * (coord(a1, idx[a1]) + coord(a1, idx[a1] + 1));
          f.centroid[a2] = 0.5 * (coord(a2, idx[a2]) + coord(a2, idx[a2] + 1));
          auto cell_at = [&](std::size_t along) {
            std::array<std::size_t, 3> ci = idx;
            ci[axis] = along;
            return mesh.cell_index(ci[0], ci[1], ci[2]);
          };
          auto half = [&](std::size_t cell) {
            return std::abs(f.centroid[axis] - mesh.cells_[cell].centroid[axis]);
          };
          if (idx[axis] == 0) {
            f.cells = {cell_at(0), cell_at(0)};
            f.normal[axis] = -1.0;
            f.tag = static_cast<BoundaryTag>(2 * axis);
            f.half_distance = {half(f.cells[0]), 0.0};
            boundary.push_back(f);
          } else if (idx[axis] == counts[axis]) {
            f.cells = {cell_at(counts[axis] - 1), cell_at(counts[axis] - 1)};
            f.normal[axis] = 1.0;
            f.tag = static_cast<BoundaryTag>(2 * axis + 1);
            f.half_distance = {half(f.cells[0]), 0.0};
            boundary.push_back(f);
          } else {
            f.cells = {cell_at(idx[axis] - 1), cell_at(idx[axis])};
            f.normal[axis] = 1.0;
            f.half_distance = {half(f.cells[0]), half(f.cells[1])};
            interior.push_back(f);
          }
        }
      }
    }
  }
  std::stable_sort(boundary.begin(), boundary.end(),
                   [](const Face& a, const Face& b) { return *a.tag < *b.tag; });

  mesh.num_interior_ = interior.size();
  mesh.faces_ = std::move(interior);
  mesh.faces_.insert(mesh.faces_.end(), boundary.begin(), boundary.end());
  for (std::size_t fi = 0; fi < mesh.faces_.size(); ++fi) {
    const Face& f = mesh.faces_[fi];
    mesh.cell_faces_[f.cells[0]].push_back({fi, +1});
    if (f.is_boundary()) {
      mesh.boundary_faces_[static_cast<std::size_t>(*f.tag)].push_back(fi);
    } else {
      mesh.cell_faces_[f.cells[1]].push_back({fi, -1});
    }
  }
  return mesh;
}

FaceGeometry face_transmissibility_geometry(const Mesh& mesh, std::size_t face) {
  if (face >= mesh.num_faces()) {
    throw MeshError("face index out of range");
  }
  const Face& f = mesh.faces()[face];
  FaceGeometry g;
  g.area = f.area;
  g.axis = f.axis;
  g.boundary = f.is_boundary();
  g.distances = f.half_distance;
  if (!(g.distances[0] > 0.0) || (!g.boundary && !(g.distances[1] > 0.0))) {
    throw MeshError("degenerate cell-to-face distance on face " + std::to_string(face));
  }
  return g;
}

} // namespace richards
