#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace richards {

using Vec3 = std::array<double, 3>;

/// Axis indices; z is vertical throughout.
enum Axis : int { X = 0, Y = 1, Z = 2 };

/// Sides of the box domain used to tag boundary faces.
enum class BoundaryTag : int { XMin = 0, XMax, YMin, YMax, ZMin, ZMax };

inline constexpr std::size_t kBoundaryTagCount = 6;

std::string_view to_string(BoundaryTag tag);
std::optional<BoundaryTag> boundary_tag_from_string(std::string_view name);

class MeshError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct CellGeometry {
  Vec3 centroid{};
  double volume = 0.0;
  double z_min = 0.0; ///< lowest vertical node coordinate of the cell
  double z_max = 0.0; ///< highest vertical node coordinate of the cell
};

/// A face oriented from `cells[0]` towards `cells[1]` (or outward for
/// boundary faces, where `cells[1]` is absent).
struct Face {
  double area = 0.0;
  Vec3 normal{};
  Vec3 centroid{};
  Axis axis = X;
  std::array<std::size_t, 2> cells{};
  std::optional<BoundaryTag> tag;
  /// Distance from each adjacent cell centroid to the face centroid.
  std::array<double, 2> half_distance{};

  [[nodiscard]] bool is_boundary() const noexcept { return tag.has_value(); }
};

struct RegionLayer {
  double z_low = 0.0;
  double z_high = 0.0;
  int region_id = 0;
};

/// Geometric ingredients of the two-point flux across one face.
struct FaceGeometry {
  double area = 0.0;
  Axis axis = X;
  std::array<double, 2> distances{}; ///< second entry is 0 on boundary faces
  bool boundary = false;
};

/// Structured hexahedral grid over an axis-aligned box.  Immutable once built.
class Mesh {
public:
  [[nodiscard]] std::size_t num_cells() const noexcept { return cells_.size(); }
  [[nodiscard]] std::size_t num_faces() const noexcept { return faces_.size(); }
  [[nodiscard]] std::size_t num_interior_faces() const noexcept { return num_interior_; }
  [[nodiscard]] std::size_t num_nodes() const noexcept { return nodes_.size(); }

  [[nodiscard]] const std::vector<CellGeometry>& cells() const noexcept { return cells_; }
  [[nodiscard]] const std::vector<Face>& faces() const noexcept { return faces_; }
  [[nodiscard]] const std::vector<int>& cell_region() const noexcept { return cell_region_; }
  [[nodiscard]] const std::vector<Vec3>& nodes() const noexcept { return nodes_; }

  /// Faces touching a cell, each paired with +1 if the face normal points
  /// out of the cell and -1 otherwise.
  struct CellFace {
    std::size_t face;
    int sign;
  };
  [[nodiscard]] const std::vector<CellFace>& cell_faces(std::size_t cell) const {
    return cell_faces_.at(cell);
  }

  /// VTK hexahedron node ordering.
  [[nodiscard]] const std::array<std::size_t, 8>& cell_nodes(std::size_t cell) const {
    return cell_nodes_.at(cell);
  }

  [[nodiscard]] const std::vector<std::size_t>& boundary_faces(BoundaryTag tag) const {
    return boundary_faces_[static_cast<std::size_t>(tag)];
  }

  [[nodiscard]] const Vec3& extents() const noexcept { return extents_; }
  [[nodiscard]] const std::array<std::size_t, 3>& counts() const noexcept { return counts_; }

  [[nodiscard]] std::size_t cell_index(std::size_t i, std::size_t j, std::size_t k) const noexcept {
    return i + counts_[0] * (j + counts_[1] * k);
  }

  /// Overrides per-cell region ids; the layered generator only assigns by z.
  void set_cell_region(std::vector<int> regions);

  friend Mesh build_box_grid(const Vec3& extents, const std::array<std::size_t, 3>& counts,
                             const std::vector<RegionLayer>& layers);

private:
  Vec3 extents_{};
  std::array<std::size_t, 3> counts_{};
  std::vector<CellGeometry> cells_;
  std::vector<Face> faces_;
  std::vector<int> cell_region_;
  std::vector<Vec3> nodes_;
  std::vector<std::array<std::size_t, 8>> cell_nodes_;
  std::vector<std::vector<CellFace>> cell_faces_;
  std::array<std::vector<std::size_t>, kBoundaryTagCount> boundary_faces_;
  std::size_t num_interior_ = 0;
};

/// Builds an nx*ny*nz grid of equal hexahedra covering [0,Lx]x[0,Ly]x[0,Lz].
/// `layers` must tile [0,Lz] without gaps or overlaps; an empty list puts
/// every cell in region 0.
Mesh build_box_grid(const Vec3& extents, const std::array<std::size_t, 3>& counts,
                    const std::vector<RegionLayer>& layers);

FaceGeometry face_transmissibility_geometry(const Mesh& mesh, std::size_t face);

} // namespace richards
