#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "richards/constitutive.hpp"
#include "richards/mesh.hpp"
#include "richards/sparse.hpp"

namespace richards {

/// Cell hydraulic heads in metres, one per cell.
using HeadState = std::vector<double>;

struct DirichletHead {
  double head = 0.0; ///< m
};
struct NeumannFlux {
  double flux = 0.0; ///< m/day, positive out of the domain
};
/// Outflow-only face at atmospheric pressure (h = z of the face centroid).
struct Seepage {};

using BoundaryCondition = std::variant<NeumannFlux, DirichletHead, Seepage>;

enum class KrScheme { Upwind, Central };

std::string_view to_string(KrScheme scheme);

struct AssemblyOptions {
  double q = 1.0;
  ContinuationKind kind = ContinuationKind::Power;
  KrScheme kr_scheme = KrScheme::Upwind;
};

struct SparseSystem {
  SparseMatrix matrix;
  std::vector<double> rhs; ///< -F(state)
};

class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Mesh plus media, boundary conditions and sources: everything the
/// finite-volume operator needs apart from the state.
class FlowModel {
public:
  /// `media` maps every region id present in the mesh to its properties.
  FlowModel(Mesh mesh, const std::map<int, MediumProperties>& media);

  [[nodiscard]] const Mesh& mesh() const noexcept { return mesh_; }
  [[nodiscard]] std::size_t num_cells() const noexcept { return mesh_.num_cells(); }
  [[nodiscard]] const MediumProperties& medium(std::size_t cell) const {
    return media_[cell_medium_[cell]];
  }

  /// Geometric two-point transmissibility of a face, m^2/day.
  [[nodiscard]] double transmissibility(std::size_t face) const { return transmissibility_[face]; }

  void set_boundary(std::size_t face, const BoundaryCondition& bc);
  /// Applies `bc` to every face of `tag` whose centroid z lies in
  /// [z_low, z_high); without a range the whole side is set.
  void set_boundary(BoundaryTag tag, const BoundaryCondition& bc,
                    std::optional<std::pair<double, double>> z_range = std::nullopt);
  /// Boundary condition of a boundary face; Neumann(0) unless set.
  [[nodiscard]] const BoundaryCondition& boundary(std::size_t face) const;

  void set_source(std::size_t cell, double rate);
  [[nodiscard]] const std::vector<double>& sources() const noexcept { return sources_; }

  /// True when at least one Dirichlet or seepage face exists.
  [[nodiscard]] bool has_head_condition() const;
  /// Largest prescribed Dirichlet head, if any.
  [[nodiscard]] std::optional<double> max_dirichlet_head() const;

  /// Empty matrix with the cell/face-neighbour pattern.
  [[nodiscard]] const SparseMatrix& pattern() const noexcept { return pattern_; }

private:
  Mesh mesh_;
  std::vector<MediumProperties> media_;
  std::vector<std::size_t> cell_medium_;
  std::vector<double> transmissibility_;
  std::vector<BoundaryCondition> boundary_; // indexed by face - num_interior_faces
  std::vector<double> sources_;
  SparseMatrix pattern_;
};

/// Steady residual: per cell, total outward flux minus Q V (m^3/day).
std::vector<double> assemble_steady_residual(const FlowModel& model, std::span<const double> head,
                                             const AssemblyOptions& options);

/// Jacobian of the steady residual by forward-mode differentiation of the
/// same face kernels; rhs = -F(head).
SparseSystem assemble_jacobian_system(const FlowModel& model, std::span<const double> head,
                                      const AssemblyOptions& options);

/// Implicit-Euler residual of the transient equation at q = 1.
std::vector<double> assemble_transient_residual(const FlowModel& model,
                                                std::span<const double> head_new,
                                                std::span<const double> head_old, double dt,
                                                KrScheme kr_scheme);

SparseSystem assemble_transient_jacobian_system(const FlowModel& model,
                                                std::span<const double> head_new,
                                                std::span<const double> head_old, double dt,
                                                KrScheme kr_scheme);

/// Signed outward flux through each boundary face (m^3/day).
std::vector<double> boundary_face_fluxes(const FlowModel& model, std::span<const double> head,
                                         const AssemblyOptions& options);

struct BoundaryFluxReport {
  std::array<double, kBoundaryTagCount> outward_by_tag{}; ///< m^3/day
  double source_total = 0.0;                             ///< integral of Q over the domain
  double dirichlet_inflow = 0.0;                         ///< positive magnitude
  double dirichlet_outflow = 0.0;
  double seepage_outflow = 0.0;
  double neumann_net = 0.0; ///< outward
  double inflow = 0.0;      ///< all boundary inflow, positive magnitude
  double outflow = 0.0;     ///< all boundary outflow

  [[nodiscard]] double net_outward() const {
    double s = 0.0;
    for (double v : outward_by_tag) s += v;
    return s;
  }
};

BoundaryFluxReport boundary_flux_report(const FlowModel& model, std::span<const double> head,
                                        const AssemblyOptions& options);

/// Number of cells whose relative permeability sits at the floor.
std::size_t count_floored_cells(const FlowModel& model, std::span<const double> head);

std::vector<double> cell_saturation(const FlowModel& model, std::span<const double> head);
std::vector<double> cell_water_content(const FlowModel& model, std::span<const double> head);

} // namespace richards
