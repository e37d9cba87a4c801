#include "richards/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace richards {

std::string_view to_string(KrScheme scheme) {
  return scheme == KrScheme::Upwind ? "upwind" : "central";
}

FlowModel::FlowModel(Mesh mesh, const std::map<int, MediumProperties>& media)
    : mesh_(std::move(mesh)) {
  std::map<int, std::size_t> index;
  for (const auto& [id, props] : media) {
    try {
      props.validate();
    } catch (const std::invalid_argument& e) {
      throw ModelError("region " + std::to_string(id) + ": " + e.what());
    }
    index[id] = media_.size();
    media_.push_back(props);
  }
  const auto& regions = mesh_.cell_region();
  cell_medium_.resize(mesh_.num_cells());
  for (std::size_t c = 0; c < mesh_.num_cells(); ++c) {
    const auto it = index.find(regions[c]);
    if (it == index.end()) {
      throw ModelError("no medium defined for region " + std::to_string(regions[c]));
    }
    cell_medium_[c] = it->second;
  }

  transmissibility_.resize(mesh_.num_faces());
  for (std::size_t f = 0; f < mesh_.num_faces(); ++f) {
    const FaceGeometry g = face_transmissibility_geometry(mesh_, f);
    const Face& face = mesh_.faces()[f];
    const double k0 = medium(face.cells[0]).conductivity[g.axis];
    if (g.boundary) {
      transmissibility_[f] = g.area * k0 / g.distances[0];
    } else {
      const double k1 = medium(face.cells[1]).conductivity[g.axis];
      transmissibility_[f] = g.area / (g.distances[0] / k0 + g.distances[1] / k1);
    }
  }

  boundary_.assign(mesh_.num_faces() - mesh_.num_interior_faces(), NeumannFlux{0.0});
  sources_.assign(mesh_.num_cells(), 0.0);

  std::vector<std::vector<std::size_t>> rows(mesh_.num_cells());
  for (std::size_t f = 0; f < mesh_.num_interior_faces(); ++f) {
    const auto& cells = mesh_.faces()[f].cells;
    rows[cells[0]].push_back(cells[1]);
    rows[cells[1]].push_back(cells[0]);
  }
  pattern_ = SparseMatrix(mesh_.num_cells(), std::move(rows));
}

void FlowModel::set_boundary(std::size_t face, const BoundaryCondition& bc) {
  if (face < mesh_.num_interior_faces() || face >= mesh_.num_faces()) {
    throw ModelError("face " + std::to_string(face) + " is not a boundary face");
  }
  if (const auto* d = std::get_if<DirichletHead>(&bc); d && !std::isfinite(d->head)) {
    throw ModelError("non-finite Dirichlet head");
  }
  if (const auto* n = std::get_if<NeumannFlux>(&bc); n && !std::isfinite(n->flux)) {
    throw ModelError("non-finite boundary flux");
  }
  boundary_[face - mesh_.num_interior_faces()] = bc;
}

void FlowModel::set_boundary(BoundaryTag tag, const BoundaryCondition& bc,
                             std::optional<std::pair<double, double>> z_range) {
  for (std::size_t f : mesh_.boundary_faces(tag)) {
    const double z = mesh_.faces()[f].centroid[Z];
    if (!z_range || (z >= z_range->first && z < z_range->second)) {
      set_boundary(f, bc);
    }
  }
}

const BoundaryCondition& FlowModel::boundary(std::size_t face) const {
  return boundary_.at(face - mesh_.num_interior_faces());
}

void FlowModel::set_source(std::size_t cell, double rate) {
  if (!std::isfinite(rate)) {
    throw ModelError("non-finite source rate");
  }
  sources_.at(cell) = rate;
}

bool FlowModel::has_head_condition() const {
  return std::any_of(boundary_.begin(), boundary_.end(),
                     [](const BoundaryCondition& bc) { return !std::holds_alternative<NeumannFlux>(bc); });
}

std::optional<double> FlowModel::max_dirichlet_head() const {
  std::optional<double> best;
  for (const auto& bc : boundary_) {
    if (const auto* d = std::get_if<DirichletHead>(&bc)) {
      best = best ? std::max(*best, d->head) : d->head;
    }
  }
  return best;
}

namespace {

template <class T>
T face_kr(const T& kr_in, const T& kr_out, const T& h_in, const T& h_out, KrScheme scheme) {
  if (scheme == KrScheme::Upwind) {
    if (h_in > h_out) return kr_in;
    if (h_out > h_in) return kr_out;
  }
  return T(0.5) * (kr_in + kr_out);
}

/// Flux from cells[0] to cells[1] across an interior face.
template <class T>
T interior_flux(const FlowModel& model, std::size_t f, const T& h0, const T& h1,
                const AssemblyOptions& opt) {
  const Face& face = model.mesh().faces()[f];
  const auto& cells = model.mesh().cells();
  const T kr0 = relative_permeability(h0, cells[face.cells[0]], model.medium(face.cells[0]));
  const T kr1 = relative_permeability(h1, cells[face.cells[1]], model.medium(face.cells[1]));
  const T kr = face_kr(kr0, kr1, h0, h1, opt.kr_scheme);
  return continuation_permeability(kr, opt.q, opt.kind) * T(model.transmissibility(f)) * (h0 - h1);
}

/// Two-point flux towards a ghost value at the face centroid; the ghost
/// relative permeability uses the adjacent cell's geometry and medium.
template <class T>
T ghost_flux(const FlowModel& model, std::size_t f, const T& h0, double ghost_head,
             const AssemblyOptions& opt) {
  const Face& face = model.mesh().faces()[f];
  const CellGeometry& cell = model.mesh().cells()[face.cells[0]];
  const MediumProperties& med = model.medium(face.cells[0]);
  const T hg(ghost_head);
  const T kr = face_kr(relative_permeability(h0, cell, med), relative_permeability(hg, cell, med),
                       h0, hg, opt.kr_scheme);
  return continuation_permeability(kr, opt.q, opt.kind) * T(model.transmissibility(f)) * (h0 - hg);
}

/// Outward flux through a boundary face.
template <class T>
T boundary_flux(const FlowModel& model, std::size_t f, const T& h0, const AssemblyOptions& opt) {
  const BoundaryCondition& bc = model.boundary(f);
  if (const auto* n = std::get_if<NeumannFlux>(&bc)) {
    return T(n->flux * model.mesh().faces()[f].area);
  }
  if (const auto* d = std::get_if<DirichletHead>(&bc)) {
    return ghost_flux(model, f, h0, d->head, opt);
  }
  // seepage: active as h = z only while that drains the cell
  const double z_face = model.mesh().faces()[f].centroid[Z];
  if (h0 > T(z_face)) {
    return ghost_flux(model, f, h0, z_face, opt);
  }
  return T(0.0);
}

template <class T>
T storage_term(const FlowModel& model, std::size_t c, const T& h_new, double h_old, double dt) {
  const CellGeometry& cell = model.mesh().cells()[c];
  const MediumProperties& med = model.medium(c);
  const T theta_new = water_content(h_new, cell, med);
  const double theta_old = water_content(h_old, cell, med);
  const T sat = theta_new / T(med.porosity);
  return T(cell.volume / dt) * (theta_new - T(theta_old)) +
         T(cell.volume * med.specific_storage / dt) * sat * (h_new - T(h_old));
}

void check_state(const FlowModel& model, std::span<const double> head) {
  if (head.size() != model.num_cells()) {
    throw ModelError("head state length " + std::to_string(head.size()) +
                     " does not match cell count " + std::to_string(model.num_cells()));
  }
  for (std::size_t c = 0; c < head.size(); ++c) {
    if (!std::isfinite(head[c])) {
      throw ModelError("non-finite head in cell " + std::to_string(c));
    }
  }
}

void add_fluxes(const FlowModel& model, std::span<const double> head, const AssemblyOptions& opt,
                std::vector<double>& r) {
  const Mesh& mesh = model.mesh();
  const auto& faces = mesh.faces();
  for (std::size_t f = 0; f < mesh.num_interior_faces(); ++f) {
    const auto& cells = faces[f].cells;
    const double flux = interior_flux(model, f, head[cells[0]], head[cells[1]], opt);
    r[cells[0]] += flux;
    r[cells[1]] -= flux;
  }
  for (std::size_t f = mesh.num_interior_faces(); f < mesh.num_faces(); ++f) {
    const std::size_t c = faces[f].cells[0];
    r[c] += boundary_flux(model, f, head[c], opt);
  }
  const auto& cells = mesh.cells();
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    r[c] -= model.sources()[c] * cells[c].volume;
  }
}

void add_flux_jacobian(const FlowModel& model, std::span<const double> head,
                       const AssemblyOptions& opt, SparseSystem& sys) {
  const Mesh& mesh = model.mesh();
  const auto& faces = mesh.faces();
  auto& rhs = sys.rhs;
  auto& jac = sys.matrix;
  for (std::size_t f = 0; f < mesh.num_interior_faces(); ++f) {
    const std::size_t a = faces[f].cells[0];
    const std::size_t b = faces[f].cells[1];
    const auto flux = interior_flux(model, f, Dual<2>::variable(head[a], 0),
                                    Dual<2>::variable(head[b], 1), opt);
    rhs[a] -= flux.value;
    rhs[b] += flux.value;
    jac.at(a, a) += flux.grad[0];
    jac.at(a, b) += flux.grad[1];
    jac.at(b, a) -= flux.grad[0];
    jac.at(b, b) -= flux.grad[1];
  }
  for (std::size_t f = mesh.num_interior_faces(); f < mesh.num_faces(); ++f) {
    const std::size_t c = faces[f].cells[0];
    const auto flux = boundary_flux(model, f, Dual<1>::variable(head[c], 0), opt);
    rhs[c] -= flux.value;
    jac.at(c, c) += flux.grad[0];
  }
  const auto& cells = mesh.cells();
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    rhs[c] += model.sources()[c] * cells[c].volume;
  }
}

} // namespace

std::vector<double> assemble_steady_residual(const FlowModel& model, std::span<const double> head,
                                             const AssemblyOptions& options) {
  check_state(model, head);
  std::vector<double> r(model.num_cells(), 0.0);
  add_fluxes(model, head, options, r);
  return r;
}

SparseSystem assemble_jacobian_system(const FlowModel& model, std::span<const double> head,
                                      const AssemblyOptions& options) {
  check_state(model, head);
  SparseSystem sys{model.pattern(), std::vector<double>(model.num_cells(), 0.0)};
  add_flux_jacobian(model, head, options, sys);
  return sys;
}

std::vector<double> assemble_transient_residual(const FlowModel& model,
                                                std::span<const double> head_new,
                                                std::span<const double> head_old, double dt,
                                                KrScheme kr_scheme) {
  if (!(dt > 0.0)) {
    throw ModelError("time step must be positive");
  }
  check_state(model, head_new);
  check_state(model, head_old);
  std::vector<double> r(model.num_cells(), 0.0);
  for (std::size_t c = 0; c < model.num_cells(); ++c) {
    r[c] = storage_term(model, c, head_new[c], head_old[c], dt);
  }
  add_fluxes(model, head_new, AssemblyOptions{1.0, ContinuationKind::Power, kr_scheme}, r);
  return r;
}

SparseSystem assemble_transient_jacobian_system(const FlowModel& model,
                                                std::span<const double> head_new,
                                                std::span<const double> head_old, double dt,
                                                KrScheme kr_scheme) {
  if (!(dt > 0.0)) {
    throw ModelError("time step must be positive");
  }
  check_state(model, head_new);
  check_state(model, head_old);
  SparseSystem sys{model.pattern(), std::vector<double>(model.num_cells(), 0.0)};
  for (std::size_t c = 0; c < model.num_cells(); ++c) {
    const auto s = storage_term(model, c, Dual<1>::variable(head_new[c], 0), head_old[c], dt);
    sys.rhs[c] -= s.value;
    sys.matrix.at(c, c) += s.grad[0];
  }
  add_flux_jacobian(model, head_new, AssemblyOptions{1.0, ContinuationKind::Power, kr_scheme}, sys);
  return sys;
}

std::vector<double> boundary_face_fluxes(const FlowModel& model, std::span<const double> head,
                                         const AssemblyOptions& options) {
  check_state(model, head);
  const Mesh& mesh = model.mesh();
  std::vector<double> out(mesh.num_faces() - mesh.num_interior_faces());
  for (std::size_t f = mesh.num_interior_faces(); f < mesh.num_faces(); ++f) {
    out[f - mesh.num_interior_faces()] =
        boundary_flux(model, f, head[mesh.faces()[f].cells[0]], options);
  }
  return out;
}

BoundaryFluxReport boundary_flux_report(const FlowModel& model, std::span<const double> head,
                                        const AssemblyOptions& options) {
  const Mesh& mesh = model.mesh();
  const auto fluxes = boundary_face_fluxes(model, head, options);
  BoundaryFluxReport rep;
  for (std::size_t f = mesh.num_interior_faces(); f < mesh.num_faces(); ++f) {
    const double flux = fluxes[f - mesh.num_interior_faces()];
    rep.outward_by_tag[static_cast<std::size_t>(*mesh.faces()[f].tag)] += flux;
    (flux > 0.0 ? rep.outflow : rep.inflow) += std::abs(flux);
    const BoundaryCondition& bc = model.boundary(f);
    if (std::holds_alternative<DirichletHead>(bc)) {
      (flux > 0.0 ? rep.dirichlet_outflow : rep.dirichlet_inflow) += std::abs(flux);
    } else if (std::holds_alternative<Seepage>(bc)) {
      rep.seepage_outflow += flux;
    } else {
      rep.neumann_net += flux;
    }
  }
  for (std::size_t c = 0; c < mesh.num_cells(); ++c) {
    rep.source_total += model.sources()[c] * mesh.cells()[c].volume;
  }
  return rep;
}

std::size_t count_floored_cells(const FlowModel& model, std::span<const double> head) {
  check_state(model, head);
  std::size_t n = 0;
  for (std::size_t c = 0; c < model.num_cells(); ++c) {
    const auto& med = model.medium(c);
    if (saturation(head[c], model.mesh().cells()[c], med) < med.kr_floor) {
      ++n;
    }
  }
  return n;
}

std::vector<double> cell_water_content(const FlowModel& model, std::span<const double> head) {
  check_state(model, head);
  std::vector<double> out(model.num_cells());
  for (std::size_t c = 0; c < model.num_cells(); ++c) {
    out[c] = water_content(head[c], model.mesh().cells()[c], model.medium(c));
  }
  return out;
}

std::vector<double> cell_saturation(const FlowModel& model, std::span<const double> head) {
  auto out = cell_water_content(model, head);
  for (std::size_t c = 0; c < out.size(); ++c) {
    out[c] /= model.medium(c).porosity;
  }
  return out;
}

} // namespace richards
