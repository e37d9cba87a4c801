#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "richards/constitutive.hpp"
#include "richards/continuation.hpp"
#include "richards/discretization.hpp"
#include "richards/mesh.hpp"
#include "richards/newton.hpp"
#include "richards/pseudotransient.hpp"

namespace richards {

/// Syntax or semantic error in a problem file.  `line()` is 0 when the
/// error is not tied to a specific line.
class ConfigError : public std::runtime_error {
public:
  ConfigError(int line, const std::string& message)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
        line_(line) {}
  [[nodiscard]] int line() const noexcept { return line_; }

private:
  int line_;
};

enum class Strategy { Newton, Continuation, PseudoTransient };
enum class InitialGuess { Linear, Constant };

std::string_view to_string(Strategy strategy);
std::optional<Strategy> strategy_from_string(std::string_view s);
std::optional<ContinuationKind> kind_from_string(std::string_view s);
std::optional<KrScheme> kr_scheme_from_string(std::string_view s);

struct MeshSpec {
  Vec3 extents{};
  std::array<std::size_t, 3> counts{};
};

struct RegionSpec {
  int id = 0;
  std::optional<std::pair<double, double>> z_range;
  MediumProperties medium;
  int line = 0;
};

struct BoundarySpec {
  BoundaryTag side = BoundaryTag::XMin;
  std::optional<std::pair<double, double>> z_range;
  BoundaryCondition condition = NeumannFlux{0.0};
  int line = 0;
};

struct SourceSpec {
  std::optional<int> region; ///< whole domain when absent
  double rate = 0.0;         ///< 1/day
  int line = 0;
};

struct SolverSpec {
  Strategy strategy = Strategy::Continuation;
  KrScheme kr_scheme = KrScheme::Upwind;
  NewtonConfig newton;
  ContinuationConfig continuation;
  PseudoTransientConfig pseudo_transient;
  std::optional<double> initial_head;
  InitialGuess pt_initial = InitialGuess::Linear;
};

struct ProblemConfig {
  MeshSpec mesh;
  std::vector<RegionSpec> regions;
  std::vector<BoundarySpec> boundaries; ///< applied in order; later entries win
  std::vector<SourceSpec> sources;
  SolverSpec solver;
};

/// Parses the line-oriented `[section]` / `key = value` format.  Unknown
/// sections and keys are rejected; defaults fill everything else.
ProblemConfig parse_config(std::string_view text);
ProblemConfig load_config(const std::string& path);

/// Multiplies every count greater than one by `factor` (rounded).
void scale_mesh(ProblemConfig& config, double factor);

/// Builds mesh, media, boundary conditions and sources.  Throws ConfigError
/// for inconsistent layers, unknown regions or an all-Neumann boundary.
FlowModel build_model(const ProblemConfig& config);

/// Constant starting head: `initial_head`, else the largest Dirichlet head,
/// else the top of the domain.
HeadState constant_initial_state(const ProblemConfig& config, const FlowModel& model);

} // namespace richards
