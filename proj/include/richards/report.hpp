#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "richards/continuation.hpp"
#include "richards/mesh.hpp"
#include "richards/newton.hpp"
#include "richards/pseudotransient.hpp"

namespace richards {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct NamedField {
  std::string name;
  std::vector<double> values;
};

/// Legacy ASCII VTK unstructured grid with one CELL_DATA scalar per field.
void write_vtk(std::ostream& out, const Mesh& mesh, std::span<const NamedField> fields,
               const std::string& title = "richards solution");
void write_vtk(const std::filesystem::path& path, const Mesh& mesh,
               std::span<const NamedField> fields, const std::string& title = "richards solution");

/// One row per Newton iteration (plus one for the q = 0 linear solve).
struct ReportRow {
  std::string stage; ///< linear | newton | continuation | pseudo_transient
  int step = 0;      ///< outer step being attempted, 1-based
  int attempt = 0;   ///< try number for that step, 1-based
  double q_or_dt = 0.0;
  int newton_iter = 0;
  double res_l2 = 0.0;
  double res_inf = 0.0;
  double omega = 0.0;
  int lin_iters = 0;
  bool accepted = false;
};

struct ConvergenceReport {
  std::string strategy;
  std::string status;
  std::vector<ReportRow> rows;
  int successful_steps = 0;
  int failed_steps = 0;
  int newton_iterations = 0;
  double wall_time = 0.0; ///< seconds
  std::string correction; ///< non-default correction hook, if any
};

ConvergenceReport report_from(const NewtonOutcome& outcome);
ConvergenceReport report_from(const ContinuationOutcome& outcome);
ConvergenceReport report_from(const PseudoTransientOutcome& outcome);

inline constexpr const char* kConvergenceCsvHeader =
    "stage,step,attempt,q_or_dt,newton_iter,res_l2,res_inf,omega,lin_iters,accepted";

/// Shortest round-trip formatting keeps reruns bit-identical.
void write_convergence_csv(std::ostream& out, const ConvergenceReport& report);

/// One line of a solver comparison table.
struct ComparisonRow {
  std::string label;
  double wall_time = 0.0;
  int successful_steps = 0;
  int failed_steps = 0;
  int newton_iterations = 0;
};

/// Fixed-width table: label | T_comp, s | # of successful (failed) steps |
/// # of Newton iterations.
std::string format_comparison_table(std::span<const ComparisonRow> rows);

ComparisonRow comparison_row(const std::string& label, const ConvergenceReport& report);

} // namespace richards
