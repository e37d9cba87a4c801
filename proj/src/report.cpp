#include "richards/report.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <fstream>

namespace richards {

void write_vtk(std::ostream& out, const Mesh& mesh, std::span<const NamedField> fields,
               const std::string& title) {
  for (const auto& f : fields) {
    if (f.values.size() != mesh.num_cells()) {
      throw std::invalid_argument("field '" + f.name + "' has " + std::to_string(f.values.size()) +
                                  " values for " + std::to_string(mesh.num_cells()) + " cells");
    }
    if (f.name.empty() || f.name.find_first_of(" \t\n") != std::string::npos) {
      throw std::invalid_argument("VTK field names must be non-empty and contain no whitespace");
    }
  }
  const std::size_t nc = mesh.num_cells();
  fmt::print(out, "# vtk DataFile Version 3.0\n{}\nASCII\nDATASET UNSTRUCTURED_GRID\n",
             title.substr(0, 255));
  fmt::print(out, "POINTS {} double\n", mesh.num_nodes());
  for (const auto& p : mesh.nodes()) {
    fmt::print(out, "{} {} {}\n", p[0], p[1], p[2]);
  }
  fmt::print(out, "CELLS {} {}\n", nc, nc * 9);
  for (std::size_t c = 0; c < nc; ++c) {
    const auto& n = mesh.cell_nodes(c);
    fmt::print(out, "8 {} {} {} {} {} {} {} {}\n", n[0], n[1], n[2], n[3], n[4], n[5], n[6], n[7]);
  }
  fmt::print(out, "CELL_TYPES {}\n", nc);
  for (std::size_t c = 0; c < nc; ++c) {
    out << "12\n"; // VTK_HEXAHEDRON
  }
  if (fields.empty()) {
    return;
  }
  fmt::print(out, "CELL_DATA {}\n", nc);
  for (const auto& f : fields) {
    fmt::print(out, "SCALARS {} double 1\nLOOKUP_TABLE default\n", f.name);
    for (double v : f.values) {
      fmt::print(out, "{}\n", v);
    }
  }
}

void write_vtk(const std::filesystem::path& path, const Mesh& mesh,
               std::span<const NamedField> fields, const std::string& title) {
  std::ofstream out(path);
  if (!out) {
    throw IoError("cannot open '" + path.string() + "' for writing");
  }
  write_vtk(out, mesh, fields, title);
  if (!out) {
    throw IoError("failed writing '" + path.string() + "'");
  }
}

namespace {

void append_newton(std::vector<ReportRow>& rows, const std::string& stage, int step, int attempt,
                   double q_or_dt, const NewtonOutcome& n, bool accepted) {
  for (const auto& rec : n.records) {
    rows.push_back({stage, step, attempt, q_or_dt, rec.iteration, rec.res_l2, rec.res_inf,
                    rec.omega, rec.linear_iterations, accepted});
  }
}

} // namespace

ConvergenceReport report_from(const NewtonOutcome& outcome) {
  ConvergenceReport rep;
  rep.strategy = "newton";
  rep.status = std::string(to_string(outcome.status));
  rep.correction = outcome.correction;
  append_newton(rep.rows, "newton", 1, 1, 1.0, outcome, outcome.converged());
  rep.successful_steps = outcome.converged() ? 1 : 0;
  rep.failed_steps = outcome.converged() ? 0 : 1;
  rep.newton_iterations = outcome.iterations;
  return rep;
}

ConvergenceReport report_from(const ContinuationOutcome& outcome) {
  ConvergenceReport rep;
  rep.strategy = "continuation";
  rep.status = std::string(to_string(outcome.status));
  rep.rows.push_back({"linear", 0, 1, 0.0, 0, outcome.linear_res_l2, outcome.linear_res_inf, 1.0,
                      outcome.linear_iterations_q0, true});
  int step = 1;
  int attempt = 1;
  for (const auto& a : outcome.attempts) {
    if (rep.correction.empty()) {
      rep.correction = a.newton.correction;
    }
    append_newton(rep.rows, "continuation", step, attempt, a.q_target, a.newton, a.accepted);
    if (a.accepted) {
      ++step;
      attempt = 1;
    } else {
      ++attempt;
    }
  }
  rep.successful_steps = outcome.successful_steps;
  rep.failed_steps = outcome.failed_steps;
  rep.newton_iterations = outcome.newton_iterations;
  return rep;
}

ConvergenceReport report_from(const PseudoTransientOutcome& outcome) {
  ConvergenceReport rep;
  rep.strategy = "pseudo_transient";
  rep.status = std::string(to_string(outcome.status));
  int step = 1;
  int attempt = 1;
  for (const auto& s : outcome.steps) {
    if (rep.correction.empty()) {
      rep.correction = s.newton.correction;
    }
    append_newton(rep.rows, "pseudo_transient", step, attempt, s.dt, s.newton, s.accepted);
    if (s.accepted) {
      ++step;
      attempt = 1;
    } else {
      ++attempt;
    }
  }
  rep.successful_steps = outcome.successful_steps;
  rep.failed_steps = outcome.failed_steps;
  rep.newton_iterations = outcome.newton_iterations;
  return rep;
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& report) {
  out << kConvergenceCsvHeader << '\n';
  for (const auto& r : report.rows) {
    fmt::print(out, "{},{},{},{},{},{},{},{},{},{}\n", r.stage, r.step, r.attempt, r.q_or_dt,
               r.newton_iter, r.res_l2, r.res_inf, r.omega, r.lin_iters, r.accepted ? 1 : 0);
  }
}

std::string format_comparison_table(std::span<const ComparisonRow> rows) {
  std::size_t label_width = 8;
  for (const auto& r : rows) {
    label_width = std::max(label_width, r.label.size());
  }
  std::string out = fmt::format("{:<{}} | {:>10} | {:>31} | {:>22}\n", "", label_width,
                                "T_comp, s", "# of successful (failed) steps",
                                "# of Newton iterations");
  out += std::string(label_width + 74, '-') + '\n';
  for (const auto& r : rows) {
    out += fmt::format("{:<{}} | {:>10.3f} | {:>31} | {:>22}\n", r.label, label_width, r.wall_time,
                       fmt::format("{}({})", r.successful_steps, r.failed_steps),
                       r.newton_iterations);
  }
  return out;
}

ComparisonRow comparison_row(const std::string& label, const ConvergenceReport& report) {
  return {label, report.wall_time, report.successful_steps, report.failed_steps,
          report.newton_iterations};
}

} // namespace richards
