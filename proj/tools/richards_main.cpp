// Command-line front end: `richards solve <config>` and `richards compare <config>`.

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "richards/config.hpp"
#include "richards/report.hpp"
#include "richards/run.hpp"

namespace {

void configure_logging() {
  spdlog::set_pattern("[%l] %v");
  spdlog::set_level(spdlog::level::info);
  if (const char* env = std::getenv("RICHARDS_LOG")) {
    const std::string level(env);
    if (level == "debug") {
      spdlog::set_level(spdlog::level::debug);
    } else if (level == "info") {
      spdlog::set_level(spdlog::level::info);
    } else {
      spdlog::warn("ignoring unknown RICHARDS_LOG value '{}'", level);
    }
  }
}

struct Overrides {
  std::optional<std::string> strategy;
  std::optional<std::string> kind;
  std::optional<std::string> kr_scheme;
  std::optional<double> mesh_scale;
};

void apply(const Overrides& o, richards::ProblemConfig& cfg) {
  using namespace richards;
  if (o.strategy) {
    const auto s = strategy_from_string(*o.strategy);
    if (!s) throw ConfigError(0, "--strategy: expected newton, continuation or pseudo_transient");
    cfg.solver.strategy = *s;
  }
  if (o.kind) {
    const auto k = kind_from_string(*o.kind);
    if (!k) throw ConfigError(0, "--kind: expected power or linear");
    cfg.solver.continuation.kind = *k;
  }
  if (o.kr_scheme) {
    const auto k = kr_scheme_from_string(*o.kr_scheme);
    if (!k) throw ConfigError(0, "--kr-scheme: expected upwind or central");
    cfg.solver.kr_scheme = *k;
  }
  if (o.mesh_scale) {
    scale_mesh(cfg, *o.mesh_scale);
  }
}

int solve_command(const std::string& path, const std::string& out_dir, const Overrides& o) {
  richards::ProblemConfig cfg;
  try {
    cfg = richards::load_config(path);
    apply(o, cfg);
  } catch (const richards::ConfigError& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(richards::ExitCode::Config);
  }
  const auto result = richards::run(cfg, out_dir);
  if (result.exit_code != richards::ExitCode::Success) {
    spdlog::error("failed: {}", result.failure);
  }
  return static_cast<int>(result.exit_code);
}

/// Power versus linear continuation (optionally against pseudo-transient).
int compare_command(const std::string& path, const std::string& out_dir, const Overrides& o,
                    bool with_pseudo_transient) {
  using namespace richards;
  ProblemConfig base;
  try {
    base = load_config(path);
    apply(o, base);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(ExitCode::Config);
  }
  const std::string scheme = base.solver.kr_scheme == KrScheme::Upwind ? "upwind" : "central";
  std::vector<ComparisonRow> rows;
  int worst = 0;
  auto run_one = [&](const std::string& label, Strategy strategy, ContinuationKind kind) {
    ProblemConfig cfg = base;
    cfg.solver.strategy = strategy;
    cfg.solver.continuation.kind = kind;
    const RunResult r = solve_problem(cfg);
    rows.push_back(comparison_row(label + ", " + scheme, r.report));
    worst = std::max(worst, static_cast<int>(r.exit_code));
  };
  try {
    run_one("Power", Strategy::Continuation, ContinuationKind::Power);
    run_one("Linear", Strategy::Continuation, ContinuationKind::Linear);
    if (with_pseudo_transient) {
      run_one("Pseudo-transient", Strategy::PseudoTransient, ContinuationKind::Power);
    }
  } catch (const std::runtime_error& e) {
    spdlog::error("{}", e.what());
    return static_cast<int>(ExitCode::Config);
  }
  const std::string table = format_comparison_table(rows);
  std::cout << table;
  if (!out_dir.empty()) {
    std::filesystem::create_directories(out_dir);
    std::ofstream(std::filesystem::path(out_dir) / "comparison.txt") << table;
  }
  return worst;
}

} // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Steady variably saturated groundwater flow solver"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  std::string compare_out;
  bool with_pt = false;
  Overrides overrides;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--strategy", overrides.strategy, "newton | continuation | pseudo_transient");
    cmd->add_option("--kind", overrides.kind, "continuation function: power | linear");
    cmd->add_option("--kr-scheme", overrides.kr_scheme, "face relative permeability: upwind | central");
    cmd->add_option("--mesh-scale", overrides.mesh_scale, "refine every multi-cell axis by this factor");
  };

  auto* solve = app.add_subcommand("solve", "solve one problem and write outputs");
  solve->add_option("config", config_path, "problem file")->required();
  solve->add_option("--out", out_dir, "output directory");
  add_overrides(solve);

  auto* compare = app.add_subcommand("compare", "compare power and linear continuation");
  compare->add_option("config", config_path, "problem file")->required();
  compare->add_option("--out", compare_out, "directory for comparison.txt");
  compare->add_flag("--with-pseudo-transient", with_pt, "also run the pseudo-transient baseline");
  add_overrides(compare);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(richards::ExitCode::Config);
  }

  if (*solve) {
    return solve_command(config_path, out_dir, overrides);
  }
  return compare_command(config_path, compare_out, overrides, with_pt);
}
