#include <doctest.h>

#include <string>

#include "richards/config.hpp"

using namespace richards;

namespace {

const char* kMinimal = R"(
[mesh]
extents = 1 1 1
counts = 2 1 2

[region]
id = 0

[boundary]
side = xmin
type = dirichlet
head = 1
)";

std::string error_of(const std::string& text) {
  try {
    (void)parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return {};
}

} // namespace

TEST_CASE("bundled dam example") {
  const ProblemConfig cfg = load_config(std::string(RICHARDS_CONFIG_DIR) + "/dam.cfg");
  CHECK(cfg.mesh.counts == std::array<std::size_t, 3>{40, 1, 40});
  CHECK(cfg.mesh.extents[0] == 10.0);
  REQUIRE(cfg.regions.size() == 1);
  CHECK(cfg.regions[0].medium.conductivity[0] == 0.864);
  CHECK(cfg.regions[0].medium.conductivity[2] == 0.864);
  REQUIRE(cfg.boundaries.size() == 3);
  CHECK(std::get<DirichletHead>(cfg.boundaries[0].condition).head == 10.0);
  CHECK(cfg.boundaries[1].z_range == std::pair{0.0, 2.0});
  CHECK(std::get<DirichletHead>(cfg.boundaries[1].condition).head == 2.0);
  CHECK(std::holds_alternative<Seepage>(cfg.boundaries[2].condition));
  CHECK(cfg.solver.strategy == Strategy::Continuation);
  CHECK(cfg.solver.newton.tolerance.eps_rel == 1e-5);
  CHECK(cfg.solver.newton.maxit == 25);
  CHECK(cfg.solver.pseudo_transient.numit_inc == 15);
  CHECK(cfg.solver.pseudo_transient.steady.eps_abs == cfg.solver.newton.tolerance.eps_abs);

  const FlowModel model = build_model(cfg);
  CHECK(model.num_cells() == 1600);
  int dirichlet = 0, seepage = 0;
  for (std::size_t f : model.mesh().boundary_faces(BoundaryTag::XMax)) {
    dirichlet += std::holds_alternative<DirichletHead>(model.boundary(f)) ? 1 : 0;
    seepage += std::holds_alternative<Seepage>(model.boundary(f)) ? 1 : 0;
  }
  CHECK(dirichlet == 8);
  CHECK(seepage == 32);
}

TEST_CASE("bundled layered site example") {
  const ProblemConfig cfg = load_config(std::string(RICHARDS_CONFIG_DIR) + "/layered_site.cfg");
  CHECK(cfg.regions.size() == 3);
  CHECK(cfg.regions[1].medium.conductivity[0] == doctest::Approx(cfg.regions[0].medium.conductivity[0] / 100));
  CHECK(cfg.regions[0].medium.conductivity[2] == doctest::Approx(0.1 * cfg.regions[0].medium.conductivity[0]));
  CHECK(cfg.solver.kr_scheme == KrScheme::Central);
  CHECK_NOTHROW((void)build_model(cfg));
}

TEST_CASE("empty file names the missing mesh section") {
  CHECK(error_of("") == "missing [mesh] section");
  CHECK(error_of("# only a comment\n") == "missing [mesh] section");
}

TEST_CASE("misspelled key is rejected with its line") {
  const std::string text = std::string(kMinimal) + "\n[region]\nid = 1\nporrosity = 0.3\n";
  const std::string err = error_of(text);
  CHECK(err.find("porrosity") != std::string::npos);
  CHECK(err.find("line 16") != std::string::npos);
}

TEST_CASE("syntax and semantic errors") {
  CHECK(error_of("[mesh\n").find("line 1") != std::string::npos);
  CHECK(error_of("extents = 1 1 1\n").find("outside of any section") != std::string::npos);
  CHECK(error_of("[mesh]\nextents 1 1 1\n").find("key = value") != std::string::npos);
  CHECK(error_of("[mesh]\nextents = 1 1 1\n").find("counts") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[solver]\nmaxit = many\n").find("maxit") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[solver]\nstrategy = picard\n").find("strategy") != std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[boundary]\nside = top\ntype = dirichlet\nhead = 1\n").find("side") !=
        std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[source]\nregion = 9\nrate = 1\n").find("unknown region") !=
        std::string::npos);
  CHECK(error_of(std::string(kMinimal) + "[weather]\n").find("unknown section") != std::string::npos);
}

TEST_CASE("all-Neumann boundaries are ill-posed") {
  const std::string text = "[mesh]\nextents = 1 1 1\ncounts = 1 1 1\n[region]\nid = 0\n"
                           "[boundary]\nside = zmax\ntype = flux\nflux = -0.1\n";
  CHECK(error_of(text).find("ill-posed") != std::string::npos);
}

TEST_CASE("defaults, overrides and mesh scaling") {
  ProblemConfig cfg = parse_config(std::string(kMinimal) +
                                   "[solver]\nstrategy = pseudo_transient\nkind = linear\nkr_scheme = central\n"
                                   "dt_init = 0.5\nline_search = false\n");
  CHECK(cfg.solver.strategy == Strategy::PseudoTransient);
  CHECK(cfg.solver.continuation.kind == ContinuationKind::Linear);
  CHECK(cfg.solver.kr_scheme == KrScheme::Central);
  CHECK(cfg.solver.pseudo_transient.dt_init == 0.5);
  CHECK_FALSE(cfg.solver.newton.line_search);
  CHECK(cfg.solver.newton.gamma == 0.25);
  CHECK(cfg.solver.continuation.dq_min == 1e-4);
  scale_mesh(cfg, 2.5);
  CHECK(cfg.mesh.counts == std::array<std::size_t, 3>{5, 1, 5});
  CHECK_THROWS_AS(scale_mesh(cfg, 0.0), ConfigError);
}

TEST_CASE("constant initial state") {
  ProblemConfig cfg = parse_config(kMinimal);
  const FlowModel model = build_model(cfg);
  CHECK(constant_initial_state(cfg, model) == HeadState(4, 1.0));
  cfg.solver.initial_head = 0.25;
  CHECK(constant_initial_state(cfg, model) == HeadState(4, 0.25));
}

TEST_CASE("enum parsing") {
  CHECK(strategy_from_string("newton") == Strategy::Newton);
  CHECK(strategy_from_string("continuation") == Strategy::Continuation);
  CHECK_FALSE(strategy_from_string("Continuation!").has_value());
  CHECK(kind_from_string("power") == ContinuationKind::Power);
  CHECK(kr_scheme_from_string("upwind") == KrScheme::Upwind);
}
