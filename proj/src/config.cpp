#include "richards/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace richards {

std::string_view to_string(Strategy strategy) {
  switch (strategy) {
  case Strategy::Newton: return "newton";
  case Strategy::Continuation: return "continuation";
  case Strategy::PseudoTransient: return "pseudo_transient";
  }
  return "unknown";
}

std::optional<Strategy> strategy_from_string(std::string_view s) {
  if (s == "newton") return Strategy::Newton;
  if (s == "continuation") return Strategy::Continuation;
  if (s == "pseudo_transient") return Strategy::PseudoTransient;
  return std::nullopt;
}

std::optional<ContinuationKind> kind_from_string(std::string_view s) {
  if (s == "power") return ContinuationKind::Power;
  if (s == "linear") return ContinuationKind::Linear;
  return std::nullopt;
}

std::optional<KrScheme> kr_scheme_from_string(std::string_view s) {
  if (s == "upwind") return KrScheme::Upwind;
  if (s == "central") return KrScheme::Central;
  return std::nullopt;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t", pos);
    if (start == std::string_view::npos) break;
    const auto end = s.find_first_of(" \t", start);
    out.push_back(s.substr(start, end == std::string_view::npos ? s.size() - start : end - start));
    if (end == std::string_view::npos) break;
    pos = end;
  }
  return out;
}

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Typed access to one `key = value` entry.
class Value {
public:
  explicit Value(const Entry& e) : e_(e) {}

  [[nodiscard]] double number() const {
    const auto words = split_words(e_.value);
    if (words.size() != 1) {
      fail("expected a single number");
    }
    return parse(words[0]);
  }
  [[nodiscard]] std::vector<double> numbers(std::size_t min_count, std::size_t max_count) const {
    std::vector<double> out;
    for (auto w : split_words(e_.value)) out.push_back(parse(w));
    if (out.size() < min_count || out.size() > max_count) {
      fail("wrong number of values");
    }
    return out;
  }
  [[nodiscard]] int integer() const {
    const double v = number();
    if (v != std::floor(v) || std::abs(v) > 1e9) {
      fail("expected an integer");
    }
    return static_cast<int>(v);
  }
  [[nodiscard]] bool boolean() const {
    if (e_.value == "true" || e_.value == "yes" || e_.value == "1") return true;
    if (e_.value == "false" || e_.value == "no" || e_.value == "0") return false;
    fail("expected true or false");
  }
  [[nodiscard]] std::pair<double, double> range() const {
    const auto v = numbers(2, 2);
    if (!(v[1] > v[0])) {
      fail("range upper bound must exceed lower bound");
    }
    return {v[0], v[1]};
  }
  [[nodiscard]] const std::string& text() const { return e_.value; }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(e_.line, "key '" + e_.key + "': " + what);
  }

private:
  double parse(std::string_view w) const {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size() || !std::isfinite(v)) {
      fail("invalid number '" + std::string(w) + "'");
    }
    return v;
  }

  const Entry& e_;
};

struct Section {
  std::string name;
  int line = 0;
  std::vector<Entry> entries;
};

using Handler = std::function<void(const Value&)>;

void dispatch(const Section& s, const std::map<std::string, Handler>& handlers) {
  std::set<std::string> seen;
  for (const auto& e : s.entries) {
    const auto it = handlers.find(e.key);
    if (it == handlers.end()) {
      throw ConfigError(e.line, "unknown key '" + e.key + "' in section [" + s.name + "]");
    }
    if (!seen.insert(e.key).second) {
      throw ConfigError(e.line, "duplicate key '" + e.key + "'");
    }
    it->second(Value(e));
  }
}

bool has_key(const Section& s, std::string_view key) {
  return std::any_of(s.entries.begin(), s.entries.end(),
                     [&](const Entry& e) { return e.key == key; });
}

std::vector<Section> tokenize(std::string_view text) {
  std::vector<Section> sections;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) {
      continue;
    }
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw ConfigError(line_no, "malformed section header");
      }
      sections.push_back({std::string(trim(line.substr(1, line.size() - 2))), line_no, {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(line_no, "expected 'key = value'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(line_no, "expected 'key = value'");
    }
    if (sections.empty()) {
      throw ConfigError(line_no, "entry outside of any section");
    }
    sections.back().entries.push_back({std::string(key), std::string(value), line_no});
  }
  return sections;
}

void parse_mesh(const Section& s, MeshSpec& mesh) {
  for (const char* required : {"extents", "counts"}) {
    if (!has_key(s, required)) {
      throw ConfigError(s.line, std::string("[mesh] requires '") + required + "'");
    }
  }
  dispatch(s, {
      {"extents",
       [&](const Value& v) {
         const auto e = v.numbers(3, 3);
         for (double x : e) {
           if (!(x > 0.0)) v.fail("extents must be positive");
         }
         mesh.extents = {e[0], e[1], e[2]};
       }},
      {"counts",
       [&](const Value& v) {
         const auto c = v.numbers(3, 3);
         for (int a = 0; a < 3; ++a) {
           if (c[a] < 1 || c[a] != std::floor(c[a])) v.fail("counts must be positive integers");
           mesh.counts[a] = static_cast<std::size_t>(c[a]);
         }
       }},
  });
}

RegionSpec parse_region(const Section& s) {
  RegionSpec r;
  r.line = s.line;
  if (!has_key(s, "id")) {
    throw ConfigError(s.line, "[region] requires 'id'");
  }
  auto& m = r.medium;
  dispatch(s, {
      {"id", [&](const Value& v) { r.id = v.integer(); }},
      {"z_range", [&](const Value& v) { r.z_range = v.range(); }},
      {"conductivity",
       [&](const Value& v) {
         const auto k = v.numbers(1, 3);
         if (k.size() == 2) v.fail("give one (isotropic) or three (k_xx k_yy k_zz) values");
         m.conductivity = k.size() == 1 ? Vec3{k[0], k[0], k[0]} : Vec3{k[0], k[1], k[2]};
       }},
      {"porosity", [&](const Value& v) { m.porosity = v.number(); }},
      {"alpha_phi", [&](const Value& v) { m.alpha_phi = v.number(); }},
      {"alpha_theta", [&](const Value& v) { m.alpha_theta = v.number(); }},
      {"specific_storage", [&](const Value& v) { m.specific_storage = v.number(); }},
      {"kr_floor", [&](const Value& v) { m.kr_floor = v.number(); }},
  });
  try {
    m.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(s.line, std::string("[region] id ") + std::to_string(r.id) + ": " + e.what());
  }
  return r;
}

BoundarySpec parse_boundary(const Section& s) {
  BoundarySpec b;
  b.line = s.line;
  for (const char* required : {"side", "type"}) {
    if (!has_key(s, required)) {
      throw ConfigError(s.line, std::string("[boundary] requires '") + required + "'");
    }
  }
  std::string type;
  std::optional<double> head;
  std::optional<double> flux;
  dispatch(s, {
      {"side",
       [&](const Value& v) {
         const auto tag = boundary_tag_from_string(v.text());
         if (!tag) v.fail("unknown side '" + v.text() + "'");
         b.side = *tag;
       }},
      {"type", [&](const Value& v) { type = v.text(); }},
      {"head", [&](const Value& v) { head = v.number(); }},
      {"flux", [&](const Value& v) { flux = v.number(); }},
      {"z_range", [&](const Value& v) { b.z_range = v.range(); }},
  });
  if (type == "dirichlet") {
    if (!head) throw ConfigError(s.line, "dirichlet boundary requires 'head'");
    if (flux) throw ConfigError(s.line, "dirichlet boundary does not take 'flux'");
    b.condition = DirichletHead{*head};
  } else if (type == "flux") {
    if (!flux) throw ConfigError(s.line, "flux boundary requires 'flux'");
    if (head) throw ConfigError(s.line, "flux boundary does not take 'head'");
    b.condition = NeumannFlux{*flux};
  } else if (type == "seepage" || type == "noflow") {
    if (head || flux) throw ConfigError(s.line, type + " boundary takes neither 'head' nor 'flux'");
    b.condition = type == "seepage" ? BoundaryCondition{Seepage{}} : BoundaryCondition{NeumannFlux{0.0}};
  } else {
    throw ConfigError(s.line, "unknown boundary type '" + type + "'");
  }
  if (b.z_range && (b.side == BoundaryTag::ZMin || b.side == BoundaryTag::ZMax)) {
    throw ConfigError(s.line, "z_range is only meaningful on lateral sides");
  }
  return b;
}

SourceSpec parse_source(const Section& s) {
  SourceSpec src;
  src.line = s.line;
  if (!has_key(s, "rate")) {
    throw ConfigError(s.line, "[source] requires 'rate'");
  }
  dispatch(s, {
      {"region", [&](const Value& v) { src.region = v.integer(); }},
      {"rate", [&](const Value& v) { src.rate = v.number(); }},
  });
  return src;
}

void parse_solver(const Section& s, SolverSpec& sol) {
  auto& nw = sol.newton;
  auto& pt = sol.pseudo_transient;
  auto& cont = sol.continuation;
  dispatch(s, {
      {"strategy",
       [&](const Value& v) {
         const auto st = strategy_from_string(v.text());
         if (!st) v.fail("expected newton, continuation or pseudo_transient");
         sol.strategy = *st;
       }},
      {"kind",
       [&](const Value& v) {
         const auto k = kind_from_string(v.text());
         if (!k) v.fail("expected power or linear");
         cont.kind = *k;
       }},
      {"kr_scheme",
       [&](const Value& v) {
         const auto k = kr_scheme_from_string(v.text());
         if (!k) v.fail("expected upwind or central");
         sol.kr_scheme = *k;
       }},
      {"eps_rel", [&](const Value& v) { nw.tolerance.eps_rel = v.number(); }},
      {"eps_abs", [&](const Value& v) { nw.tolerance.eps_abs = v.number(); }},
      {"maxit", [&](const Value& v) { nw.maxit = v.integer(); }},
      {"line_search", [&](const Value& v) { nw.line_search = v.boolean(); }},
      {"line_search_start", [&](const Value& v) { nw.line_search_start = v.integer(); }},
      {"gamma", [&](const Value& v) { nw.gamma = v.number(); }},
      {"omega_refinements", [&](const Value& v) { nw.omega_refinements = v.integer(); }},
      {"relaxation", [&](const Value& v) { nw.fixed_relaxation = v.number(); }},
      {"lin_rel_tol", [&](const Value& v) { nw.linear.rel_tol = v.number(); }},
      {"lin_abs_tol", [&](const Value& v) { nw.linear.abs_tol = v.number(); }},
      {"lin_max_iters", [&](const Value& v) { nw.linear.max_iters = v.integer(); }},
      {"ilu_level", [&](const Value& v) { nw.linear.ilu_level = v.integer(); }},
      {"dq_min", [&](const Value& v) { cont.dq_min = v.number(); }},
      {"initial_head", [&](const Value& v) { sol.initial_head = v.number(); }},
      {"pt_initial",
       [&](const Value& v) {
         if (v.text() == "linear") sol.pt_initial = InitialGuess::Linear;
         else if (v.text() == "constant") sol.pt_initial = InitialGuess::Constant;
         else v.fail("expected linear or constant");
       }},
      {"dt_init", [&](const Value& v) { pt.dt_init = v.number(); }},
      {"dt_min", [&](const Value& v) { pt.dt_min = v.number(); }},
      {"dt_max", [&](const Value& v) { pt.dt_max = v.number(); }},
      {"numit_inc", [&](const Value& v) { pt.numit_inc = v.integer(); }},
      {"max_steps", [&](const Value& v) { pt.max_steps = v.integer(); }},
      {"pt_line_search", [&](const Value& v) { pt.line_search = v.boolean(); }},
  });
  pt.steady = nw.tolerance;
  try {
    nw.validate();
    cont.validate();
    pt.validate(nw.maxit);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(s.line, std::string("[solver]: ") + e.what());
  }
}

} // namespace

ProblemConfig parse_config(std::string_view text) {
  ProblemConfig cfg;
  cfg.solver.pseudo_transient.steady = cfg.solver.newton.tolerance;
  bool have_mesh = false;
  bool have_solver = false;
  for (const Section& s : tokenize(text)) {
    if (s.name == "mesh") {
      if (have_mesh) throw ConfigError(s.line, "duplicate [mesh] section");
      parse_mesh(s, cfg.mesh);
      have_mesh = true;
    } else if (s.name == "region") {
      cfg.regions.push_back(parse_region(s));
    } else if (s.name == "boundary") {
      cfg.boundaries.push_back(parse_boundary(s));
    } else if (s.name == "source") {
      cfg.sources.push_back(parse_source(s));
    } else if (s.name == "solver") {
      if (have_solver) throw ConfigError(s.line, "duplicate [solver] section");
      parse_solver(s, cfg.solver);
      have_solver = true;
    } else {
      throw ConfigError(s.line, "unknown section [" + s.name + "]");
    }
  }
  if (!have_mesh) {
    throw ConfigError(0, "missing [mesh] section");
  }
  if (cfg.regions.empty()) {
    throw ConfigError(0, "at least one [region] section is required");
  }
  std::set<int> ids;
  for (const auto& r : cfg.regions) {
    if (!ids.insert(r.id).second) {
      throw ConfigError(r.line, "duplicate region id " + std::to_string(r.id));
    }
    if (!r.z_range && cfg.regions.size() > 1) {
      throw ConfigError(r.line, "z_range is required when several regions are defined");
    }
  }
  for (const auto& src : cfg.sources) {
    if (src.region && !ids.count(*src.region)) {
      throw ConfigError(src.line, "source refers to unknown region " + std::to_string(*src.region));
    }
  }
  const bool head_bc = std::any_of(cfg.boundaries.begin(), cfg.boundaries.end(), [](const BoundarySpec& b) {
    return !std::holds_alternative<NeumannFlux>(b.condition);
  });
  if (!head_bc) {
    throw ConfigError(0, "ill-posed problem: no dirichlet or seepage boundary");
  }
  return cfg;
}

ProblemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError(0, "cannot open configuration file '" + path + "'");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void scale_mesh(ProblemConfig& config, double factor) {
  if (!(factor > 0.0)) {
    throw ConfigError(0, "mesh scale must be positive");
  }
  for (auto& n : config.mesh.counts) {
    if (n > 1) {
      n = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * factor)));
    }
  }
}

FlowModel build_model(const ProblemConfig& config) {
  std::vector<RegionLayer> layers;
  std::map<int, MediumProperties> media;
  for (const auto& r : config.regions) {
    media[r.id] = r.medium;
    if (r.z_range) {
      layers.push_back({r.z_range->first, r.z_range->second, r.id});
    }
  }
  Mesh mesh;
  try {
    mesh = build_box_grid(config.mesh.extents, config.mesh.counts, layers);
  } catch (const MeshError& e) {
    throw ConfigError(0, std::string("mesh: ") + e.what());
  }
  if (layers.empty() && !config.regions.empty()) {
    mesh.set_cell_region(std::vector<int>(mesh.num_cells(), config.regions.front().id));
  }

  FlowModel model(std::move(mesh), media);
  for (const auto& b : config.boundaries) {
    model.set_boundary(b.side, b.condition, b.z_range);
  }
  if (!model.has_head_condition()) {
    throw ConfigError(0, "ill-posed problem: no boundary face carries a dirichlet or seepage condition");
  }
  const auto& regions = model.mesh().cell_region();
  for (const auto& src : config.sources) {
    for (std::size_t c = 0; c < model.num_cells(); ++c) {
      if (!src.region || regions[c] == *src.region) {
        model.set_source(c, model.sources()[c] + src.rate);
      }
    }
  }
  return model;
}

HeadState constant_initial_state(const ProblemConfig& config, const FlowModel& model) {
  double h = config.mesh.extents[Z];
  if (config.solver.initial_head) {
    h = *config.solver.initial_head;
  } else if (const auto d = model.max_dirichlet_head()) {
    h = *d;
  }
  return HeadState(model.num_cells(), h);
}

} // namespace richards
