#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

int run_cli(const std::string& args) {
  const std::string cmd = std::string(RICHARDS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("richards_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const std::string kDam = std::string(RICHARDS_CONFIG_DIR) + "/dam.cfg";

} // namespace

TEST_CASE("dam solve writes all outputs and exits 0") {
  const fs::path out = scratch("dam");
  CHECK(run_cli("solve " + kDam + " --out " + out.string()) == 0);
  CHECK(fs::exists(out / "head.vtk"));
  CHECK(fs::exists(out / "convergence.csv"));
  const std::string summary = slurp(out / "summary.txt");
  CHECK(summary.find("status = solved") != std::string::npos);
  CHECK(summary.find("steps_successful = 1\n") != std::string::npos);
  CHECK(summary.find("exit_code = 0") != std::string::npos);
  const std::string vtk = slurp(out / "head.vtk");
  CHECK(vtk.find("SCALARS head double 1") != std::string::npos);
  CHECK(vtk.find("SCALARS saturation double 1") != std::string::npos);
  CHECK(vtk.find("SCALARS water_content double 1") != std::string::npos);
}

TEST_CASE("reruns produce identical convergence logs") {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  REQUIRE(run_cli("solve " + kDam + " --out " + a.string()) == 0);
  REQUIRE(run_cli("solve " + kDam + " --out " + b.string()) == 0);
  CHECK(slurp(a / "convergence.csv") == slurp(b / "convergence.csv"));
}

TEST_CASE("all-Neumann problem exits 1 with the failure class") {
  const fs::path dir = scratch("neumann");
  std::ofstream(dir / "bad.cfg") << "[mesh]\nextents = 1 1 1\ncounts = 2 1 2\n[region]\nid = 0\n"
                                    "[boundary]\nside = zmax\ntype = flux\nflux = -0.01\n";
  CHECK(run_cli("solve " + (dir / "bad.cfg").string() + " --out " + (dir / "out").string()) == 1);
}

TEST_CASE("command-line overrides and errors") {
  const fs::path out = scratch("override");
  CHECK(run_cli("solve " + kDam + " --out " + out.string() + " --strategy newton --kr-scheme central") == 0);
  CHECK(slurp(out / "summary.txt").find("strategy = newton") != std::string::npos);
  CHECK(slurp(out / "summary.txt").find("kr_scheme = central") != std::string::npos);
  CHECK(run_cli("solve " + kDam + " --strategy picard") == 1);
  CHECK(run_cli("solve /nonexistent.cfg") == 1);
  CHECK(run_cli("frobnicate") == 1);
}

TEST_CASE("solver failure maps to its exit code") {
  const fs::path dir = scratch("fail");
  std::ofstream(dir / "dam.cfg") << slurp(kDam) << "\n# too few iterations\n";
  std::string text = slurp(dir / "dam.cfg");
  text.replace(text.find("maxit = 25"), 10, "maxit = 2");
  text.replace(text.find("numit_inc = 15"), 14, "numit_inc = 1");
  std::ofstream(dir / "dam.cfg") << text;
  CHECK(run_cli("solve " + (dir / "dam.cfg").string() + " --out " + (dir / "out").string()) == 4);
  CHECK(slurp(dir / "out" / "summary.txt").find("failure = step_floor_reached") != std::string::npos);
  CHECK(run_cli("solve " + (dir / "dam.cfg").string() + " --strategy newton --out " + (dir / "out").string()) == 3);
}

TEST_CASE("unwritable output directory exits 6") {
  const fs::path dir = scratch("io");
  std::ofstream(dir / "file") << "x";
  CHECK(run_cli("solve " + kDam + " --out " + (dir / "file" / "sub").string()) == 6);
}

TEST_CASE("compare prints a table for both continuation kinds") {
  const fs::path out = scratch("compare");
  CHECK(run_cli("compare " + kDam + " --out " + out.string()) == 0);
  const std::string table = slurp(out / "comparison.txt");
  CHECK(table.find("Power, upwind") != std::string::npos);
  CHECK(table.find("Linear, upwind") != std::string::npos);
  CHECK(table.find("1(0)") != std::string::npos);
}
