#include <doctest.h>

#include <cmath>
#include <functional>

#include "richards/newton.hpp"

using namespace richards;

namespace {

/// Scalar equations f(x_i) = 0, one per component.
class ScalarProblem final : public NonlinearProblem {
public:
  ScalarProblem(std::function<double(double)> f, std::function<double(double)> df, std::size_t n = 1)
      : f_(std::move(f)), df_(std::move(df)), n_(n) {}
  [[nodiscard]] std::size_t size() const override { return n_; }
  [[nodiscard]] std::vector<double> residual(std::span<const double> x) const override {
    ++evaluations;
    std::vector<double> r(n_);
    for (std::size_t i = 0; i < n_; ++i) r[i] = f_(x[i]);
    return r;
  }
  [[nodiscard]] SparseMatrix jacobian(std::span<const double> x) const override {
    SparseMatrix j(n_, std::vector<std::vector<std::size_t>>(n_));
    for (std::size_t i = 0; i < n_; ++i) j.at(i, i) = df_(x[i]);
    return j;
  }
  mutable int evaluations = 0;

private:
  std::function<double(double)> f_, df_;
  std::size_t n_;
};

ScalarProblem cubic() {
  return ScalarProblem([](double x) { return x * x * x - 1.0; }, [](double x) { return 3.0 * x * x; });
}

} // namespace

TEST_CASE("linear problem converges after one iteration") {
  const ScalarProblem p([](double x) { return 2.0 * x - 6.0; }, [](double) { return 2.0; }, 4);
  const std::vector<double> x0(4, 0.0);
  const auto out = newton_solve(p, x0, NewtonConfig{});
  CHECK(out.converged());
  CHECK(out.iterations == 1);
  CHECK(out.records.size() == 2);
  CHECK(out.records[1].omega == 1.0);
  for (double v : out.state) CHECK(v == doctest::Approx(3.0));
}

TEST_CASE("already converged initial state takes zero iterations") {
  const auto p = cubic();
  const std::vector<double> x0 = {1.0};
  const auto out = newton_solve(p, x0, NewtonConfig{});
  CHECK(out.converged());
  CHECK(out.iterations == 0);
  CHECK(out.records.size() == 1);
}

TEST_CASE("line search accepts the first strictly decreasing trial") {
  const auto p = cubic();
  const double x0 = 0.05;
  const double f0 = x0 * x0 * x0 - 1.0;
  const double dx = -f0 / (3.0 * x0 * x0);
  // brute-force oracle over 1, 1/4, 1/16, ...
  double expected = -1.0;
  int expected_trials = 0;
  for (int j = 0; j <= 7; ++j) {
    const double w = std::pow(0.25, j);
    ++expected_trials;
    const double x = x0 + w * dx;
    if (std::abs(x * x * x - 1.0) < std::abs(f0)) {
      expected = w;
      break;
    }
  }
  REQUIRE(expected > 0.0);
  REQUIRE(expected < 1.0);
  const std::vector<double> base = {x0};
  const std::vector<double> dir = {dx};
  const auto ls = line_search(p, base, dir, std::abs(f0), 0.25, std::pow(0.25, 7));
  CHECK(ls.accepted);
  CHECK(ls.omega == expected);
  CHECK(ls.trials == expected_trials);
  CHECK(ls.state[0] == doctest::Approx(x0 + expected * dx));
  CHECK(ls.residual_l2 == doctest::Approx(std::abs(std::pow(x0 + expected * dx, 3) - 1.0)));
}

TEST_CASE("line search fails on an ascent direction after eight trials") {
  const ScalarProblem p([](double x) { return x; }, [](double) { return 1.0; });
  const std::vector<double> base = {1.0};
  const std::vector<double> dir = {1.0};
  const int before = p.evaluations;
  const auto ls = line_search(p, base, dir, 1.0, 0.25, std::pow(0.25, 7));
  CHECK_FALSE(ls.accepted);
  CHECK(ls.trials == 8);
  CHECK(p.evaluations - before == 8);
}

TEST_CASE("line search is skipped during the first iterations") {
  const auto p = cubic();
  const std::vector<double> x0 = {0.05};
  NewtonConfig cfg;
  cfg.tolerance = {1e-12, 1e-12};
  cfg.maxit = 60;
  const auto out = newton_solve(p, x0, cfg);
  CHECK(out.converged());
  CHECK(out.state[0] == doctest::Approx(1.0));
  for (const auto& rec : out.records) {
    if (rec.iteration >= 1 && rec.iteration <= cfg.line_search_start) {
      CHECK(rec.omega == 1.0);
      CHECK(rec.line_search_trials == 0);
    }
  }
  cfg.line_search_start = 0;
  const auto early = newton_solve(p, x0, cfg);
  CHECK(early.converged());
  CHECK(early.records[1].omega < 1.0);
  CHECK(early.iterations < out.iterations);
}

TEST_CASE("a failed line search stops Newton") {
  // no real root: every step eventually overshoots
  const ScalarProblem p([](double x) { return x * x + 1.0; }, [](double x) { return 2.0 * x; });
  const std::vector<double> x0 = {1e-3};
  NewtonConfig cfg;
  cfg.line_search_start = 0;
  cfg.maxit = 50;
  const auto out = newton_solve(p, x0, cfg);
  CHECK_FALSE(out.converged());
  CHECK(out.status == NewtonStatus::LineSearchFailed);
}

TEST_CASE("iteration limit") {
  const auto p = cubic();
  const std::vector<double> x0 = {10.0};
  NewtonConfig cfg;
  cfg.maxit = 2;
  const auto out = newton_solve(p, x0, cfg);
  CHECK(out.status == NewtonStatus::MaxIterExceeded);
  CHECK(out.iterations == 2);
}

TEST_CASE("fixed relaxation scales every update") {
  const ScalarProblem p([](double x) { return x - 1.0; }, [](double) { return 1.0; });
  const std::vector<double> x0 = {0.0};
  NewtonConfig cfg;
  cfg.fixed_relaxation = 0.5;
  cfg.tolerance = {1e-3, 1e-12};
  const auto out = newton_solve(p, x0, cfg);
  CHECK(out.converged());
  // residual halves per iteration: 2^-10 < 1e-3
  CHECK(out.iterations == 10);
  for (std::size_t k = 1; k < out.records.size(); ++k) {
    CHECK(out.records[k].omega == 0.5);
    CHECK(out.records[k].res_l2 == doctest::Approx(std::pow(0.5, static_cast<double>(k))));
  }
}

TEST_CASE("correction hook is applied after every update and reported") {
  const ScalarProblem p([](double x) { return x - 1.0; }, [](double) { return 1.0; });
  const std::vector<double> x0 = {0.0};
  NewtonConfig cfg;
  int calls = 0;
  cfg.correction = {"clip", [&](HeadState& h) {
                      ++calls;
                      h[0] = std::min(h[0], 0.5);
                    }};
  cfg.maxit = 3;
  const auto out = newton_solve(p, x0, cfg);
  CHECK(calls == 3);
  CHECK(out.correction == "clip");
  CHECK(out.state[0] == 0.5);
  CHECK_FALSE(out.converged());
  CHECK(NewtonConfig{}.correction.is_default());
}

TEST_CASE("configuration validation") {
  NewtonConfig cfg;
  CHECK(cfg.omega_min() == doctest::Approx(std::pow(0.25, 7)));
  cfg.gamma = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = NewtonConfig{};
  cfg.fixed_relaxation = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("convergence test uses either the relative or the absolute branch") {
  const ConvergenceTest t{1e-5, 1e-5};
  CHECK(t.satisfied(0.5e-5, 1.0, 1.0));
  CHECK(t.satisfied(1.0, 0.5e-5, 1.0));
  CHECK_FALSE(t.satisfied(1e-5, 1e-5, 1.0));
}
