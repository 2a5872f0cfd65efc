#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "axim/solver.hpp"
#include "oracles.hpp"

using namespace axim;

namespace {

// Delta-dominated random kernels keep the model well conditioned, which
// the consistent-system convergence checks rely on.
AxialKernelStack conditioned_stack(std::mt19937_64& g, int mt, int nt, int mr, int nc) {
  AxialKernelStack stack(mt, nt, mr, nc);
  const int mk = 2 * mr + 1, nk = 2 * nc + 1;
  const double scale = 0.3 / std::sqrt(double(mk) * nk);
  for (int i_h = 1; i_h <= mt; ++i_h) {
    Kernel k = oracle::random_image(g, mk, nk);
    for (double& v : k.values()) v *= scale;
    k.at(mr, nc) += 1.0;
    stack.set_kernel(i_h, k);
  }
  return stack;
}

AxialKernelStack random_stack(std::mt19937_64& g, int mt, int nt, int mr, int nc) {
  AxialKernelStack stack(mt, nt, mr, nc);
  for (int i_h = 1; i_h <= mt; ++i_h) {
    stack.set_kernel(i_h, oracle::random_image(g, 2 * mr + 1, 2 * nc + 1));
  }
  return stack;
}

}  // namespace

TEST_CASE("config validation") {
  SolverConfig cfg;
  cfg.lambda1 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.max_iters = 0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.backtrack_shrink = 1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = SolverConfig{};
  cfg.initial_step = 0.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("objective values") {
  std::mt19937_64 g(61);
  ForwardModel model(random_stack(g, 8, 6, 1, 1), PadMode::Symmetric);
  Image y = oracle::random_image(g, 8, 6);
  SolverConfig cfg;
  cfg.lambda1 = 0.0;
  cfg.lambda2 = 0.0;

  CHECK(objective_value(model, Image(8, 6), y, cfg) ==
        doctest::Approx(0.5 * sum_squares(y)).epsilon(1e-14));

  Image xstar = oracle::random_image(g, 8, 6);
  Image consistent = model.apply(xstar);
  CHECK(objective_value(model, xstar, consistent, cfg) <=
        1e-20 * std::max(1.0, sum_squares(consistent)));

  // independent term-by-term evaluation through the dense matrix
  cfg.lambda1 = 0.17;
  cfg.lambda2 = 0.05;
  Image x = oracle::random_image(g, 8, 6);
  SparseOperator dense =
      materialize_operator([&](const Image& z) { return model.apply(z); }, 8, 6);
  Image residual = dense.apply(x, 8, 6) - y;
  const double want =
      0.5 * sum_squares(residual) + 0.17 * norm1(x) + 0.5 * 0.05 * sum_squares(x);
  CHECK(objective_value(model, x, y, cfg) == doctest::Approx(want).epsilon(1e-13));
}

TEST_CASE("elastic net prox: fixed points and the grid-search oracle") {
  Image zero(3, 3);
  CHECK(max_abs(prox_elastic_net(zero, 1.0, 0.5, 0.5)) == 0.0);

  std::mt19937_64 g(62);
  Image v = oracle::random_image(g, 4, 5);
  CHECK(oracle::max_abs_diff(prox_elastic_net(v, 2.0, 0.0, 0.0), v) == 0.0);

  // minimize 0.5*(u-1)^2 + 0.5*|u| + 0.5*u^2 over a fine grid
  double best_u = 0.0, best_val = 1e300;
  for (int i = -2000000; i <= 2000000; ++i) {
    const double u = i * 1e-6;
    const double val = 0.5 * (u - 1.0) * (u - 1.0) + 0.5 * std::abs(u) + 0.5 * u * u;
    if (val < best_val) {
      best_val = val;
      best_u = u;
    }
  }
  Image one(1, 1, {1.0});
  const double prox_val = prox_elastic_net(one, 1.0, 0.5, 1.0).at(0, 0);
  CHECK(prox_val == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(std::abs(best_u - prox_val) <= 1e-6);

  CHECK_THROWS_AS(prox_elastic_net(v, 0.0, 0.1, 0.1), std::invalid_argument);
}

TEST_CASE("prox is non-expansive and satisfies the subgradient inclusion") {
  std::mt19937_64 g(63);
  std::uniform_real_distribution<double> pos(0.05, 2.0), w(0.0, 1.0);
  for (int t = 0; t < 30; ++t) {
    const double step = pos(g), l1 = w(g), l2 = w(g);
    Image u = oracle::random_image(g, 6, 5);
    Image v = oracle::random_image(g, 6, 5);
    Image pu = prox_elastic_net(u, step, l1, l2);
    Image pv = prox_elastic_net(v, step, l1, l2);
    CHECK(norm2(pu - pv) <= norm2(u - v) * (1.0 + 1e-14));

    for (std::int64_t i = 0; i < u.size(); ++i) {
      const double ui = pu.values()[i];
      const double d = u.values()[i] - ui - step * l2 * ui;
      if (ui > 0.0) {
        CHECK(std::abs(d - step * l1) <= 1e-10);
      } else if (ui < 0.0) {
        CHECK(std::abs(d + step * l1) <= 1e-10);
      } else {
        CHECK(std::abs(d) <= step * l1 + 1e-10);
      }
    }
  }
}

TEST_CASE("zero data with l1 weight keeps the zero fixed point") {
  std::mt19937_64 g(64);
  ForwardModel model(random_stack(g, 8, 6, 1, 1), PadMode::Symmetric);
  SolverConfig cfg;
  cfg.lambda1 = 1e-3;
  cfg.lambda2 = 1e-4;
  cfg.max_iters = 25;
  SolverReport report = deconvolve(model, Image(8, 6), cfg);
  CHECK(max_abs(report.estimate) == 0.0);
  for (double f : report.objective_trace) CHECK(f == 0.0);
}

TEST_CASE("noiseless consistent least squares converges far below the initial objective") {
  std::mt19937_64 g(65);
  ForwardModel model(conditioned_stack(g, 16, 12, 2, 3), PadMode::Symmetric);
  Image xstar = oracle::random_image(g, 16, 12);
  Image y = model.apply(xstar);

  SolverConfig cfg;
  cfg.lambda1 = 0.0;
  cfg.lambda2 = 0.0;
  cfg.max_iters = 500;
  SolverReport report = deconvolve(model, y, cfg);

  REQUIRE(!report.objective_trace.empty());
  for (std::size_t i = 1; i < report.objective_trace.size(); ++i) {
    CHECK(report.objective_trace[i] <= report.objective_trace[i - 1] * (1.0 + 1e-12));
  }
  CHECK(report.objective_trace.back() <= 1e-6 * report.initial_objective);
  CHECK(report.iterations <= 500);
  CHECK(report.objective_trace.size() == static_cast<std::size_t>(report.iterations));
  CHECK(report.step_trace.size() == report.objective_trace.size());
}

TEST_CASE("strong convexity drives different starts to the same solution") {
  std::mt19937_64 g(66);
  ForwardModel model(conditioned_stack(g, 10, 8, 1, 2), PadMode::Symmetric);
  Image y = oracle::random_image(g, 10, 8);
  SolverConfig cfg;
  cfg.lambda1 = 0.01;
  cfg.lambda2 = 0.1;
  cfg.max_iters = 400;

  SolverReport from_zero = deconvolve(model, y, cfg);
  Image start = oracle::random_image(g, 10, 8);
  SolverReport from_random = deconvolve(model, y, cfg, &start);
  const double gap = norm2(from_zero.estimate - from_random.estimate) /
                     std::max(norm2(from_zero.estimate), 1e-300);
  CHECK(gap <= 1e-6);
}

TEST_CASE("relative-change tolerance stops early") {
  std::mt19937_64 g(67);
  ForwardModel model(conditioned_stack(g, 10, 8, 1, 1), PadMode::Symmetric);
  Image y = oracle::random_image(g, 10, 8);
  SolverConfig cfg;
  cfg.max_iters = 500;
  cfg.tol = 1e-9;
  SolverReport report = deconvolve(model, y, cfg);
  CHECK(report.iterations < 500);
}

TEST_CASE("explicit initial step is honored") {
  std::mt19937_64 g(68);
  ForwardModel model(conditioned_stack(g, 8, 6, 1, 1), PadMode::Symmetric);
  Image y = oracle::random_image(g, 8, 6);
  SolverConfig cfg;
  cfg.initial_step = 1e-3;
  cfg.max_iters = 30;
  SolverReport report = deconvolve(model, y, cfg);
  CHECK(report.iterations == 30);
  for (std::size_t i = 1; i < report.objective_trace.size(); ++i) {
    CHECK(report.objective_trace[i] <= report.objective_trace[i - 1] * (1.0 + 1e-12));
  }
}

TEST_CASE("operator norm estimate brackets the dense spectral norm") {
  std::mt19937_64 g(69);
  ForwardModel model(random_stack(g, 9, 7, 1, 1), PadMode::Symmetric);
  const double est = estimate_operator_norm(model, 100);

  SparseOperator dense =
      materialize_operator([&](const Image& z) { return model.apply(z); }, 9, 7);
  std::vector<double> b(63);
  std::normal_distribution<double> nd;
  for (double& x : b) x = nd(g);
  double lambda = 0.0;
  for (int it = 0; it < 1000; ++it) {
    double nb = 0.0;
    for (double x : b) nb += x * x;
    nb = std::sqrt(nb);
    for (double& x : b) x /= nb;
    auto c = dense.apply(b);
    lambda = 0.0;
    for (double x : c) lambda += x * x;
    b = dense.apply_transpose(c);
  }
  const double true_norm = std::sqrt(lambda);
  CHECK(est <= true_norm * (1.0 + 1e-9));
  CHECK(est >= 0.7 * true_norm);
}

TEST_CASE("trace CSV format") {
  SolverReport report;
  report.objective_trace = {3.5, 2.25, 2.25};
  report.step_trace = {0.5, 0.25, 0.25};
  report.iterations = 3;
  std::stringstream ss;
  write_trace_csv(ss, report);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "iter,objective,step");
  std::getline(ss, line);
  CHECK(line == "1,3.5,0.5");
  int rows = 1;
  while (std::getline(ss, line)) ++rows;
  CHECK(rows == 3);
}
