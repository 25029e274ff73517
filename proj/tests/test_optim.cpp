#include <doctest.h>

#include <cmath>
#include <limits>

#include "demplast/errors.hpp"
#include "demplast/optim.hpp"

using namespace demplast;

namespace {

// f = 1/2 sum c_i x_i^2
Objective quadratic(std::vector<double> curv) {
  return [curv](std::span<const double> x, ParamVector& g) {
    g.assign(x.size(), 0.0);
    double f = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      f += 0.5 * curv[i] * x[i] * x[i];
      g[i] = curv[i] * x[i];
    }
    return f;
  };
}

}  // namespace

TEST_CASE("first step on a 1-D quadratic is gradient descent") {
  Lbfgs opt({0.5, 20});
  ParamVector x{1.0};
  const auto r = opt.step(quadratic({1.0}), x);
  CHECK(r.status == Lbfgs::Status::Ok);
  CHECK(r.loss == 0.5);
  CHECK(x[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("2-D quadratic with distinct curvatures converges") {
  Lbfgs opt({1.0, 20});
  const Objective f = quadratic({1.0, 10.0});
  ParamVector x{1.0, 1.0};
  ParamVector g;
  int iters = 0;
  double gnorm = 1.0;
  while (iters < 25) {
    f(x, g);
    gnorm = std::hypot(g[0], g[1]);
    if (gnorm <= 1e-10) break;
    opt.step(f, x);
    ++iters;
  }
  CHECK(gnorm <= 1e-10);
  CHECK(iters <= 25);
}

TEST_CASE("zero gradient leaves parameters unchanged") {
  Lbfgs opt;
  ParamVector x{0.0, 0.0, 0.0};
  for (int k = 0; k < 3; ++k) opt.step(quadratic({1.0, 2.0, 3.0}), x);
  CHECK(x == ParamVector{0.0, 0.0, 0.0});
}

TEST_CASE("reset clears the curvature history") {
  Lbfgs opt;
  ParamVector x{1.0, -2.0};
  for (int k = 0; k < 4; ++k) opt.step(quadratic({1.0, 3.0}), x);
  CHECK(opt.history_size() > 0);
  opt.reset();
  CHECK(opt.history_size() == 0);
}

TEST_CASE("non-finite objective is reported") {
  Lbfgs opt;
  ParamVector x{1.0};
  const Objective bad = [](std::span<const double>, ParamVector& g) {
    g.assign(1, 0.0);
    return std::numeric_limits<double>::quiet_NaN();
  };
  CHECK(opt.step(bad, x).status == Lbfgs::Status::NonFinite);
  CHECK(x[0] == 1.0);
}

TEST_CASE("monitor examples") {
  SUBCASE("20 identical losses") {
    ConvergenceMonitor m(10, 1e-6);
    for (int k = 0; k < 20; ++k) m.record(3.25);
    CHECK(m.converged());
    CHECK(m.relative_change() == 0.0);
  }
  SUBCASE("linear decrease 100 .. 81") {
    ConvergenceMonitor m(10, 1e-6);
    for (int k = 0; k < 20; ++k) m.record(100.0 - k);
    CHECK_FALSE(m.converged());
    CHECK(m.relative_change() == doctest::Approx(10.0 / 85.5).epsilon(1e-14));
  }
  SUBCASE("15 samples") {
    ConvergenceMonitor m(10, 1e-6);
    for (int k = 0; k < 15; ++k) m.record(1.0);
    CHECK_FALSE(m.converged());
    CHECK(m.relative_change() < 0.0);
  }
}

TEST_CASE("monitor verdict depends only on its history") {
  ConvergenceMonitor a(3, 1e-3), b(3, 1e-3);
  for (double v : {5.0, 4.0, 3.5, 3.4, 3.39, 3.389, 3.3889}) {
    a.record(v);
    b.record(v);
  }
  CHECK(a.converged() == b.converged());
  CHECK(a.relative_change() == b.relative_change());
  a.clear();
  CHECK(a.history().empty());
}

TEST_CASE("minimize reaches the monitor's convergence") {
  ParamVector x{3.0, -1.0, 0.5};
  MinimizeOptions opts;
  opts.lr = 1.0;
  opts.patience = 5;
  opts.tol = 1e-8;
  const auto r = minimize(quadratic({1.0, 4.0, 0.3}), x, opts);
  CHECK(r.converged);
  CHECK(r.iterations < opts.max_iters);
  CHECK(std::abs(x[0]) + std::abs(x[1]) + std::abs(x[2]) < 1e-3);
}

TEST_CASE("minimize recovers once from a non-finite loss and then gives up") {
  SUBCASE("single failure halves the learning rate") {
    int calls = 0;
    const Objective f = [&](std::span<const double> x, ParamVector& g) {
      ++calls;
      g.assign(1, x[0]);
      if (calls == 3) return std::numeric_limits<double>::infinity();
      return 0.5 * x[0] * x[0];
    };
    ParamVector x{1.0};
    MinimizeOptions opts;
    opts.max_iters = 50;
    const auto r = minimize(f, x, opts);
    CHECK(r.lr == doctest::Approx(0.25));
    CHECK(std::isfinite(x[0]));
  }
  SUBCASE("persistent failure throws") {
    const Objective f = [](std::span<const double> x, ParamVector& g) {
      g.assign(1, x[0]);
      return x[0] < 0.9 ? std::numeric_limits<double>::quiet_NaN() : 0.5 * x[0] * x[0];
    };
    ParamVector x{1.0};
    CHECK_THROWS_AS(minimize(f, x, {}), DivergenceError);
  }
}
