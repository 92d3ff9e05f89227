#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "becgate/constants.hpp"
#include "becgate/ode.hpp"

using namespace becgate;

TEST_CASE("dopri5 on exponential decay") {
  Eigen::VectorXd y(1);
  y << 1.0;
  double h = 0.0;
  auto rhs = [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) { dv = -v; };
  integrate_dopri5(rhs, y, 0.0, 2.0, h);
  CHECK(y[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
}

TEST_CASE("dopri5 on the harmonic oscillator keeps energy") {
  Eigen::VectorXd y(2);
  y << 1.0, 0.0;
  double h = 0.0;
  auto rhs = [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
    dv.resize(2);
    dv[0] = v[1];
    dv[1] = -v[0];
  };
  integrate_dopri5(rhs, y, 0.0, 20.0 * pi, h);
  const double energy = y[0] * y[0] + y[1] * y[1];
  CHECK(energy == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(y[0] == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("dopri5 segment restarts do not lose the adaptive step") {
  auto rhs = [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) { dv = -v; };
  Eigen::VectorXd y(1);
  y << 1.0;
  double h = 0.0;
  long steps = 0;
  for (int seg = 0; seg < 10; ++seg) {
    steps += integrate_dopri5(rhs, y, seg * 0.2, (seg + 1) * 0.2, h);
  }
  CHECK(y[0] == doctest::Approx(std::exp(-2.0)).epsilon(1e-10));
  CHECK(steps < 400);
}

TEST_CASE("dopri5 throws on an exhausted step budget") {
  auto rhs = [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) { dv = -v; };
  Eigen::VectorXd y(1);
  y << 1.0;
  double h = 0.0;
  OdeOptions opt;
  opt.max_steps = 3;
  CHECK_THROWS_AS(integrate_dopri5(rhs, y, 0.0, 100.0, h, opt), IntegratorFailure);
}

// y0 is time, y1 follows a forced stiff relaxation toward cos(t). The step
// count must not scale with |lambda|: an explicit scheme would need more than
// |lambda| t / 3 ~ 3e6 steps here just for stability.
TEST_CASE("rosenbrock on a stiff forced relaxation") {
  const double lambda = -1e6;
  auto rhs = [lambda](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
    dv.resize(2);
    dv[0] = 1.0;
    dv[1] = lambda * (v[1] - std::cos(v[0])) - std::sin(v[0]);
  };
  Eigen::VectorXd y(2);
  y << 0.0, 1.0;
  double h = 0.0;
  OdeOptions opt;
  opt.rel_tol = 1e-6;
  opt.abs_tol = 1e-9;

  SUBCASE("numeric jacobian") {
    const long steps = integrate_rosenbrock(rhs, y, 0.0, 10.0, h, opt);
    CHECK(y[1] == doctest::Approx(std::cos(10.0)).epsilon(1e-5));
    CHECK(steps < 20000);
  }

  SUBCASE("analytic jacobian") {
    auto jac = [lambda](double, const Eigen::VectorXd& v, Eigen::MatrixXd& J) {
      J.setZero(2, 2);
      J(1, 0) = lambda * std::sin(v[0]) - std::cos(v[0]);
      J(1, 1) = lambda;
    };
    const long steps = integrate_rosenbrock(rhs, jac, y, 0.0, 10.0, h, opt);
    CHECK(y[1] == doctest::Approx(std::cos(10.0)).epsilon(1e-5));
    CHECK(steps < 20000);
  }
}

TEST_CASE("rosenbrock handles a fast linear transient exactly where it matters") {
  // pure decay toward zero from 1 with lambda = -1e5: the transient is over by
  // t = 1e-3; integration to t = 1 must remain cheap and accurate
  const double lambda = -1e5;
  auto rhs = [lambda](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
    dv = lambda * v;
  };
  Eigen::VectorXd y(1);
  y << 1.0;
  double h = 0.0;
  OdeOptions opt;
  opt.rel_tol = 1e-8;
  opt.abs_tol = 1e-14;
  const long steps = integrate_rosenbrock(rhs, y, 0.0, 1.0, h, opt);
  CHECK(std::fabs(y[0]) < 1e-12);  // fully decayed
  CHECK(steps < 3000);
}

TEST_CASE("rosenbrock matches dopri5 on a nonstiff nonlinear problem") {
  auto rhs = [](double, const Eigen::VectorXd& v, Eigen::VectorXd& dv) {
    dv.resize(1);
    dv[0] = v[0] * (1.0 - v[0]);  // logistic
  };
  Eigen::VectorXd ya(1), yb(1);
  ya << 0.1;
  yb << 0.1;
  double ha = 0.0, hb = 0.0;
  integrate_dopri5(rhs, ya, 0.0, 5.0, ha);
  integrate_rosenbrock(rhs, yb, 0.0, 5.0, hb);
  const double exact = 1.0 / (1.0 + 9.0 * std::exp(-5.0));
  CHECK(ya[0] == doctest::Approx(exact).epsilon(1e-9));
  CHECK(yb[0] == doctest::Approx(exact).epsilon(1e-8));
}
