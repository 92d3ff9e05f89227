#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "becgate/constants.hpp"
#include "becgate/quadrature.hpp"

using namespace becgate;

TEST_CASE("polynomials and smooth integrands") {
  auto sq = [](double x) { return x * x; };
  const QuadratureResult r1 = integrate_adaptive(sq, 0.0, 1.0);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const QuadratureResult r2 =
      integrate_adaptive([](double x) { return std::sin(x); }, 0.0, pi);
  CHECK(r2.converged);
  CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-13));

  const QuadratureResult r3 =
      integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0);
  CHECK(r3.converged);
  CHECK(r3.value == doctest::Approx(std::sqrt(pi)).epsilon(1e-12));
}

TEST_CASE("empty interval") {
  const QuadratureResult r = integrate_adaptive([](double x) { return x; }, 2.0, 2.0);
  CHECK(r.converged);
  CHECK(r.value == 0.0);
}

TEST_CASE("integrable endpoint singularity") {
  const QuadratureResult r = integrate_adaptive(
      [](double x) { return 1.0 / std::sqrt(x); }, 1e-300, 1.0, 1e-9, 1e-10, 20000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("error estimate reported when the interval budget runs out") {
  const QuadratureResult r = integrate_adaptive(
      [](double x) { return 1.0 / std::sqrt(std::fabs(x - 0.3) + 1e-14); }, 0.0, 1.0,
      1e-16, 1e-16, 4);
  CHECK_FALSE(r.converged);
  CHECK(r.error_estimate > 0.0);
}

TEST_CASE("oscillatory integrand needs subdivision and still converges") {
  const QuadratureResult r =
      integrate_adaptive([](double x) { return std::cos(50.0 * x); }, 0.0, 1.0);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-11));
}
