#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "becgate/fwm.hpp"
#include "becgate/quadrature.hpp"

using namespace becgate;

namespace {

CloudGeometry paper_cloud() {
  return CloudGeometry::with_equal_components({8e-6, 27e-6, 27e-6}, 1.5e6)
      .with_component_geomean(2.8e5);
}

// reduced two-ellipsoid overlap integral behind the h(x) closed form
double overlap_fraction_oracle(double y0) {
  auto lobe_a = [y0](double y) {
    const double b = 1.0 - (y + y0) * (y + y0);
    return 0.25 * b * b;
  };
  auto lobe_b = [y0](double y) {
    const double bn = 1.0 - (y + y0) * (y + y0);
    const double bp = 1.0 - (y - y0) * (y - y0);
    return 0.5 * bn * bp - 0.25 * bp * bp;
  };
  const double up = integrate_adaptive(lobe_a, 0.0, 1.0 - y0, 1e-13, 1e-13).value;
  const double dn = integrate_adaptive(lobe_b, -(1.0 - y0), 0.0, 1e-13, 1e-13).value;
  return 15.0 / 4.0 * (up + dn);
}

}  // namespace

TEST_CASE("Thomas-Fermi volume") {
  CHECK(tf_volume(paper_cloud()) ==
        doctest::Approx(8.0 * pi / 15.0 * 8e-6 * 27e-6 * 27e-6).epsilon(1e-14));
  // 9.77e3 um^3 for the quoted radii
  CHECK(tf_volume(paper_cloud()) * 1e18 == doctest::Approx(9771.6).epsilon(1e-4));
  const CloudGeometry unit = CloudGeometry::with_equal_components({1, 1, 1}, 1.0);
  CHECK(tf_volume(unit) == doctest::Approx(8.0 * pi / 15.0).epsilon(1e-15));
}

TEST_CASE("Thomas-Fermi amplitude: peak, boundary, support") {
  const ThomasFermiCloud cloud(paper_cloud());
  CHECK(tf_amplitude(cloud, {0, 0, 0}) ==
        doctest::Approx(1.0 / std::sqrt(cloud.volume())).epsilon(1e-14));
  CHECK(tf_amplitude(cloud, {8e-6, 0, 0}) == 0.0);
  CHECK(tf_amplitude(cloud, {9e-6, 0, 0}) == 0.0);
  CHECK(tf_amplitude(cloud, {0, 30e-6, 0}) == 0.0);
}

TEST_CASE("density moments: quadrature against the closed forms") {
  const ThomasFermiCloud cloud(paper_cloud());
  const QuadratureResult norm = tf_density_moment_quadrature(cloud, 1);
  CHECK(norm.converged);
  CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-6));

  const QuadratureResult sextic = tf_density_moment_quadrature(cloud, 3);
  CHECK(sextic.value == doctest::Approx(sextic_overlap(cloud)).epsilon(1e-6));
}

TEST_CASE("density moments hold for random radii") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> size(2e-6, 60e-6);
  for (int i = 0; i < 5; ++i) {
    const CloudGeometry geom = CloudGeometry::with_equal_components(
        {size(rng), size(rng), size(rng)}, 1e6);
    const ThomasFermiCloud cloud(geom);
    CHECK(tf_density_moment_quadrature(cloud, 1).value == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(tf_density_moment_quadrature(cloud, 3).value ==
          doctest::Approx(sextic_overlap(cloud)).epsilon(1e-6));
  }
}

TEST_CASE("sextic overlap scaling") {
  const ThomasFermiCloud base(paper_cloud());
  // doubling the volume quarters 8/(21 V^2)
  const double s = std::cbrt(2.0);
  const CloudGeometry doubled = CloudGeometry::with_equal_components(
      {8e-6 * s, 27e-6 * s, 27e-6 * s}, 1.5e6);
  CHECK(sextic_overlap(ThomasFermiCloud(doubled)) ==
        doctest::Approx(sextic_overlap(base) / 4.0).epsilon(1e-12));
  // V = 1 gives 8/21
  const double r_unit = std::cbrt(15.0 / (8.0 * pi));
  const CloudGeometry unit =
      CloudGeometry::with_equal_components({r_unit, r_unit, r_unit}, 1.0);
  CHECK(sextic_overlap(ThomasFermiCloud(unit)) == doctest::Approx(8.0 / 21.0).epsilon(1e-12));
}

TEST_CASE("growth timescale value and scaling laws") {
  const PhysicalConstants constants;
  const ThomasFermiCloud cloud(paper_cloud());
  const double tau = growth_timescale(constants, cloud);
  CHECK(tau == doctest::Approx(2.1e-6).epsilon(0.10));

  // tau scales as the inverse square root of the component product: doubling
  // the geometric mean multiplies the product by 8
  const ThomasFermiCloud denser(paper_cloud().with_component_geomean(2.8e5 * 2.0));
  CHECK(growth_timescale(constants, denser) ==
        doctest::Approx(tau / std::sqrt(8.0)).epsilon(1e-12));
  // quadrupling the product halves tau
  const ThomasFermiCloud quad(
      paper_cloud().with_component_geomean(2.8e5 * std::cbrt(4.0)));
  CHECK(growth_timescale(constants, quad) == doctest::Approx(tau / 2.0).epsilon(1e-12));

  // a12 doubled halves tau
  PhysicalConstants strong = constants;
  strong.a12_interspecies *= 2.0;
  CHECK(growth_timescale(strong, cloud) == doctest::Approx(tau / 2.0).epsilon(1e-12));

  // tau proportional to the volume
  const double s = std::cbrt(2.0);
  const ThomasFermiCloud larger(
      CloudGeometry::with_equal_components({8e-6 * s, 27e-6 * s, 27e-6 * s}, 1.5e6)
          .with_component_geomean(2.8e5));
  CHECK(growth_timescale(constants, larger) == doctest::Approx(2.0 * tau).epsilon(1e-12));
}

TEST_CASE("zero component population is rejected") {
  const PhysicalConstants constants;
  const CloudGeometry empty({8e-6, 27e-6, 27e-6}, 1.5e6, {2.8e5, 0.0, 2.8e5});
  CHECK_THROWS_AS(growth_timescale(constants, ThomasFermiCloud(empty)), ZeroPopulationError);
}

TEST_CASE("saturation timescales") {
  const PhysicalConstants constants;
  const SaturationTimes ts = saturation_times(constants, paper_cloud());
  CHECK(ts.t0 == doctest::Approx(2.3e-3).epsilon(0.05));
  CHECK(ts.t1 == doctest::Approx(2.0 * ts.t0 / std::sqrt(1.0 + 3.375 * 3.375)).epsilon(1e-14));

  // eps -> 0 gives t1 -> 2 t0
  const CloudGeometry flat =
      CloudGeometry::with_equal_components({1.0, 1e-6, 1.0}, 1.0);
  const SaturationTimes ts_flat = saturation_times(constants, flat);
  CHECK(ts_flat.t1 == doctest::Approx(2.0 * ts_flat.t0).epsilon(1e-10));

  // best-fit t0 = 1.3 ms with eps = 3.5 puts the plateau onset near 0.71 ms
  const double t1 = 2.0 * 1.3e-3 / std::sqrt(1.0 + 3.5 * 3.5);
  CHECK(t1 == doctest::Approx(0.7143e-3).epsilon(1e-3));
}

TEST_CASE("saturation profile f") {
  CHECK(f_profile(0.0, 3.5) == 0.0);
  CHECK_THROWS_AS(f_profile(-0.1, 3.5), DomainError);
  CHECK_THROWS_AS(f_profile(1.1, 3.5), DomainError);

  // f(x) = x + O(x^3)
  for (double x : {1e-4, 1e-3}) {
    CHECK(f_profile(x, 3.5) / x == doctest::Approx(1.0).epsilon(1e-5));
  }

  // frozen value, cross-checked against the defining integral
  CHECK(f_profile(0.5, 3.5) == doctest::Approx(0.351150281662712).epsilon(1e-12));
  for (double eps : {0.5, 1.0, 3.5}) {
    const double a = (1.0 + eps * eps) / 4.0;
    for (double x : {0.1, 0.3, 0.5, 0.7, 0.95}) {
      const double x_hi = std::min(1.0, 2.0 / std::sqrt(1.0 + eps * eps));
      if (x > x_hi) continue;
      const QuadratureResult q = integrate_adaptive(
          [a](double s) { return (1.0 - a * s * s) * std::sqrt(1.0 - s * s); }, 0.0, x,
          1e-13, 1e-13);
      CHECK(f_profile(x, eps) == doctest::Approx(q.value).epsilon(1e-9));
    }
  }
}

TEST_CASE("validity flag for large aspect ratios") {
  CHECK_FALSE(epsilon_outside_validity(3.5));
  CHECK(epsilon_outside_validity(4.0));
}

TEST_CASE("population curve: monotone, continuous, clamped") {
  for (double eps : {0.5, 3.5}) {
    const GrowthModel model(2.5e-6, 1.3e-3, eps, 7.0);
    double previous = fwm_population(0.0, model);
    CHECK(previous == doctest::Approx(7.0));  // f(0) = 0 leaves the offset
    for (int i = 1; i <= 400; ++i) {
      const double t = 4e-3 * i / 400;
      const double value = fwm_population(t, model);
      CHECK(value >= previous - 1e-9 * std::fabs(previous));
      previous = value;
    }
    // exactly constant past the clamp
    const double t_clamp = std::min(model.t0(), model.t1());
    const double plateau = fwm_population(t_clamp, model);
    CHECK(fwm_population(t_clamp * 1.5, model) == plateau);
    CHECK(fwm_population(1.0, model) == plateau);
    // continuity across the clamp
    CHECK(fwm_population(t_clamp - 1e-9, model) ==
          doctest::Approx(plateau).epsilon(1e-6));
  }
}

TEST_CASE("short-time window: N_q(tau) is about one atom") {
  const GrowthModel model(1e-7, 2.3e-3, 3.5, 0.0);
  CHECK(fwm_population(model.tau(), model) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("overlap fraction h") {
  CHECK(overlap_fraction(0.0) == 1.0);
  CHECK(overlap_fraction(1.0) == 0.0);
  CHECK(overlap_fraction(-1.0) == 0.0);
  CHECK(overlap_fraction(2.3) == 0.0);
  CHECK(overlap_fraction(0.5) == 0.34375);

  // even, flat at zero, strictly decreasing on (0,1)
  for (double x : {0.1, 0.37, 0.82}) {
    CHECK(overlap_fraction(x) == overlap_fraction(-x));
  }
  CHECK((overlap_fraction(1e-6) - 1.0) / 1e-6 == doctest::Approx(0.0).epsilon(1e-4));
  double prev = 1.0;
  for (int i = 1; i <= 100; ++i) {
    const double h = overlap_fraction(i / 100.0);
    CHECK(h < prev);
    prev = h;
  }

  // closed form against the overlap integral of two displaced parabolae
  for (double x : {0.25, 0.5, 0.75}) {
    CHECK(overlap_fraction(x) == doctest::Approx(overlap_fraction_oracle(x)).epsilon(1e-10));
  }
}

TEST_CASE("beta parameter: zero at zero, linear, and the sqrt(2) operating point") {
  const PhysicalConstants constants;
  const ThomasFermiCloud cloud(paper_cloud());
  CHECK(beta_parameter(0.0, constants, cloud) == 0.0);
  const double b1 = beta_parameter(1e-4, constants, cloud);
  CHECK(beta_parameter(2e-4, constants, cloud) == doctest::Approx(2.0 * b1).epsilon(1e-14));
  CHECK_THROWS_AS(beta_parameter(-1e-6, constants, cloud), DomainError);

  // invert for beta = sqrt(2): the FWM time that gives |c_1(0)|^2 = 1/32
  const double slope = b1 / 1e-4;
  const double t_star = std::sqrt(2.0) / slope;
  CHECK(beta_parameter(t_star, constants, cloud) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(t_star < 1e-3);  // well before the overlap is lost
}

TEST_CASE("unreachable quadrature tolerance reports the achieved error") {
  const ThomasFermiCloud cloud(paper_cloud());
  try {
    tf_density_moment_quadrature(cloud, 1, 1e-30);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.achieved_error > 0.0);
    CHECK(e.achieved_error < 1e-3);
  }
}
