#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "becgate/constants.hpp"

using namespace becgate;

TEST_CASE("default constants are valid and a12 pins to 98.4 Bohr radii") {
  PhysicalConstants c;
  CHECK_NOTHROW(c.validate());
  CHECK(c.a12_interspecies == 98.4 * c.bohr_radius);
}

TEST_CASE("constants validation rejects nonpositive and nonfinite fields") {
  PhysicalConstants c;
  c.hbar = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = PhysicalConstants{};
  c.i_sat = -1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c = PhysicalConstants{};
  c.lambda_signal = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(c.validate(), DomainError);
}

TEST_CASE("recoil frequency of the signal light") {
  PhysicalConstants c;
  const RecoilQuantities r = recoil_quantities(c);
  // hbar k^2 / 2m with lambda 794.979 nm
  CHECK(r.omega_r / two_pi == doctest::Approx(3632.45).epsilon(1e-4));
  CHECK(r.e_rec == doctest::Approx(r.omega_r * c.hbar).epsilon(1e-14));
}

TEST_CASE("recoil scaling in wavelength and mass") {
  PhysicalConstants c;
  const double base = recoil_quantities(c).omega_r;

  PhysicalConstants doubled_lambda = c;
  doubled_lambda.lambda_signal *= 2.0;
  CHECK(recoil_quantities(doubled_lambda).omega_r ==
        doctest::Approx(base / 4.0).epsilon(1e-12));

  PhysicalConstants doubled_mass = c;
  doubled_mass.atom_mass_rb87 *= 2.0;
  CHECK(recoil_quantities(doubled_mass).omega_r ==
        doctest::Approx(base / 2.0).epsilon(1e-12));
}

TEST_CASE("cloud geometry invariants") {
  const CloudGeometry cloud({8e-6, 27e-6, 27e-6}, 1.5e6, {2.8e5, 2.8e5, 2.8e5});
  CHECK(cloud.aspect_ratio() == 27e-6 / 8e-6);
  CHECK(cloud.component_geometric_mean() == doctest::Approx(2.8e5).epsilon(1e-12));

  CHECK_THROWS_AS(CloudGeometry({0.0, 27e-6, 27e-6}, 1e6, {1, 1, 1}), DomainError);
  CHECK_THROWS_AS(CloudGeometry({8e-6, 27e-6, 27e-6}, 1e6, {-1, 1, 1}), DomainError);
  CHECK_THROWS_AS(CloudGeometry({8e-6, 27e-6, 27e-6}, -1e6, {1, 1, 1}), DomainError);
}

TEST_CASE("equal components and geometric-mean override") {
  const CloudGeometry thirds =
      CloudGeometry::with_equal_components({8e-6, 27e-6, 27e-6}, 1.5e6);
  CHECK(thirds.component_numbers().x() == doctest::Approx(5e5));
  CHECK(thirds.component_geometric_mean() == doctest::Approx(5e5).epsilon(1e-12));

  const CloudGeometry overridden = thirds.with_component_geomean(2.8e5);
  CHECK(overridden.component_geometric_mean() == doctest::Approx(2.8e5).epsilon(1e-12));
  CHECK(overridden.atom_number_total() == 1.5e6);
  CHECK(overridden.radii() == thirds.radii());
}

TEST_CASE("default experiment parameter set") {
  const ExperimentConfig cfg = default_experiment_config();
  CHECK(cfg.cloud.radii().y() == doctest::Approx(27e-6).epsilon(1e-14));
  CHECK(cfg.cloud.aspect_ratio() == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(cfg.cloud.atom_number_total() == 1.5e6);
  CHECK(cfg.cloud.component_geometric_mean() == doctest::Approx(2.8e5).epsilon(1e-12));
  CHECK(cfg.beams.q_sq_over_ks_sq() == 2.08);
  CHECK(cfg.beams.q_dot_k_over_ks_sq() == -0.037);
  CHECK(cfg.beams.ks_magnitude() == doctest::Approx(two_pi / 794.979e-9).epsilon(1e-14));
}

TEST_CASE("defaults are deterministic") {
  const ExperimentConfig a = default_experiment_config();
  const ExperimentConfig b = default_experiment_config();
  CHECK(a.cloud.radii() == b.cloud.radii());
  CHECK(a.cloud.component_numbers() == b.cloud.component_numbers());
  CHECK(recoil_quantities(a.constants).omega_r == recoil_quantities(b.constants).omega_r);
}

TEST_CASE("rectangular beam mode pins the geometry ratios") {
  PhysicalConstants c;
  const BeamGeometry rect = BeamGeometry::rectangular(c);
  CHECK(rect.q_sq_over_ks_sq() == 2.0);
  CHECK(rect.q_dot_k_over_ks_sq() == 0.0);
  // mode wins over whatever the caller passes
  const BeamGeometry forced(c.signal_wavenumber(), 2.5, 0.3, BeamGeometry::Mode::Rectangular);
  CHECK(forced.q_sq_over_ks_sq() == 2.0);
  CHECK(forced.q_dot_k_over_ks_sq() == 0.0);
}
