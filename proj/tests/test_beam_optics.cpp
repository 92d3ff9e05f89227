#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "becgate/beam_optics.hpp"

using namespace becgate;

TEST_CASE("intensity and field amplitude") {
  const PhysicalConstants c;
  const LaserPulseSpec retrieval{180e-6, 0.32e-3, two_pi * 512e6, 0.0};
  const FieldIntensity fi = intensity(retrieval, c);
  CHECK(fi.intensity == doctest::Approx(1119.058).epsilon(1e-5));  // ~112 mW/cm^2
  CHECK(fi.field_amplitude ==
        doctest::Approx(std::sqrt(2.0 * fi.intensity /
                                  (c.vacuum_light_speed * c.vacuum_permittivity)))
            .epsilon(1e-14));

  CHECK(intensity({0.0, 1e-3, 0.0, 0.0}, c).intensity == 0.0);
  const double base = intensity({5e-6, 1e-3, 0.0, 0.0}, c).intensity;
  CHECK(intensity({5e-6, 2e-3, 0.0, 0.0}, c).intensity ==
        doctest::Approx(base / 4.0).epsilon(1e-14));
  CHECK_THROWS_AS(intensity({1e-6, 0.0, 0.0, 0.0}, c), DomainError);
  CHECK_THROWS_AS(intensity({-1e-6, 1e-3, 0.0, 0.0}, c), DomainError);
}

TEST_CASE("cycling Rabi frequency") {
  const PhysicalConstants c;
  CHECK(cycling_rabi(2.0 * c.i_sat, c) == doctest::Approx(c.gamma_excited).epsilon(1e-14));
  CHECK(cycling_rabi(0.0, c) == 0.0);
  CHECK_THROWS_AS(cycling_rabi(-1.0, c), DomainError);
  // ~2pi x 36 MHz at the retrieval intensity
  CHECK(cycling_rabi(1119.058, c) / two_pi / 1e6 == doctest::Approx(36.2).epsilon(2e-3));
}

TEST_CASE("two-photon Rabi frequency") {
  const PhysicalConstants c;
  const double om = 1e8;

  // far detuned: both terms vanish
  CHECK(std::fabs(effective_rabi(om, om, 1e7 * c.delta_hfs, c)) <
        std::fabs(effective_rabi(om, om, 10.0 * c.delta_hfs, c)) / 1e5);

  // midway between the excited states the contributions add to 4/Delta_hfs
  const double mid = effective_rabi(om, om, c.delta_hfs / 2.0, c);
  CHECK(mid == doctest::Approx(om * om / 2.0 * (std::sqrt(3.0) / 12.0) * 4.0 / c.delta_hfs)
                   .epsilon(1e-14));

  CHECK_THROWS_AS(effective_rabi(om, om, 0.0, c), PoleError);
  CHECK_THROWS_AS(effective_rabi(om, om, c.delta_hfs, c), PoleError);

  // bracket is symmetric under Delta -> Delta_hfs - Delta
  for (double frac : {0.1, 0.3, 0.7, 0.9, 1.3, -0.5}) {
    const double d = frac * c.delta_hfs;
    CHECK(effective_rabi(om, om, d, c) ==
          doctest::Approx(effective_rabi(om, om, c.delta_hfs - d, c)).epsilon(1e-12));
  }
}

TEST_CASE("pulse areas of the two preparation pulses") {
  const PhysicalConstants c;
  const LaserPulseSpec s1{1e-6, 0.17e-3, two_pi * 406e6, 23e-6};
  const LaserPulseSpec c1{5e-6, 0.32e-3, two_pi * 406e6, 23e-6};
  const CouplingResult k1 = pulse_coupling(s1, c1, c);
  CHECK(k1.pulse_area / pi == doctest::Approx(0.49).epsilon(0.05));
  CHECK(k1.pulse_area / pi == doctest::Approx(0.501096).epsilon(1e-4));  // frozen

  const LaserPulseSpec s2{1e-6, 0.17e-3, two_pi * 406e6, 35e-6};
  const LaserPulseSpec c2{75e-6, 1.8e-3, two_pi * 406e6, 35e-6};
  const CouplingResult k2 = pulse_coupling(s2, c2, c);
  CHECK(k2.pulse_area / pi == doctest::Approx(0.51).epsilon(0.05));
  CHECK(k2.pulse_area / pi == doctest::Approx(0.525030).epsilon(1e-4));  // frozen

  // area scales linearly in duration and in sqrt(P_s P_c)
  LaserPulseSpec s1_long = s1, c1_long = c1;
  s1_long.duration *= 2.0;
  c1_long.duration *= 2.0;
  CHECK(pulse_coupling(s1_long, c1_long, c).pulse_area ==
        doctest::Approx(2.0 * k1.pulse_area).epsilon(1e-14));
  LaserPulseSpec s1_bright = s1;
  s1_bright.power *= 4.0;
  CHECK(pulse_coupling(s1_bright, c1, c).pulse_area ==
        doctest::Approx(2.0 * k1.pulse_area).epsilon(1e-14));
}

TEST_CASE("retrieval coupling chain") {
  const PhysicalConstants c;
  const CloudGeometry cloud =
      CloudGeometry::with_equal_components({27e-6 / 3.5, 27e-6, 27e-6}, 1.5e6);
  const ThomasFermiCloud tf(cloud);
  const LaserPulseSpec c3{180e-6, 0.32e-3, two_pi * 512e6, 0.0};

  const CouplingResult k = retrieval_coupling(c3, c, tf, 1e6);
  CHECK(k.g / two_pi / 1e6 == doctest::Approx(0.6).epsilon(0.15));
  CHECK(k.g_n == doctest::Approx(1e3 * k.g).epsilon(1e-14));
  CHECK(retrieval_coupling(c3, c, tf, 0.0).g_n == 0.0);

  const DampingRates damping = damping_rates(c, cloud);
  CHECK(damping.gamma_d == doctest::Approx(c.vacuum_light_speed / 27e-6).epsilon(1e-14));
  CHECK(damping.gamma_d == doctest::Approx(1.1e13).epsilon(0.01));
  CHECK(damping.gamma_r / damping.gamma_d == doctest::Approx(3.5).epsilon(1e-14));
  CHECK(damping.gamma_d / k.g_n == doctest::Approx(3e3).epsilon(0.20));
}

TEST_CASE("interference frequency from the beam geometry") {
  const PhysicalConstants c;
  const BeamGeometry measured = BeamGeometry::measured(c);
  const double omega = oscillation_frequency(c, measured);
  CHECK(omega / two_pi / 1e3 == doctest::Approx(15.4).epsilon(0.007));
  CHECK(omega / two_pi == doctest::Approx(15379.8).epsilon(1e-4));  // frozen

  const double four_omega_r = 4.0 * recoil_quantities(c).omega_r;
  CHECK(oscillation_frequency(c, BeamGeometry::rectangular(c)) ==
        doctest::Approx(four_omega_r).epsilon(1e-14));

  // degenerate geometry q = k with q.k = q^2 has no energy mismatch
  const BeamGeometry degenerate(c.signal_wavenumber(), 1.0, 1.0, BeamGeometry::Mode::Measured);
  CHECK(oscillation_frequency(c, degenerate) == 0.0);
}

TEST_CASE("ladder frequencies") {
  const double omega_r = 2.3e4;
  const LadderFrequencies zero = ladder_frequencies(0, omega_r);
  CHECK(zero.omega_b == 2.0 * omega_r);
  CHECK(zero.omega_c == 0.0);
  CHECK(zero.delta_d == 0.0);
  CHECK(zero.delta_r == 2.0 * omega_r);

  const LadderFrequencies one = ladder_frequencies(1, omega_r, 0.0, 0.0);
  CHECK(one.omega_b == 4.0 * omega_r);
  CHECK(one.omega_c == 2.0 * omega_r);
  CHECK(one.delta_d == -4.0 * omega_r);

  const LadderFrequencies with_detuning = ladder_frequencies(0, omega_r, 5.0, -3.0);
  CHECK(with_detuning.delta_d == 5.0);
  CHECK(with_detuning.delta_r == -3.0 + 2.0 * omega_r);

  const LadderFrequencies negative = ladder_frequencies(-2, omega_r);
  CHECK(negative.omega_b == 2.0 * 5.0 * omega_r);
  CHECK(negative.omega_c == 2.0 * 4.0 * omega_r);
  CHECK(negative.delta_d == 8.0 * omega_r);
}
