#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "becgate/config.hpp"

using namespace becgate;

TEST_CASE("basic parsing with comments and whitespace") {
  const KeyValueConfig cfg = KeyValueConfig::parse_string(
      "# a comment\n"
      "  pulses.theta1_pi = 0.49   # trailing comment\n"
      "\n"
      "fwm.beta=1.0\n");
  const ScenarioParams p = ScenarioParams::from_config(cfg);
  CHECK(p.theta1_pi == 0.49);
  CHECK(p.theta1() == doctest::Approx(0.49 * pi).epsilon(1e-15));
  CHECK(p.beta == 1.0);
  CHECK(p.theta2_pi == 0.5);  // untouched default
}

TEST_CASE("unknown keys are rejected with their line number") {
  const KeyValueConfig cfg = KeyValueConfig::parse_string(
      "fwm.beta = 1.0\n"
      "\n"
      "fwm.betta = 2.0\n");
  try {
    ScenarioParams::from_config(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":3:") != std::string::npos);
    CHECK(msg.find("fwm.betta") != std::string::npos);
  }
}

TEST_CASE("malformed lines and duplicates") {
  CHECK_THROWS_AS(KeyValueConfig::parse_string("this is not a key value line\n"),
                  ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("a.b = 1\na.b = 2\n"), ConfigError);
  CHECK_THROWS_AS(KeyValueConfig::parse_string("a.b =\n"), ConfigError);
  const KeyValueConfig bad_number = KeyValueConfig::parse_string("fwm.beta = fast\n");
  CHECK_THROWS_AS(ScenarioParams::from_config(bad_number), ConfigError);
}

TEST_CASE("unit suffixes convert to SI") {
  const KeyValueConfig cfg = KeyValueConfig::parse_string(
      "cloud.radii_um = 8,27,27\n"
      "laser.pc3_uw = 180\n"
      "laser.wc1_mm = 0.32\n"
      "laser.delta3_mhz = 512\n"
      "fwm.t_fwm_ms = 0.4\n"
      "pulses.t1_us = 23\n");
  const ScenarioParams p = ScenarioParams::from_config(cfg);
  CHECK(p.cloud().radii().x() == doctest::Approx(8e-6).epsilon(1e-15));
  CHECK(p.cloud().radii().y() == doctest::Approx(27e-6).epsilon(1e-15));
  CHECK(p.p_c3() == doctest::Approx(180e-6).epsilon(1e-15));
  CHECK(p.w_control1() == doctest::Approx(0.32e-3).epsilon(1e-15));
  CHECK(p.delta3() == doctest::Approx(two_pi * 512e6).epsilon(1e-15));
  CHECK(p.t_fwm() == doctest::Approx(0.4e-3).epsilon(1e-15));
  CHECK(p.pulse1_duration() == doctest::Approx(23e-6).epsilon(1e-15));
}

TEST_CASE("beam mode handling") {
  const ScenarioParams measured = ScenarioParams::from_config(
      KeyValueConfig::parse_string("beams.q_sq_ratio = 2.2\nbeams.qk_ratio = 0.01\n"));
  CHECK(measured.beams().q_sq_over_ks_sq() == 2.2);
  CHECK(measured.beams().q_dot_k_over_ks_sq() == 0.01);

  const ScenarioParams rect =
      ScenarioParams::from_config(KeyValueConfig::parse_string("beams.mode = rectangular\n"));
  CHECK(rect.beams().q_sq_over_ks_sq() == 2.0);
  CHECK(rect.beams().q_dot_k_over_ks_sq() == 0.0);

  CHECK_THROWS_AS(ScenarioParams::from_config(
                      KeyValueConfig::parse_string("beams.mode = diagonal\n")),
                  ConfigError);
}

TEST_CASE("range validation") {
  CHECK_THROWS_AS(ScenarioParams::from_config(
                      KeyValueConfig::parse_string("retrieval.cutoff = 1\n")),
                  ConfigError);
  CHECK_THROWS_AS(ScenarioParams::from_config(
                      KeyValueConfig::parse_string("scan.chi_points = 8\n")),
                  ConfigError);
  CHECK_THROWS_AS(ScenarioParams::from_config(
                      KeyValueConfig::parse_string("retrieval.integrator = verlet\n")),
                  ConfigError);
  CHECK_THROWS_AS(ScenarioParams::from_config(
                      KeyValueConfig::parse_string("cloud.radii_um = 8,27\n")),
                  ConfigError);
}

TEST_CASE("dump round-trips to bit-identical parameters") {
  const KeyValueConfig cfg = KeyValueConfig::parse_string(
      "pulses.theta1_pi = 0.3517\n"
      "fwm.beta = 0.4242640687119285\n"
      "laser.delta1_mhz = 405.77\n"
      "retrieval.integrator = stiff\n"
      "cloud.radii_um = 7.9,26.7,27.3\n");
  const ScenarioParams p = ScenarioParams::from_config(cfg);

  std::ostringstream first;
  p.dump(first);
  const ScenarioParams reparsed = ScenarioParams::from_config(
      KeyValueConfig::parse_string(first.str(), "<dump>"));
  std::ostringstream second;
  reparsed.dump(second);
  CHECK(first.str() == second.str());
  CHECK(p.theta1() == reparsed.theta1());
  CHECK(p.beta == reparsed.beta);
  CHECK(p.integrator == reparsed.integrator);
  CHECK(p.cloud().radii() == reparsed.cloud().radii());
}
