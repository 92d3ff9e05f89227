// Flat key = value configuration files (human units in key suffixes) and the
// resolved scenario parameter set. Parameters are stored in the file's units
// so a manifest dump re-parses to bit-identical values; SI accessors do the
// single unit conversion.
#pragma once

#include <cstdint>
#include <map>
#include <ostream>
#include <string>

#include "becgate/constants.hpp"
#include "becgate/retrieval.hpp"

namespace becgate {

// One `key = value` per line, '#' starts a comment. Keys are consumed by the
// resolver; anything left over is rejected with its line number.
class KeyValueConfig {
 public:
  static KeyValueConfig parse_file(const std::string& path);
  static KeyValueConfig parse_string(const std::string& text,
                                     const std::string& origin = "<string>");

  bool has(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  // Comma-separated triple.
  Eigen::Vector3d triple(const std::string& key, const Eigen::Vector3d& fallback) const;

  // Throws ConfigError naming the first never-consumed key and its line.
  void reject_unknown_keys() const;

 private:
  struct Entry {
    std::string value;
    int line;
    mutable bool consumed = false;
  };
  std::string origin_;
  std::map<std::string, Entry> entries_;

  const Entry* find(const std::string& key) const;
};

// Every knob of every scenario. Fields carry the config units named in the
// key suffixes; methods return SI.
struct ScenarioParams {
  Eigen::Vector3d radii_um{27e0 / 3.5, 27.0, 27.0};
  double n_total = 1.5e6;
  double n_component_geomean = 2.8e5;
  double n_coupling = 1e6;  // N feeding g_N = g sqrt(N) and photon tallies

  bool rectangular_beams = false;
  double q_sq_ratio = 2.08;
  double qk_ratio = -0.037;

  double theta1_pi = 0.5;
  double theta2_pi = 0.5;
  double t1_us = 23.0;
  double t2_us = 35.0;
  double beta = 1.4142135623730951;
  double t_fwm_ms = 0.4;

  double gamma_over_gn = 3000.0;
  int cutoff = 6;
  IntegratorKind integrator = IntegratorKind::AdiabaticElimination;
  double horizon_timescales = 10.0;

  double ps1_uw = 1.0, ps2_uw = 1.0, pc1_uw = 5.0, pc2_uw = 75.0, pc3_uw = 180.0;
  double ws_mm = 0.17, wc1_mm = 0.32, wc2_mm = 1.8;
  double delta1_mhz = 406.0, delta2_mhz = 406.0, delta3_mhz = 512.0;

  double fig2_tmax_ms = 3.0, fig2_dt_us = 3.0;
  double fig4_tmin_ms = 0.1, fig4_tmax_ms = 0.8, fig4_dt_us = 5.0;
  int chi_points = 32;

  std::string fit_input_csv;  // when set, fit the file instead of synthesizing
  double fit_noise_frac = 0.02;

  static ScenarioParams from_config(const KeyValueConfig& config);

  // SI accessors
  PhysicalConstants constants() const { return PhysicalConstants{}; }
  CloudGeometry cloud() const;
  BeamGeometry beams() const;
  double theta1() const { return theta1_pi * pi; }
  double theta2() const { return theta2_pi * pi; }
  double pulse1_duration() const { return t1_us * 1e-6; }
  double pulse2_duration() const { return t2_us * 1e-6; }
  double t_fwm() const { return t_fwm_ms * 1e-3; }
  double p_s1() const { return ps1_uw * 1e-6; }
  double p_s2() const { return ps2_uw * 1e-6; }
  double p_c1() const { return pc1_uw * 1e-6; }
  double p_c2() const { return pc2_uw * 1e-6; }
  double p_c3() const { return pc3_uw * 1e-6; }
  double w_signal() const { return ws_mm * 1e-3; }
  double w_control1() const { return wc1_mm * 1e-3; }
  double w_control2() const { return wc2_mm * 1e-3; }
  double delta1() const { return delta1_mhz * two_pi * 1e6; }
  double delta2() const { return delta2_mhz * two_pi * 1e6; }
  double delta3() const { return delta3_mhz * two_pi * 1e6; }
  double fig2_t_max() const { return fig2_tmax_ms * 1e-3; }
  double fig2_dt() const { return fig2_dt_us * 1e-6; }
  double fig4_t_min() const { return fig4_tmin_ms * 1e-3; }
  double fig4_t_max() const { return fig4_tmax_ms * 1e-3; }
  double fig4_dt() const { return fig4_dt_us * 1e-6; }

  // Config-syntax dump of every parameter (re-parses to bit-identical values),
  // resolved SI values in trailing comments.
  void dump(std::ostream& out) const;
};

}  // namespace becgate
