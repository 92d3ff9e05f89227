// Physical constants, cloud and beam geometry. Strict SI throughout.
#pragma once

#include <Eigen/Core>

#include "becgate/errors.hpp"

namespace becgate {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// Fundamental and Rb-87 constants. Values are pinned literals:
//   hbar, bohr_radius, vacuum_permittivity  — CODATA 2018
//   atom_mass_rb87                          — 86.909180531 u (AME2016)
//   a12, lambda, Gamma, d_cyc, I_sat, HFS   — D1/D2-line and scattering data
struct PhysicalConstants {
  double hbar = 1.054571817e-34;             // J s
  double atom_mass_rb87 = 1.44316092e-25;    // kg
  double bohr_radius = 5.29177210903e-11;    // m
  double vacuum_light_speed = 299792458.0;   // m/s
  double vacuum_permittivity = 8.8541878128e-12;  // F/m
  double a12_interspecies = 98.4 * 5.29177210903e-11;  // m, |1>-|2> scattering length
  double lambda_signal = 794.979e-9;         // m, D1 signal wavelength
  double gamma_excited = 1.0 / 26e-9;        // 1/s, excited-state decay rate
  double d_cyc = 2.5e-29;                    // C m, cycling-transition dipole moment
  double i_sat = 16.0;                       // W/m^2 (= 1.6 mW/cm^2)
  double delta_hfs = two_pi * 812e6;         // rad/s, excited-state hyperfine splitting

  // Throws DomainError unless every field is strictly positive and finite.
  void validate() const;

  double signal_wavenumber() const { return two_pi / lambda_signal; }  // 1/m
  // Mean-field |1>-|2> interaction strength 4*pi*hbar^2*a12/m, J m^3.
  double g12() const {
    return 4.0 * pi * hbar * hbar * a12_interspecies / atom_mass_rb87;
  }
};

struct RecoilQuantities {
  double e_rec;    // J
  double omega_r;  // rad/s
};

// E_rec = hbar^2 k_s^2 / 2m and omega_r = E_rec / hbar for the signal light.
RecoilQuantities recoil_quantities(const PhysicalConstants& constants);

// Thomas-Fermi radii, atom numbers and the y/x aspect ratio of the trapped cloud.
class CloudGeometry {
 public:
  CloudGeometry(const Eigen::Vector3d& radii_m, double atom_number_total,
                const Eigen::Vector3d& component_numbers);

  // Equal thirds of the total in the three prepared momentum components.
  static CloudGeometry with_equal_components(const Eigen::Vector3d& radii_m,
                                             double atom_number_total);

  const Eigen::Vector3d& radii() const { return radii_; }
  double atom_number_total() const { return n_total_; }
  const Eigen::Vector3d& component_numbers() const { return components_; }
  double aspect_ratio() const { return radii_.y() / radii_.x(); }
  double component_geometric_mean() const {
    return std::cbrt(components_.x() * components_.y() * components_.z());
  }

  // Same radii and total, component numbers rescaled to the given geometric mean.
  CloudGeometry with_component_geomean(double geomean) const;

 private:
  Eigen::Vector3d radii_;
  double n_total_;
  Eigen::Vector3d components_;
};

// Signal/control wave-vector geometry. The measured values are the
// dimensionless ratios q^2/k_s^2 and q.k/k_s^2; rectangular mode pins them
// to the ideal axis-aligned beam layout (q^2 = 2 k_s^2, q.k = 0).
class BeamGeometry {
 public:
  enum class Mode { Measured, Rectangular };

  BeamGeometry(double ks_magnitude, double q_sq_over_ks_sq,
               double q_dot_k_over_ks_sq, Mode mode);

  static BeamGeometry measured(const PhysicalConstants& constants,
                               double q_sq_over_ks_sq = 2.08,
                               double q_dot_k_over_ks_sq = -0.037);
  static BeamGeometry rectangular(const PhysicalConstants& constants);

  double ks_magnitude() const { return ks_; }
  double q_sq_over_ks_sq() const { return q_sq_ratio_; }
  double q_dot_k_over_ks_sq() const { return qk_ratio_; }
  Mode mode() const { return mode_; }

 private:
  double ks_;
  double q_sq_ratio_;
  double qk_ratio_;
  Mode mode_;
};

struct ExperimentConfig {
  PhysicalConstants constants;
  CloudGeometry cloud;
  BeamGeometry beams;
};

// The reference parameter set: R_y = R_z = 27 um, R_x = R_y/3.5 (aspect ratio
// from the 70/20 Hz trap frequencies), N = 1.5e6 total, component numbers with
// geometric mean 2.8e5, measured beam geometry.
ExperimentConfig default_experiment_config();

}  // namespace becgate
