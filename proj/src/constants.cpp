#include "becgate/constants.hpp"

#include <cmath>

namespace becgate {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw DomainError(std::string(name) + " must be strictly positive and finite");
  }
}

}  // namespace

void PhysicalConstants::validate() const {
  require_positive(hbar, "hbar");
  require_positive(atom_mass_rb87, "atom_mass_rb87");
  require_positive(bohr_radius, "bohr_radius");
  require_positive(vacuum_light_speed, "vacuum_light_speed");
  require_positive(vacuum_permittivity, "vacuum_permittivity");
  require_positive(a12_interspecies, "a12_interspecies");
  require_positive(lambda_signal, "lambda_signal");
  require_positive(gamma_excited, "gamma_excited");
  require_positive(d_cyc, "d_cyc");
  require_positive(i_sat, "i_sat");
  require_positive(delta_hfs, "delta_hfs");
}

RecoilQuantities recoil_quantities(const PhysicalConstants& constants) {
  constants.validate();
  const double ks = constants.signal_wavenumber();
  const double e_rec =
      constants.hbar * constants.hbar * ks * ks / (2.0 * constants.atom_mass_rb87);
  return {e_rec, e_rec / constants.hbar};
}

CloudGeometry::CloudGeometry(const Eigen::Vector3d& radii_m, double atom_number_total,
                             const Eigen::Vector3d& component_numbers)
    : radii_(radii_m), n_total_(atom_number_total), components_(component_numbers) {
  for (int i = 0; i < 3; ++i) {
    require_positive(radii_[i], "Thomas-Fermi radius");
    if (components_[i] < 0.0 || !std::isfinite(components_[i])) {
      throw DomainError("component atom numbers must be >= 0 and finite");
    }
  }
  if (n_total_ < 0.0 || !std::isfinite(n_total_)) {
    throw DomainError("total atom number must be >= 0 and finite");
  }
}

CloudGeometry CloudGeometry::with_equal_components(const Eigen::Vector3d& radii_m,
                                                   double atom_number_total) {
  const double third = atom_number_total / 3.0;
  return CloudGeometry(radii_m, atom_number_total, Eigen::Vector3d::Constant(third));
}

CloudGeometry CloudGeometry::with_component_geomean(double geomean) const {
  require_positive(geomean, "component geometric mean");
  const double current = component_geometric_mean();
  Eigen::Vector3d scaled = current > 0.0
                               ? Eigen::Vector3d(components_ * (geomean / current))
                               : Eigen::Vector3d::Constant(geomean);
  return CloudGeometry(radii_, n_total_, scaled);
}

BeamGeometry::BeamGeometry(double ks_magnitude, double q_sq_over_ks_sq,
                           double q_dot_k_over_ks_sq, Mode mode)
    : ks_(ks_magnitude), q_sq_ratio_(q_sq_over_ks_sq), qk_ratio_(q_dot_k_over_ks_sq),
      mode_(mode) {
  require_positive(ks_, "signal wavenumber");
  if (mode_ == Mode::Rectangular) {
    q_sq_ratio_ = 2.0;
    qk_ratio_ = 0.0;
  } else {
    require_positive(q_sq_ratio_, "q^2/k_s^2");
  }
}

BeamGeometry BeamGeometry::measured(const PhysicalConstants& constants,
                                    double q_sq_over_ks_sq, double q_dot_k_over_ks_sq) {
  return BeamGeometry(constants.signal_wavenumber(), q_sq_over_ks_sq,
                      q_dot_k_over_ks_sq, Mode::Measured);
}

BeamGeometry BeamGeometry::rectangular(const PhysicalConstants& constants) {
  return BeamGeometry(constants.signal_wavenumber(), 2.0, 0.0, Mode::Rectangular);
}

ExperimentConfig default_experiment_config() {
  PhysicalConstants constants;
  constants.validate();
  // R_y = R_z = 27 um; R_x from the trap-frequency aspect ratio 70/20 = 3.5,
  // so that R_y/R_x is exactly 3.5 (27/3.5 um rounds to the quoted 8 um).
  const double r_y = 27e-6;
  const Eigen::Vector3d radii(r_y / 3.5, r_y, r_y);
  CloudGeometry cloud =
      CloudGeometry::with_equal_components(radii, 1.5e6).with_component_geomean(2.8e5);
  return {constants, cloud, BeamGeometry::measured(constants)};
}

}  // namespace becgate
