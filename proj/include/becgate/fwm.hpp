// Analytic matter-wave four-wave-mixing model: Thomas-Fermi wavefunctions,
// overlap integrals, growth timescale, saturation profile and the population
// curve of the newly generated momentum component.
#pragma once

#include <Eigen/Core>

#include "becgate/constants.hpp"
#include "becgate/quadrature.hpp"

namespace becgate {

// Thomas-Fermi mode volume V = 8*pi/15 * R_x R_y R_z (particle number over
// peak density), m^3.
double tf_volume(const CloudGeometry& geometry);

// A Thomas-Fermi cloud: geometry plus its cached mode volume.
class ThomasFermiCloud {
 public:
  explicit ThomasFermiCloud(const CloudGeometry& geometry)
      : geometry_(geometry), volume_(tf_volume(geometry)) {}

  const CloudGeometry& geometry() const { return geometry_; }
  double volume() const { return volume_; }

 private:
  CloudGeometry geometry_;
  double volume_;
};

// Single-particle amplitude (1/sqrt(V)) * sqrt(1 - sum x_i^2/R_i^2) inside the
// ellipsoid, 0 outside. Units 1/sqrt(m^3).
double tf_amplitude(const ThomasFermiCloud& cloud, const Eigen::Vector3d& x);

// Closed form of the density moment integral \int |u|^{2p} d^3x for p = 1
// (normalization, = 1) and p = 3 (collision overlap, = 8/(21 V^2)).
double sextic_overlap(const ThomasFermiCloud& cloud);

// Numerical cross-check of the same moments: nested adaptive quadrature in the
// elliptic-cylinder variables x = R_x rho cos(phi), z = R_z rho sin(phi).
// Throws QuadratureError (with the achieved estimate) on nonconvergence.
QuadratureResult tf_density_moment_quadrature(const ThomasFermiCloud& cloud, int p,
                                              double abs_tol = 1e-9);

// Initial growth timescale of the seeded momentum component,
//   tau = (hbar V / g12) * sqrt(21 / (8 N0 Nk Nkq)).
// Throws ZeroPopulationError when a component number vanishes.
double growth_timescale(const PhysicalConstants& constants, const ThomasFermiCloud& cloud);

struct SaturationTimes {
  double t0;  // s, m R_y / (2 hbar k_s): time for the clouds to slide apart
  double t1;  // s, 2 t0 / sqrt(1 + eps^2)
};

SaturationTimes saturation_times(const PhysicalConstants& constants,
                                 const CloudGeometry& geometry);

// True when eps^2 > 15, where the arcsin term of f changes sign; allowed but
// outside the regime the saturation model was built for.
inline bool epsilon_outside_validity(double epsilon) { return epsilon * epsilon > 15.0; }

// Saturation profile on [0, 1]:
//   f(x) = (1/32) [ x sqrt(1-x^2) (17 + eps^2 - 2 x^2 (1 + eps^2))
//                   + (15 - eps^2) asin x ],
// the closed form of \int_0^x (1 - (1+eps^2)/4 s^2) sqrt(1-s^2) ds.
// Throws DomainError for x outside [0, 1].
double f_profile(double x, double epsilon);

// Growth-and-saturation model for the generated atom number.
class GrowthModel {
 public:
  GrowthModel(double tau, double t0, double epsilon, double n_offset = 0.0);

  double tau() const { return tau_; }
  double t0() const { return t0_; }
  double t1() const { return t1_; }
  double epsilon() const { return epsilon_; }
  double n_offset() const { return n_offset_; }

 private:
  double tau_, t0_, t1_, epsilon_, n_offset_;
};

// N_q(t) = (t0/tau)^2 |f(t2/t0)|^2 + offset with t2 = min(t, t0, t1).
double fwm_population(double t, const GrowthModel& model);

// Fraction of one drifting cloud still overlapping its partner:
// h(x) = (1-|x|)^3 (1 + 3|x| + x^2) for |x| <= 1, else 0. Even in x.
double overlap_fraction(double x);

// Short-time FWM evolution parameter beta = sqrt(8/21) g12 t N / (hbar V),
// linear in t_fwm.
double beta_parameter(double t_fwm, const PhysicalConstants& constants,
                      const ThomasFermiCloud& cloud);

}  // namespace becgate
