#include "becgate/fwm.hpp"

#include <cmath>

namespace becgate {

double tf_volume(const CloudGeometry& geometry) {
  const Eigen::Vector3d& r = geometry.radii();
  return 8.0 * pi / 15.0 * r.x() * r.y() * r.z();
}

double tf_amplitude(const ThomasFermiCloud& cloud, const Eigen::Vector3d& x) {
  const Eigen::Vector3d& r = cloud.geometry().radii();
  const double arg = 1.0 - (x.array() / r.array()).square().sum();
  if (arg <= 0.0) return 0.0;
  return std::sqrt(arg / cloud.volume());
}

double sextic_overlap(const ThomasFermiCloud& cloud) {
  const double v = cloud.volume();
  return 8.0 / (21.0 * v * v);
}

QuadratureResult tf_density_moment_quadrature(const ThomasFermiCloud& cloud, int p,
                                              double abs_tol) {
  if (p < 1) throw DomainError("density moment order must be >= 1");
  const Eigen::Vector3d& r = cloud.geometry().radii();
  const double v = cloud.volume();
  // Substituting x = R_x rho cos(phi), z = R_z rho sin(phi), y = R_y yhat
  // turns the moment into an order-unity dimensionless integral
  //   2 pi \int dyhat \int rho (1 - rho^2 - yhat^2)^p drho
  // times R_x R_y R_z / V^p; the tolerance applies to the former.
  const double scale = r.x() * r.y() * r.z() / std::pow(v, p);
  // inner runs two decades tighter, floored where machine precision takes over
  const double inner_tol = std::max(abs_tol * 1e-2, 1e-14);
  auto outer = [&](double yhat) {
    const double rho_max_sq = 1.0 - yhat * yhat;
    if (rho_max_sq <= 0.0) return 0.0;
    auto inner = [&](double rho) {
      return rho * std::pow(rho_max_sq - rho * rho, p);
    };
    QuadratureResult res =
        integrate_adaptive(inner, 0.0, std::sqrt(rho_max_sq), inner_tol, 0.0);
    return two_pi * res.value;
  };
  QuadratureResult result = integrate_adaptive(outer, -1.0, 1.0, abs_tol, 0.0);
  result.value *= scale;
  result.error_estimate *= scale;
  if (!result.converged) {
    throw QuadratureError("ellipsoid moment quadrature did not converge",
                          result.error_estimate);
  }
  return result;
}

double growth_timescale(const PhysicalConstants& constants, const ThomasFermiCloud& cloud) {
  const Eigen::Vector3d& n = cloud.geometry().component_numbers();
  const double product = n.x() * n.y() * n.z();
  if (product <= 0.0) {
    throw ZeroPopulationError("growth timescale undefined: a component population is zero");
  }
  return constants.hbar * cloud.volume() / constants.g12() *
         std::sqrt(21.0 / (8.0 * product));
}

SaturationTimes saturation_times(const PhysicalConstants& constants,
                                 const CloudGeometry& geometry) {
  const double t0 = constants.atom_mass_rb87 * geometry.radii().y() /
                    (2.0 * constants.hbar * constants.signal_wavenumber());
  const double eps = geometry.aspect_ratio();
  return {t0, 2.0 * t0 / std::sqrt(1.0 + eps * eps)};
}

double f_profile(double x, double epsilon) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("f_profile argument must lie in [0, 1]");
  }
  const double eps_sq = epsilon * epsilon;
  const double root = std::sqrt(std::max(0.0, 1.0 - x * x));
  return (x * root * (17.0 + eps_sq - 2.0 * x * x * (1.0 + eps_sq)) +
          (15.0 - eps_sq) * std::asin(x)) /
         32.0;
}

GrowthModel::GrowthModel(double tau, double t0, double epsilon, double n_offset)
    : tau_(tau), t0_(t0), t1_(2.0 * t0 / std::sqrt(1.0 + epsilon * epsilon)),
      epsilon_(epsilon), n_offset_(n_offset) {
  if (!(tau_ > 0.0) || !(t0_ > 0.0)) {
    throw DomainError("growth model requires tau > 0 and t0 > 0");
  }
}

double fwm_population(double t, const GrowthModel& model) {
  const double t2 = std::min({t, model.t0(), model.t1()});
  const double f = f_profile(t2 / model.t0(), model.epsilon());
  const double scale = model.t0() / model.tau();
  return scale * scale * f * f + model.n_offset();
}

double overlap_fraction(double x) {
  const double ax = std::fabs(x);
  if (ax >= 1.0) return 0.0;
  const double one_minus = 1.0 - ax;
  return one_minus * one_minus * one_minus * (1.0 + 3.0 * ax + ax * ax);
}

double beta_parameter(double t_fwm, const PhysicalConstants& constants,
                      const ThomasFermiCloud& cloud) {
  if (t_fwm < 0.0) throw DomainError("t_fwm must be >= 0");
  return std::sqrt(8.0 / 21.0) * constants.g12() * t_fwm *
         cloud.geometry().atom_number_total() / (constants.hbar * cloud.volume());
}

}  // namespace becgate
