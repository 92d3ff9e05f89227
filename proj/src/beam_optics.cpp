#include "becgate/beam_optics.hpp"

#include <cmath>

namespace becgate {

void LaserPulseSpec::validate() const {
  if (power < 0.0 || !std::isfinite(power)) throw DomainError("laser power must be >= 0");
  if (!(waist > 0.0)) throw DomainError("beam waist must be positive");
  if (duration < 0.0) throw DomainError("pulse duration must be >= 0");
}

FieldIntensity intensity(const LaserPulseSpec& pulse, const PhysicalConstants& constants) {
  pulse.validate();
  const double i = 2.0 * pulse.power / (pi * pulse.waist * pulse.waist);
  const double e = std::sqrt(2.0 * i /
                             (constants.vacuum_light_speed * constants.vacuum_permittivity));
  return {i, e};
}

double cycling_rabi(double intensity_w_m2, const PhysicalConstants& constants) {
  if (intensity_w_m2 < 0.0) throw DomainError("intensity must be >= 0");
  return constants.gamma_excited * std::sqrt(intensity_w_m2 / (2.0 * constants.i_sat));
}

double field_rabi(double field_amplitude, const PhysicalConstants& constants) {
  return constants.d_cyc * field_amplitude / constants.hbar;
}

double effective_rabi(double omega_s, double omega_c, double delta,
                      const PhysicalConstants& constants) {
  const double hfs = constants.delta_hfs;
  const double guard = 1e-9 * hfs;
  if (std::fabs(delta) < guard || std::fabs(delta - hfs) < guard) {
    throw PoleError("two-photon Rabi frequency evaluated at a detuning pole");
  }
  const double bracket = 1.0 / delta - 1.0 / (delta - hfs);
  return 0.5 * omega_s * omega_c * (std::sqrt(3.0) / 12.0) * bracket;
}

CouplingResult pulse_coupling(const LaserPulseSpec& signal, const LaserPulseSpec& control,
                              const PhysicalConstants& constants) {
  CouplingResult result;
  result.omega_cyc_s = cycling_rabi(intensity(signal, constants).intensity, constants);
  result.omega_cyc_c = cycling_rabi(intensity(control, constants).intensity, constants);
  result.omega_eff = effective_rabi(result.omega_cyc_s, result.omega_cyc_c,
                                    control.detuning_delta, constants);
  result.pulse_area = result.omega_eff * control.duration;
  return result;
}

CouplingResult retrieval_coupling(const LaserPulseSpec& control,
                                  const PhysicalConstants& constants,
                                  const ThomasFermiCloud& cloud, double atom_number) {
  if (atom_number < 0.0) throw DomainError("atom number must be >= 0");
  CouplingResult result;
  const double omega_light =
      two_pi * constants.vacuum_light_speed / constants.lambda_signal;
  // vacuum signal field over the condensate mode volume
  const double e_vac = std::sqrt(constants.hbar * omega_light /
                                 (2.0 * constants.vacuum_permittivity * cloud.volume()));
  result.omega_cyc_s = field_rabi(e_vac, constants);
  result.omega_cyc_c = field_rabi(intensity(control, constants).field_amplitude, constants);
  result.omega_eff = effective_rabi(result.omega_cyc_s, result.omega_cyc_c,
                                    control.detuning_delta, constants);
  result.g = result.omega_eff;
  result.g_n = result.g * std::sqrt(atom_number);
  return result;
}

DampingRates damping_rates(const PhysicalConstants& constants,
                           const CloudGeometry& geometry) {
  const double gamma_d = constants.vacuum_light_speed / geometry.radii().y();
  return {gamma_d, geometry.aspect_ratio() * gamma_d};
}

double oscillation_frequency(const PhysicalConstants& constants, const BeamGeometry& beams) {
  const double ks = beams.ks_magnitude();
  return constants.hbar / constants.atom_mass_rb87 * ks * ks *
         (beams.q_sq_over_ks_sq() - beams.q_dot_k_over_ks_sq());
}

LadderFrequencies ladder_frequencies(int n, double omega_r, double delta_d,
                                     double delta_r) {
  LadderFrequencies f;
  f.omega_b = 2.0 * (static_cast<double>(n) * n + 1.0) * omega_r;
  f.omega_c = 2.0 * static_cast<double>(n) * n * omega_r;
  f.delta_d = delta_d - 4.0 * n * omega_r;
  f.delta_r = delta_r + 2.0 * omega_r;
  return f;
}

}  // namespace becgate
