// Light-field quantities: intensities, cycling and two-photon Rabi
// frequencies, pulse areas, the retrieval coupling g and g sqrt(N), cloud-size
// damping rates, and the interference frequency from the beam geometry.
#pragma once

#include "becgate/constants.hpp"
#include "becgate/fwm.hpp"

namespace becgate {

struct LaserPulseSpec {
  double power;           // W
  double waist;           // m, 1/e^2 intensity radius
  double detuning_delta;  // rad/s, from the |2> -> |1'> transition
  double duration;        // s

  void validate() const;
};

struct FieldIntensity {
  double intensity;        // W/m^2, 2P/(pi w^2)
  double field_amplitude;  // V/m, sqrt(2 I / c eps0)
};

FieldIntensity intensity(const LaserPulseSpec& pulse, const PhysicalConstants& constants);

// Rabi frequency the light would have on the closed cycling transition,
// Gamma sqrt(I / 2 I_sat).
double cycling_rabi(double intensity_w_m2, const PhysicalConstants& constants);

// Same quantity from the field amplitude, d_cyc E / hbar. Used where there is
// no classical intensity (vacuum field of the retrieval mode).
double field_rabi(double field_amplitude, const PhysicalConstants& constants);

// Two-photon Rabi frequency with both excited hyperfine states contributing:
//   Omega_eff = (Omega_s Omega_c / 2) (sqrt(3)/12) (1/Delta - 1/(Delta - Delta_hfs)).
// Throws PoleError at Delta = 0 or Delta = Delta_hfs.
double effective_rabi(double omega_s, double omega_c, double delta,
                      const PhysicalConstants& constants);

struct CouplingResult {
  double omega_cyc_s = 0.0;  // rad/s
  double omega_cyc_c = 0.0;  // rad/s
  double omega_eff = 0.0;    // rad/s
  double pulse_area = 0.0;   // rad, omega_eff * duration
  double g = 0.0;            // rad/s
  double g_n = 0.0;          // rad/s, g sqrt(N)
};

// Pulse area of a signal/control Raman pair at common detuning (of the
// control pulse) and common duration.
CouplingResult pulse_coupling(const LaserPulseSpec& signal, const LaserPulseSpec& control,
                              const PhysicalConstants& constants);

// Retrieval coupling: the signal mode is in vacuum, so its field is
// sqrt(hbar omega / 2 eps0 V) with the quantization volume approximated by the
// Thomas-Fermi mode volume; g = Omega_eff of that field with the control
// pulse, g_n = g sqrt(N).
CouplingResult retrieval_coupling(const LaserPulseSpec& control,
                                  const PhysicalConstants& constants,
                                  const ThomasFermiCloud& cloud, double atom_number);

struct DampingRates {
  double gamma_d;  // 1/s, c / R_y
  double gamma_r;  // 1/s, aspect_ratio * gamma_d
};

// Photon escape rates from the cloud size; their ratio is the inverse ratio of
// the Thomas-Fermi radii along the two emission directions.
DampingRates damping_rates(const PhysicalConstants& constants,
                           const CloudGeometry& geometry);

// Interference frequency of the two retrieval pathways,
// omega = (hbar/m) (q^2 - q.k); equals 4 omega_r for rectangular geometry.
double oscillation_frequency(const PhysicalConstants& constants, const BeamGeometry& beams);

struct LadderFrequencies {
  double omega_b;  // rad/s, 2 (n^2 + 1) omega_r
  double omega_c;  // rad/s, 2 n^2 omega_r
  double delta_d;  // rad/s, delta_d - 4 n omega_r
  double delta_r;  // rad/s, delta_r + 2 omega_r
};

LadderFrequencies ladder_frequencies(int n, double omega_r, double delta_d = 0.0,
                                     double delta_r = 0.0);

}  // namespace becgate
