// Mean-field model of light retrieval by Raman amplification of matter waves:
// two signal modes (downward/rightward) coupled to a truncated ladder of
// atomic momentum states, with damping for the light leaving the cloud.
#pragma once

#include <Eigen/Core>
#include <array>
#include <complex>
#include <vector>

#include "becgate/constants.hpp"
#include "becgate/fitkit.hpp"

namespace becgate {

enum class PreparationScheme {
  Extended,   // six populated momentum components, two interfering pathways
  BasicGate,  // four components; the |2,k> -> |1,-q> branch is Doppler-suppressed
};

enum class IntegratorKind {
  AdiabaticElimination,  // light modes slaved to the atomic sums; non-stiff
  StiffAdaptive,         // full damped equations, semi-implicit adaptive
};

// State preparation: two Raman pulse areas, the FWM evolution parameter beta,
// and the kinetic phase chi = -2 omega_r t_fwm.
struct InitialConditionSpec {
  double theta1 = pi / 2;  // rad
  double theta2 = pi / 2;  // rad
  double beta = 1.4142135623730951;
  double chi = 0.0;  // rad
  PreparationScheme scheme = PreparationScheme::Extended;
  bool signal1_on = true;
  bool signal2_on = true;
  int n_max = 6;
};

// Complex mode amplitudes. b[n] is |2, k + n q>, c[n] is |1, n q>, both stored
// at index n + n_max; amplitudes are normalized to the total atom number, so
// populations are |.|^2 fractions. n_d/n_r count emitted photons (absolute).
struct MeanFieldState {
  std::complex<double> a_d{0.0, 0.0};
  std::complex<double> a_r{0.0, 0.0};
  Eigen::VectorXcd b;
  Eigen::VectorXcd c;
  double n_d = 0.0;
  double n_r = 0.0;

  explicit MeanFieldState(int n_max = 6)
      : b(Eigen::VectorXcd::Zero(2 * n_max + 1)),
        c(Eigen::VectorXcd::Zero(2 * n_max + 1)) {}

  int n_max() const { return (static_cast<int>(b.size()) - 1) / 2; }
  std::complex<double>& b_at(int n) { return b[n + n_max()]; }
  std::complex<double>& c_at(int n) { return c[n + n_max()]; }
  std::complex<double> b_at(int n) const { return b[n + n_max()]; }
  std::complex<double> c_at(int n) const { return c[n + n_max()]; }

  // Total atomic population sum |b_n|^2 + |c_n|^2 (conserved by the dynamics).
  double atom_population() const { return b.squaredNorm() + c.squaredNorm(); }
  // S = sum_n c_{n+1}^* b_n: source of the downward mode.
  std::complex<double> pathway_sum_down() const;
  // T = sum_n c_n^* b_n: source of the rightward mode.
  std::complex<double> pathway_sum_right() const;
  // Population sitting on the outermost ladder sites.
  double edge_population() const;
};

struct RetrievalParams {
  double g_n = two_pi * 0.6e9;  // rad/s, collective coupling g sqrt(N)
  double gamma_d = 0.0;         // 1/s, downward-mode damping
  double gamma_r = 0.0;         // 1/s, rightward-mode damping
  double atom_number = 1e6;     // N, scales photon tallies
  double omega_r = 0.0;         // rad/s, recoil frequency (phase factors only)
  double delta_d = 0.0;         // rad/s, two-photon detuning, downward
  double delta_r = 0.0;         // rad/s, two-photon detuning, rightward
  bool use_phase_factors = false;
  IntegratorKind integrator = IntegratorKind::AdiabaticElimination;
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;

  // gamma_d = gamma_over_gn * g_n, gamma_r = gamma_ratio * gamma_d.
  static RetrievalParams from_ratios(double gamma_over_gn, double gamma_ratio,
                                     double g_n = two_pi * 0.6e9,
                                     double atom_number = 1e6);
  // gamma_d = c/R_y; gamma_r/gamma_d equals the cloud aspect ratio.
  static RetrievalParams from_geometry(const PhysicalConstants& constants,
                                       const CloudGeometry& geometry, double g_n,
                                       double atom_number);

  // Typical time for light to leave the cloud, gamma_d / g_n^2, seconds.
  double emission_timescale() const { return gamma_d / (g_n * g_n); }
  void validate() const;
};

// Population allowed on the outermost ladder site before CutoffOverflow.
inline constexpr double cutoff_guard_threshold = 1e-6;

// Amplitudes after the two Raman pulses and the FWM dark time. A gate input
// that is off zeroes the corresponding pulse area.
MeanFieldState build_initial_state(const InitialConditionSpec& spec);

struct TrajectorySample {
  double t;  // s
  MeanFieldState state;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  const MeanFieldState& final_state() const { return samples.back().state; }
};

// Integrates the equations of motion from `state` for t_end seconds, recording
// every dt_record seconds (and at t_end). Throws IntegratorFailure or
// CutoffOverflow.
Trajectory evolve(const MeanFieldState& state, const RetrievalParams& params,
                  double t_end, double dt_record);

// Final state after a fixed horizon, counted in emission timescales. This is
// the protocol behind the interference-pattern computations: every run gets
// the same retrieval-pulse duration.
MeanFieldState retrieve_fixed_horizon(const MeanFieldState& state,
                                      const RetrievalParams& params,
                                      double horizon_timescales = 10.0);

// Integrates until the photon total grows by less than rel_change over one
// emission timescale, capped at cap_timescales.
MeanFieldState retrieve_to_quiescence(const MeanFieldState& state,
                                      const RetrievalParams& params,
                                      double rel_change = 1e-6,
                                      double cap_timescales = 50.0);

struct VisibilityScan {
  std::vector<double> chi;
  std::vector<double> n_d;  // photons emitted downward per grid point
  int harmonic = 1;         // integer harmonic the sinusoid was fitted at
  double visibility = 0.0;  // V in [0, 1]
  double amplitude = 0.0;   // A of A(1 + V cos(k chi - chi0))
  double phase = 0.0;       // chi0
  FitResult fit;
};

// Runs the retrieval for every chi on the grid (>= 16 points spanning a full
// 2 pi period) and fits A(1 + V cos(k chi - chi0)) at the dominant DFT
// harmonic k. The model's pattern is exactly pi-periodic in chi, so k = 2.
VisibilityScan visibility_scan(const InitialConditionSpec& base,
                               const RetrievalParams& params,
                               const std::vector<double>& chi_grid,
                               double horizon_timescales = 10.0);

struct GateRow {
  bool signal1;
  bool signal2;
  double n_d;
  double n_r;
};

// The four input combinations of the AND gate, BasicGate preparation.
// Row order: (off,off), (on,off), (off,on), (on,on).
std::array<GateRow, 4> gate_truth_table(const InitialConditionSpec& base,
                                        const RetrievalParams& params,
                                        double horizon_timescales = 10.0);

struct PhaseFactorReport {
  double n_d_with_phases;
  double n_d_unity;
  double relative_deviation;
  bool regime_warning;  // set when g_n is not >> omega_r
};

// Compares the retrieval with the kinetic phase factors retained against the
// phases-as-unity approximation.
PhaseFactorReport phase_factor_validation(const InitialConditionSpec& spec,
                                          const RetrievalParams& params, double t_end);

// Instantaneous two-pathway source of the downward mode,
// g_n (c_0^* b_{-1} + c_1^* b_0).
std::complex<double> short_pulse_interference_rate(const MeanFieldState& state,
                                                   double g_n);

}  // namespace becgate
