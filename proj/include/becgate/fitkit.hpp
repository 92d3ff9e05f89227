// Nonlinear least squares (damped Gauss-Newton with numeric Jacobian) and the
// model functions fitted to growth and interference data.
#pragma once

#include <Eigen/Core>
#include <functional>
#include <string>
#include <vector>

#include "becgate/errors.hpp"

namespace becgate {

struct DataSeries {
  Eigen::VectorXd t;
  Eigen::VectorXd y;
  Eigen::VectorXd sigma;  // optional per-point weights; empty means unweighted

  // Throws DomainError unless lengths match and t is strictly increasing.
  void validate() const;
};

struct FitResult {
  std::vector<std::string> names;
  Eigen::VectorXd params;
  Eigen::VectorXd uncertainties;  // from local curvature at the optimum
  double residual_norm = 0.0;     // sqrt(sum of squared weighted residuals)
  int iterations = 0;
  bool converged = false;

  double param(const std::string& name) const;
};

using ModelFunction = std::function<double(double t, const Eigen::VectorXd& p)>;

struct LeastSquaresOptions {
  int max_iterations = 200;
  double gradient_tol = 1e-12;        // max |J^T r| at convergence
  double step_tol = 1e-14;            // relative parameter step
  double lambda_init = 1e-3;          // Levenberg-Marquardt damping
  double singular_threshold = 1e-13;  // min/max singular value of J^T J
};

// Local minimizer of sum((y_i - model(t_i; p)) / sigma_i)^2. Deterministic.
// Jacobian by central differences with step max(1e-8, 1e-6 |p|). Throws
// SingularJacobian when the scaled normal matrix is numerically rank
// deficient; returns converged = false after max_iterations.
FitResult least_squares(const ModelFunction& model, const DataSeries& data,
                        const Eigen::VectorXd& init,
                        const LeastSquaresOptions& options = {});

// Growth-curve fit: (t0/tau)^2 |f(min(t,t0,t1)/t0)|^2 + n_offset at fixed
// aspect ratio. Parameter names: tau, t0, n_offset.
FitResult fit_growth(const DataSeries& data, double epsilon);

// Gaussian-envelope sinusoid fit:
//   A exp(-(t - t_c)^2 / 2 w^2) (1 + V cos omega (t - t5)) + y0.
// Parameter names: visibility, omega, t5, amplitude, width, y0, center.
// V is clamped to [0, 1].
FitResult fit_sinusoid_envelope(const DataSeries& data);

struct EnvelopeParams {
  double y0 = 0.0;
  double amplitude = 1.0;
  double t0 = 1e-3;         // s, saturation timescale of the growth factor
  double t4 = 1e-3;         // s, half-separation timescale of the overlap factor
  double visibility = 0.0;  // V
  double omega = 0.0;       // rad/s
  double t5 = 0.0;          // s, phase offset
};

// Physical envelope model for the retrieved photon number versus FWM time:
//   y0 + A |f(t2(t)/t0)|^2 h(t / 2 t4) (1 + V cos omega (t - t5)).
double envelope_model(double t, const EnvelopeParams& params, double epsilon);

}  // namespace becgate
