#include "becgate/fitkit.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "becgate/fwm.hpp"

namespace becgate {

void DataSeries::validate() const {
  if (t.size() == 0) throw DomainError("data series is empty");
  if (t.size() != y.size()) throw DomainError("t and y lengths differ");
  if (sigma.size() != 0 && sigma.size() != t.size()) {
    throw DomainError("sigma length differs from t");
  }
  for (Eigen::Index i = 1; i < t.size(); ++i) {
    if (!(t[i] > t[i - 1])) throw DomainError("t must be strictly increasing");
  }
}

double FitResult::param(const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i] == name) return params[static_cast<Eigen::Index>(i)];
  }
  throw DomainError("unknown fit parameter: " + name);
}

namespace {

Eigen::VectorXd weights_of(const DataSeries& data) {
  if (data.sigma.size() == 0) return Eigen::VectorXd::Ones(data.t.size());
  return data.sigma.cwiseInverse();
}

Eigen::VectorXd residuals(const ModelFunction& model, const DataSeries& data,
                          const Eigen::VectorXd& w, const Eigen::VectorXd& p) {
  Eigen::VectorXd r(data.t.size());
  for (Eigen::Index i = 0; i < data.t.size(); ++i) {
    r[i] = (data.y[i] - model(data.t[i], p)) * w[i];
  }
  return r;
}

// J_ij = w_i dmodel(t_i)/dp_j, central differences.
Eigen::MatrixXd model_jacobian(const ModelFunction& model, const DataSeries& data,
                               const Eigen::VectorXd& w, const Eigen::VectorXd& p) {
  const Eigen::Index m = data.t.size();
  const Eigen::Index n = p.size();
  Eigen::MatrixXd jac(m, n);
  Eigen::VectorXd pp = p;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double step = std::max(1e-8, 1e-6 * std::fabs(p[j]));
    pp[j] = p[j] + step;
    Eigen::VectorXd hi(m);
    for (Eigen::Index i = 0; i < m; ++i) hi[i] = model(data.t[i], pp);
    pp[j] = p[j] - step;
    for (Eigen::Index i = 0; i < m; ++i) {
      jac(i, j) = (hi[i] - model(data.t[i], pp)) * w[i] / (2.0 * step);
    }
    pp[j] = p[j];
  }
  return jac;
}

}  // namespace

FitResult least_squares(const ModelFunction& model, const DataSeries& data,
                        const Eigen::VectorXd& init, const LeastSquaresOptions& options) {
  data.validate();
  if (!init.allFinite()) throw DomainError("initial parameters must be finite");

  const Eigen::VectorXd w = weights_of(data);
  const Eigen::Index npar = init.size();

  FitResult result;
  result.params = init;
  Eigen::VectorXd p = init;
  Eigen::VectorXd r = residuals(model, data, w, p);
  double cost = r.squaredNorm();
  double lambda = options.lambda_init;

  Eigen::MatrixXd jac;
  Eigen::MatrixXd normal;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    result.iterations = iter;
    jac = model_jacobian(model, data, w, p);
    normal = jac.transpose() * jac;
    const Eigen::VectorXd diag = normal.diagonal();
    if (!diag.allFinite() || diag.minCoeff() <= 0.0) {
      throw SingularJacobian("a fit parameter has no effect on the model");
    }
    // Rank check on the unit-diagonal scaled normal matrix.
    const Eigen::VectorXd scale = diag.cwiseSqrt();
    Eigen::MatrixXd scaled =
        scale.cwiseInverse().asDiagonal() * normal * scale.cwiseInverse().asDiagonal();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(scaled);
    if (eig.eigenvalues().minCoeff() <
        options.singular_threshold * eig.eigenvalues().maxCoeff()) {
      throw SingularJacobian("normal equations are numerically rank deficient");
    }

    const Eigen::VectorXd grad = jac.transpose() * r;
    const double grad_scaled =
        (grad.array() / (scale.array() * std::sqrt(std::max(cost, 1e-300)))).abs().maxCoeff();
    if (grad_scaled < 1e-10 || cost < 1e-60) {
      result.converged = true;
      break;
    }

    bool accepted = false;
    for (int attempt = 0; attempt < 60 && !accepted; ++attempt) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal() += lambda * diag;
      const Eigen::VectorXd step = Eigen::LDLT<Eigen::MatrixXd>(damped).solve(grad);
      const Eigen::VectorXd p_new = p + step;
      const Eigen::VectorXd r_new = residuals(model, data, w, p_new);
      const double cost_new = r_new.squaredNorm();
      if (std::isfinite(cost_new) && cost_new <= cost) {
        const double drop = cost - cost_new;
        bool tiny_step = true;
        for (Eigen::Index j = 0; j < npar; ++j) {
          if (std::fabs(step[j]) > options.step_tol * (std::fabs(p[j]) + options.step_tol)) {
            tiny_step = false;
            break;
          }
        }
        p = p_new;
        r = r_new;
        cost = cost_new;
        lambda = std::max(lambda / 3.0, 1e-14);
        accepted = true;
        if (tiny_step || drop <= 1e-15 * std::max(cost, 1e-300)) {
          result.converged = true;
        }
      } else {
        lambda *= 2.0;
      }
    }
    if (!accepted || result.converged) break;
  }

  result.params = p;
  result.residual_norm = std::sqrt(cost);

  // Parameter uncertainties from the local curvature.
  result.uncertainties = Eigen::VectorXd::Zero(npar);
  const Eigen::Index m = data.t.size();
  if (m > npar) {
    const double variance = cost / static_cast<double>(m - npar);
    jac = model_jacobian(model, data, w, p);
    normal = jac.transpose() * jac;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
    if (ldlt.info() == Eigen::Success) {
      const Eigen::MatrixXd cov =
          ldlt.solve(Eigen::MatrixXd::Identity(npar, npar)) * variance;
      result.uncertainties = cov.diagonal().cwiseMax(0.0).cwiseSqrt();
    }
  }
  return result;
}

FitResult fit_growth(const DataSeries& data, double epsilon) {
  data.validate();
  const double y_min = data.y.minCoeff();
  const double y_max = data.y.maxCoeff();
  const double plateau = std::max(y_max - y_min, 1e-12);

  // quarter-height crossing gives the quadratic-growth timescale
  double t_quarter = data.t[data.t.size() - 1];
  for (Eigen::Index i = 0; i < data.t.size(); ++i) {
    if (data.y[i] - y_min >= 0.25 * plateau && data.t[i] > 0.0) {
      t_quarter = data.t[i];
      break;
    }
  }
  const double tau0 = 2.0 * t_quarter / std::sqrt(plateau);
  const double x_clamp = std::min(1.0, 2.0 / std::sqrt(1.0 + epsilon * epsilon));
  const double f_max = f_profile(x_clamp, epsilon);
  const double t0_init = tau0 * std::sqrt(plateau) / f_max;

  ModelFunction model = [epsilon](double t, const Eigen::VectorXd& p) {
    const GrowthModel m(std::fabs(p[0]) + 1e-300, std::fabs(p[1]) + 1e-300, epsilon, p[2]);
    return fwm_population(t, m);
  };
  Eigen::Vector3d init(tau0, t0_init, y_min);
  FitResult fit = least_squares(model, data, init);
  fit.params[0] = std::fabs(fit.params[0]);
  fit.params[1] = std::fabs(fit.params[1]);
  fit.names = {"tau", "t0", "n_offset"};
  return fit;
}

FitResult fit_sinusoid_envelope(const DataSeries& data) {
  data.validate();
  const Eigen::Index m = data.t.size();
  if (m < 8) throw DomainError("too few points for the envelope fit");

  // envelope center and width from the first moments of |y - median|
  Eigen::VectorXd sorted = data.y;
  std::sort(sorted.data(), sorted.data() + sorted.size());
  const double median = sorted[m / 2];
  const Eigen::ArrayXd dev = (data.y.array() - median).abs();
  const double dev_sum = std::max(dev.sum(), 1e-300);
  const double t_center = (data.t.array() * dev).sum() / dev_sum;
  const double width0 = std::sqrt(
      ((data.t.array() - t_center).square() * dev).sum() / dev_sum);

  // Subtract the envelope hump before the frequency search; its spectrum
  // otherwise buries the oscillation peak at low k.
  const double y0_0 = data.y.minCoeff();
  Eigen::ArrayXd env(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double arg = (data.t[i] - t_center) / std::max(width0, 1e-300);
    env[i] = std::exp(-0.5 * arg * arg);
  }
  const double a_env = ((data.y.array() - y0_0) * env).sum() / env.square().sum();
  const Eigen::ArrayXd resid = data.y.array() - y0_0 - a_env * env;

  // dominant discrete Fourier component of the residual, >= 2 cycles per span
  const double span = data.t[m - 1] - data.t[0];
  auto dft_amp = [&](double k, double& ac, double& as) {
    const double omega = two_pi * k / span;
    ac = 0.0;
    as = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      ac += resid[i] * std::cos(omega * data.t[i]);
      as += resid[i] * std::sin(omega * data.t[i]);
    }
    return std::hypot(ac, as);
  };
  int best_k = 0;
  double best_amp = 0.0;
  for (int k = 2; k <= static_cast<int>(m) / 2; ++k) {
    double ac, as;
    const double amp = dft_amp(k, ac, as);
    if (amp > best_amp) {
      best_amp = amp;
      best_k = k;
    }
  }
  if (best_k == 0 || best_amp <= 0.0) {
    throw FitFailure("envelope fit initialization: no dominant Fourier component");
  }
  // parabolic refinement of the peak between bins
  double k_refined = best_k;
  {
    double ac, as;
    const double a_lo = dft_amp(best_k - 1, ac, as);
    const double a_hi = dft_amp(best_k + 1, ac, as);
    const double denom = a_lo - 2.0 * best_amp + a_hi;
    if (denom < 0.0) k_refined = best_k + 0.5 * (a_lo - a_hi) / denom;
  }
  const double omega0 = two_pi * k_refined / span;
  double best_cos, best_sin;
  const double amp_refined = dft_amp(k_refined, best_cos, best_sin);
  const double t5_0 = std::atan2(best_sin, best_cos) / omega0;
  const double v0 =
      std::clamp(2.0 * amp_refined / std::max(a_env * env.sum(), 1e-300), 0.05, 1.0);
  const double amp0 = std::max(a_env, 1e-12);

  // p = (V, omega, t5, A, w, y0, center); center and width start from the
  // moment estimates, frequency and phase from the refined Fourier peak.
  ModelFunction model = [](double t, const Eigen::VectorXd& p) {
    const double w = std::fabs(p[4]) + 1e-300;
    const double arg = (t - p[6]) / w;
    return p[3] * std::exp(-0.5 * arg * arg) * (1.0 + p[0] * std::cos(p[1] * (t - p[2]))) +
           p[5];
  };
  Eigen::VectorXd init(7);
  init << v0, omega0, t5_0, amp0, width0, y0_0, t_center;
  FitResult fit = least_squares(model, data, init);

  // The data covers at least two oscillation periods, so a fitted frequency
  // below that band means the sinusoid drifted off to absorb envelope misfit
  // (it happens when the data has no real oscillation). Refit with the
  // frequency frozen at the Fourier estimate.
  if (std::fabs(fit.params[1]) < two_pi * 1.5 / span) {
    ModelFunction frozen = [omega0](double t, const Eigen::VectorXd& p) {
      const double w = std::fabs(p[3]) + 1e-300;
      const double arg = (t - p[5]) / w;
      return p[2] * std::exp(-0.5 * arg * arg) *
                 (1.0 + p[0] * std::cos(omega0 * (t - p[1]))) +
             p[4];
    };
    Eigen::VectorXd reduced(6);
    reduced << v0, t5_0, amp0, width0, y0_0, t_center;
    const FitResult narrow = least_squares(frozen, data, reduced);
    fit.params.resize(7);
    fit.params << narrow.params[0], omega0, narrow.params[1], narrow.params[2],
        narrow.params[3], narrow.params[4], narrow.params[5];
    fit.uncertainties.resize(7);
    fit.uncertainties << narrow.uncertainties[0], 0.0, narrow.uncertainties[1],
        narrow.uncertainties[2], narrow.uncertainties[3], narrow.uncertainties[4],
        narrow.uncertainties[5];
    fit.residual_norm = narrow.residual_norm;
    fit.iterations += narrow.iterations;
    fit.converged = narrow.converged;
  }

  double v = fit.params[0];
  if (v < 0.0) {
    v = -v;
    fit.params[2] += pi / std::fabs(fit.params[1]);
  }
  fit.params[0] = std::min(v, 1.0);
  fit.params[1] = std::fabs(fit.params[1]);
  fit.params[4] = std::fabs(fit.params[4]);
  fit.names = {"visibility", "omega", "t5", "amplitude", "width", "y0", "center"};
  return fit;
}

double envelope_model(double t, const EnvelopeParams& params, double epsilon) {
  if (t < 0.0) throw DomainError("envelope model defined for t >= 0");
  const double t1 = 2.0 * params.t0 / std::sqrt(1.0 + epsilon * epsilon);
  const double t2 = std::min({t, params.t0, t1});
  const double f = f_profile(t2 / params.t0, epsilon);
  const double h = overlap_fraction(t / (2.0 * params.t4));
  return params.y0 + params.amplitude * f * f * h *
                         (1.0 + params.visibility * std::cos(params.omega * (t - params.t5)));
}

}  // namespace becgate
