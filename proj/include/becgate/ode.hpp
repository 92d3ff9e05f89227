// Adaptive ODE steppers on Eigen vectors: an explicit Dormand-Prince 5(4)
// pair for non-stiff systems and a 4(3) Rosenbrock scheme (Shampine
// coefficients) for stiff ones.
#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <cmath>
#include <utility>

#include "becgate/errors.hpp"

namespace becgate {

struct OdeOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_steps = 5'000'000;
};

namespace detail {

inline double error_norm(const Eigen::VectorXd& err, const Eigen::VectorXd& y0,
                         const Eigen::VectorXd& y1, const OdeOptions& opt) {
  const Eigen::ArrayXd scale =
      opt.abs_tol + opt.rel_tol * y0.array().abs().max(y1.array().abs());
  return std::sqrt((err.array() / scale).square().mean());
}

}  // namespace detail

// Dormand-Prince 5(4), FSAL. Advances y in place from t0 to t1; h carries the
// adaptive step size across calls. Returns the number of accepted steps.
// Rhs signature: void(double t, const VectorXd& y, VectorXd& dydt).
template <class Rhs>
long integrate_dopri5(Rhs&& f, Eigen::VectorXd& y, double t0, double t1, double& h,
                      const OdeOptions& opt = {}) {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static constexpr double d1 = 5179.0 / 57600, d3 = 7571.0 / 16695, d4 = 393.0 / 640,
                          d5 = -92097.0 / 339200, d6 = 187.0 / 2100, d7 = 1.0 / 40;

  const double span = t1 - t0;
  if (span <= 0.0) return 0;
  if (h <= 0.0 || h > span) h = span / 16.0;
  const double h_floor = 1e-14 * span;

  const auto n = y.size();
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n),
      err(n);
  double t = t0;
  f(t, y, k1);
  long steps = 0;
  while (t < t1) {
    if (steps >= opt.max_steps) {
      throw IntegratorFailure("dopri5: step budget exhausted");
    }
    if (h < h_floor) {
      throw IntegratorFailure("dopri5: step size underflow");
    }
    // truncating to land on t1 must not shrink the stored step size
    const bool clamped = t + h > t1;
    const double hs = clamped ? t1 - t : h;

    ytmp = y + hs * a21 * k1;
    f(t + c2 * hs, ytmp, k2);
    ytmp = y + hs * (a31 * k1 + a32 * k2);
    f(t + c3 * hs, ytmp, k3);
    ytmp = y + hs * (a41 * k1 + a42 * k2 + a43 * k3);
    f(t + c4 * hs, ytmp, k4);
    ytmp = y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
    f(t + c5 * hs, ytmp, k5);
    ytmp = y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
    f(t + hs, ytmp, k6);
    ynew = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    f(t + hs, ynew, k7);
    err = ynew - y - hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);

    const double en = detail::error_norm(err, y, ynew, opt);
    if (en <= 1.0) {
      t += hs;
      y.swap(ynew);
      k1.swap(k7);  // FSAL
      ++steps;
      const double grow = std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-16), -0.2)));
      if (!clamped) h = hs * grow;
    } else {
      h = hs * std::max(0.2, 0.9 * std::pow(en, -0.2));
    }
  }
  return steps;
}

// Forward-difference Jacobian, for callers without an analytic one.
template <class Rhs>
void numeric_jacobian(Rhs&& f, double t, const Eigen::VectorXd& y, Eigen::MatrixXd& jac) {
  const auto n = y.size();
  Eigen::VectorXd f0(n), f1(n), yp = y;
  f(t, y, f0);
  for (Eigen::Index j = 0; j < n; ++j) {
    const double delta = 1.4901161193847656e-08 * std::max(std::fabs(y[j]), 1e-5);
    yp[j] = y[j] + delta;
    f(t, yp, f1);
    yp[j] = y[j];
    jac.col(j) = (f1 - f0) / delta;
  }
}

// Rosenbrock 4(3) with Shampine's parameter set. Semi-implicit: one LU
// factorization of (I/(gamma h) - J) per step, four back-substitutions.
// Jac signature: void(double t, const VectorXd& y, MatrixXd& J). The system is
// treated as autonomous; non-autonomous callers append t as a state variable.
template <class Rhs, class Jac>
long integrate_rosenbrock(Rhs&& f, Jac&& jac, Eigen::VectorXd& y, double t0, double t1,
                          double& h, const OdeOptions& opt = {}) {
  static constexpr double gam = 0.5;
  static constexpr double a21 = 2.0, a31 = 48.0 / 25, a32 = 6.0 / 25;
  static constexpr double c21 = -8.0, c31 = 372.0 / 25, c32 = 12.0 / 5;
  static constexpr double c41 = -112.0 / 125, c42 = -54.0 / 125, c43 = -2.0 / 5;
  static constexpr double b1 = 19.0 / 9, b2 = 1.0 / 2, b3 = 25.0 / 108, b4 = 125.0 / 108;
  static constexpr double e1 = 17.0 / 54, e2 = 7.0 / 36, e3 = 0.0, e4 = 125.0 / 108;

  const double span = t1 - t0;
  if (span <= 0.0) return 0;
  if (h <= 0.0 || h > span) h = span / 64.0;
  const double h_floor = 1e-14 * span;

  const auto n = y.size();
  Eigen::MatrixXd J(n, n), A(n, n);
  Eigen::VectorXd f1(n), f2(n), f3(n), g1(n), g2(n), g3(n), g4(n), ytmp(n), ynew(n),
      err(n);
  double t = t0;
  long steps = 0;
  while (t < t1) {
    if (steps >= opt.max_steps) {
      throw IntegratorFailure("rosenbrock: step budget exhausted");
    }
    jac(t, y, J);
    f(t, y, f1);
    bool accepted = false;
    while (!accepted) {
      if (h < h_floor) {
        throw IntegratorFailure("rosenbrock: step size underflow");
      }
      const bool clamped = t + h > t1;
      const double hs = clamped ? t1 - t : h;
      A = -J;
      A.diagonal().array() += 1.0 / (gam * hs);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);

      g1 = lu.solve(f1);
      ytmp = y + a21 * g1;
      f(t, ytmp, f2);
      g2 = lu.solve(f2 + (c21 / hs) * g1);
      ytmp = y + a31 * g1 + a32 * g2;
      f(t, ytmp, f3);
      g3 = lu.solve(f3 + (c31 * g1 + c32 * g2) / hs);
      // fourth stage reuses the third-stage argument
      g4 = lu.solve(f3 + (c41 * g1 + c42 * g2 + c43 * g3) / hs);

      ynew = y + b1 * g1 + b2 * g2 + b3 * g3 + b4 * g4;
      err = e1 * g1 + e2 * g2 + e3 * g3 + e4 * g4;
      const double en = detail::error_norm(err, y, ynew, opt);
      if (en <= 1.0) {
        t += hs;
        y.swap(ynew);
        ++steps;
        const double grow =
            std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(en, 1e-16), -0.25)));
        if (!clamped) h = hs * grow;
        accepted = true;
      } else {
        h = hs * std::max(0.2, 0.9 * std::pow(en, -1.0 / 3.0));
      }
    }
  }
  return steps;
}

template <class Rhs>
long integrate_rosenbrock(Rhs&& f, Eigen::VectorXd& y, double t0, double t1, double& h,
                          const OdeOptions& opt = {}) {
  auto jac = [&f](double t, const Eigen::VectorXd& yy, Eigen::MatrixXd& J) {
    numeric_jacobian(f, t, yy, J);
  };
  return integrate_rosenbrock(std::forward<Rhs>(f), jac, y, t0, t1, h, opt);
}

}  // namespace becgate
