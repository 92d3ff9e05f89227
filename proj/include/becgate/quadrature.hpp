// Adaptive one-dimensional Gauss-Kronrod quadrature.
#pragma once

#include <cmath>
#include <queue>
#include <utility>
#include <vector>

namespace becgate {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
  int evaluations = 0;
};

namespace detail {

// 15-point Kronrod extension of 7-point Gauss. Column layout:
// abscissa, Gauss-7 weight (0 on Kronrod-only nodes), Kronrod-15 weight.
inline constexpr double gk15_nodes[8][3] = {
    {0.000000000000000, 0.417959183673469, 0.209482141084728},
    {0.405845151377397, 0.381830050505119, 0.190350578064785},
    {0.741531185599394, 0.279705391489277, 0.140653259715525},
    {0.949107912342759, 0.129484966168870, 0.063092092629979},
    {0.207784955007898, 0.000000000000000, 0.204432940075298},
    {0.586087235467691, 0.000000000000000, 0.169004726639267},
    {0.864864423359769, 0.000000000000000, 0.104790010322250},
    {0.991455371120813, 0.000000000000000, 0.022935322010529},
};

template <class F>
std::pair<double, double> gk15(F&& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double f0 = f(mid);
  double gauss = gk15_nodes[0][1] * f0;
  double kronrod = gk15_nodes[0][2] * f0;
  for (int i = 1; i < 8; ++i) {
    const double dx = half * gk15_nodes[i][0];
    const double fi = f(mid + dx) + f(mid - dx);
    gauss += gk15_nodes[i][1] * fi;
    kronrod += gk15_nodes[i][2] * fi;
  }
  gauss *= half;
  kronrod *= half;
  // QUADPACK-style sharpened error estimate.
  const double diff = std::fabs(gauss - kronrod);
  const double err = std::pow(200.0 * diff, 1.5) < diff ? std::pow(200.0 * diff, 1.5) : diff;
  return {kronrod, err};
}

struct Interval {
  double a, b, value, error;
  bool operator<(const Interval& other) const { return error < other.error; }
};

}  // namespace detail

// Worst-interval-first adaptive bisection. Converged when the summed error
// estimate drops below max(abs_tol, rel_tol*|integral|).
template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, double abs_tol = 1e-12,
                                    double rel_tol = 1e-10, int max_intervals = 2000) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }
  auto [v0, e0] = detail::gk15(f, a, b);
  result.evaluations = 15;
  std::priority_queue<detail::Interval> queue;
  queue.push({a, b, v0, e0});
  double total = v0;
  double total_err = e0;
  int intervals = 1;
  while (intervals < max_intervals) {
    if (total_err <= std::max(abs_tol, rel_tol * std::fabs(total))) {
      result.converged = true;
      break;
    }
    detail::Interval worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    auto [vl, el] = detail::gk15(f, worst.a, mid);
    auto [vr, er] = detail::gk15(f, mid, worst.b);
    result.evaluations += 30;
    total += vl + vr - worst.value;
    total_err += el + er - worst.error;
    queue.push({worst.a, mid, vl, el});
    queue.push({mid, worst.b, vr, er});
    ++intervals;
  }
  if (total_err <= std::max(abs_tol, rel_tol * std::fabs(total))) {
    result.converged = true;
  }
  result.value = total;
  result.error_estimate = total_err;
  return result;
}

}  // namespace becgate
