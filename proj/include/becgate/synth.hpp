// Seeded synthetic data for fit round-trips. All randomness flows through an
// explicit generator; no ambient state.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "becgate/fitkit.hpp"
#include "becgate/fwm.hpp"

namespace becgate {

// mt19937_64 with a pinned Box-Muller transform, so streams are identical
// across standard libraries.
class SeededRng {
 public:
  explicit SeededRng(uint64_t seed) : engine_(seed) {}

  double uniform() {
    return (static_cast<double>(engine_()) + 0.5) * (1.0 / 18446744073709551616.0);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    spare_ = radius * std::sin(two_pi * u2);
    have_spare_ = true;
    return radius * std::cos(two_pi * u2);
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Growth curve sampled on [0, t_max] with multiplicative Gaussian noise.
inline DataSeries synth_growth_data(const GrowthModel& truth, double t_max, int points,
                                    double noise_frac, SeededRng& rng) {
  DataSeries data;
  data.t.resize(points);
  data.y.resize(points);
  for (int i = 0; i < points; ++i) {
    const double t = t_max * (i + 1) / points;
    data.t[i] = t;
    data.y[i] = fwm_population(t, truth) * (1.0 + noise_frac * rng.normal());
  }
  return data;
}

struct InterferenceTruth {
  double amplitude = 1.0;
  double center = 0.45e-3;      // s
  double width = 0.2e-3;        // s
  double visibility = 0.35;
  double omega = two_pi * 15.4e3;  // rad/s
  double t5 = 0.05e-3;          // s
  double y0 = 0.05;
};

inline double interference_truth_value(double t, const InterferenceTruth& p) {
  const double arg = (t - p.center) / p.width;
  return p.amplitude * std::exp(-0.5 * arg * arg) *
             (1.0 + p.visibility * std::cos(p.omega * (t - p.t5))) +
         p.y0;
}

// Gaussian-envelope sinusoid sampled on [t_min, t_max].
inline DataSeries synth_interference_data(const InterferenceTruth& truth, double t_min,
                                          double t_max, int points, double noise_frac,
                                          SeededRng& rng) {
  DataSeries data;
  data.t.resize(points);
  data.y.resize(points);
  for (int i = 0; i < points; ++i) {
    const double t = t_min + (t_max - t_min) * i / (points - 1);
    data.t[i] = t;
    data.y[i] = interference_truth_value(t, truth) * (1.0 + noise_frac * rng.normal());
  }
  return data;
}

}  // namespace becgate
