#include "becgate/retrieval.hpp"

#include <algorithm>
#include <cmath>

#include "becgate/ode.hpp"

namespace becgate {

std::complex<double> MeanFieldState::pathway_sum_down() const {
  const auto m = b.size();
  // dot() conjugates its left operand: sum conj(c_{n+1}) b_n.
  return c.tail(m - 1).dot(b.head(m - 1));
}

std::complex<double> MeanFieldState::pathway_sum_right() const { return c.dot(b); }

double MeanFieldState::edge_population() const {
  const auto m = b.size();
  return std::norm(b[0]) + std::norm(b[m - 1]) + std::norm(c[0]) + std::norm(c[m - 1]);
}

RetrievalParams RetrievalParams::from_ratios(double gamma_over_gn, double gamma_ratio,
                                             double g_n, double atom_number) {
  RetrievalParams p;
  p.g_n = g_n;
  p.gamma_d = gamma_over_gn * g_n;
  p.gamma_r = gamma_ratio * p.gamma_d;
  p.atom_number = atom_number;
  p.validate();
  return p;
}

RetrievalParams RetrievalParams::from_geometry(const PhysicalConstants& constants,
                                               const CloudGeometry& geometry, double g_n,
                                               double atom_number) {
  RetrievalParams p;
  p.g_n = g_n;
  p.gamma_d = constants.vacuum_light_speed / geometry.radii().y();
  p.gamma_r = geometry.aspect_ratio() * p.gamma_d;
  p.atom_number = atom_number;
  p.omega_r = recoil_quantities(constants).omega_r;
  p.validate();
  return p;
}

void RetrievalParams::validate() const {
  if (g_n < 0.0 || !std::isfinite(g_n)) throw DomainError("g_n must be >= 0 and finite");
  if (g_n > 0.0 && (!(gamma_d > 0.0) || !(gamma_r > 0.0))) {
    throw DomainError("damping rates must be positive for a retrieval run");
  }
  if (!(atom_number > 0.0)) throw DomainError("atom number must be positive");
}

MeanFieldState build_initial_state(const InitialConditionSpec& spec) {
  using namespace std::complex_literals;
  MeanFieldState state(spec.n_max);
  const double th1 = spec.signal1_on ? spec.theta1 : 0.0;
  const double th2 = spec.signal2_on ? spec.theta2 : 0.0;
  const double c1 = std::cos(th1 / 2), s1 = std::sin(th1 / 2);
  const double c2 = std::cos(th2 / 2), s2 = std::sin(th2 / 2);
  const std::complex<double> phase = std::exp(1i * spec.chi);

  if (spec.scheme == PreparationScheme::Extended) {
    state.c_at(0) = c1 * c2;
    state.b_at(0) = phase * s1 * c2;
    state.c_at(-1) = -phase * s1 * s2;
    state.b_at(1) = phase * phase * c1 * s2;
    state.b_at(-1) =
        -1i * spec.beta * std::conj(state.c_at(0)) * state.c_at(-1) * state.b_at(0);
    state.c_at(1) =
        -1i * spec.beta * std::conj(state.b_at(0)) * state.b_at(1) * state.c_at(0);
  } else {
    // Doppler selectivity keeps the second pulse from driving |2,k> -> |1,-q>:
    // b_0 stays untouched and c_{-1} = b_{-1} = 0.
    state.c_at(0) = c1 * c2;
    state.b_at(0) = phase * s1;
    state.b_at(1) = phase * phase * c1 * s2;
    state.c_at(1) =
        -1i * spec.beta * std::conj(state.b_at(0)) * state.b_at(1) * state.c_at(0);
  }
  return state;
}

namespace {

constexpr std::complex<double> imag_unit{0.0, 1.0};

// Interleaved real layout: complex variable k occupies entries (2k, 2k+1).
// Stiff path: a_d, a_r, b_-n..b_n, c_-n..c_n, then nu_d, nu_r, t.
// Adiabatic path: b, c, then nu_d, nu_r (photons per atom).

std::complex<double> get_c(const Eigen::VectorXd& y, int k) {
  return {y[2 * k], y[2 * k + 1]};
}
void set_c(Eigen::VectorXd& y, int k, std::complex<double> v) {
  y[2 * k] = v.real();
  y[2 * k + 1] = v.imag();
}

// 2x2 block of a complex-linear map  f = w z.
void add_linear_block(Eigen::MatrixXd& jac, int row, int col, std::complex<double> w) {
  jac(2 * row, 2 * col) += w.real();
  jac(2 * row, 2 * col + 1) += -w.imag();
  jac(2 * row + 1, 2 * col) += w.imag();
  jac(2 * row + 1, 2 * col + 1) += w.real();
}

// 2x2 block of a conjugate-linear map  f = w conj(z).
void add_conjugate_block(Eigen::MatrixXd& jac, int row, int col, std::complex<double> w) {
  jac(2 * row, 2 * col) += w.real();
  jac(2 * row, 2 * col + 1) += w.imag();
  jac(2 * row + 1, 2 * col) += w.imag();
  jac(2 * row + 1, 2 * col + 1) += -w.real();
}

struct LadderIndices {
  int m;        // 2 n_max + 1
  int b0, c0;   // complex index of the first b / c ladder entry
  int n_real;   // total real dimension
};

// Full damped equations in dimensionless time  t~ = g_n t.
class StiffSystem {
 public:
  StiffSystem(const RetrievalParams& p, int n_max)
      : m_(2 * n_max + 1), kappa_d_(p.gamma_d / p.g_n), kappa_r_(p.gamma_r / p.g_n),
        phases_(p.use_phase_factors), delta_d_(m_), delta_r_(0.0) {
    for (int i = 0; i < m_; ++i) {
      const int n = i - n_max;
      delta_d_[i] = (p.delta_d - 4.0 * n * p.omega_r) / p.g_n;
    }
    delta_r_ = (p.delta_r + 2.0 * p.omega_r) / p.g_n;
  }

  LadderIndices layout() const { return {m_, 2, 2 + m_, 2 * (2 + 2 * m_) + 3}; }
  int idx_nu_d() const { return 2 * (2 + 2 * m_); }
  int idx_time() const { return idx_nu_d() + 2; }

  void pack(const MeanFieldState& s, Eigen::VectorXd& y) const {
    y.setZero(layout().n_real);
    set_c(y, 0, s.a_d);
    set_c(y, 1, s.a_r);
    for (int i = 0; i < m_; ++i) {
      set_c(y, 2 + i, s.b[i]);
      set_c(y, 2 + m_ + i, s.c[i]);
    }
    y[idx_nu_d()] = s.n_d;
    y[idx_nu_d() + 1] = s.n_r;
    y[idx_time()] = 0.0;
  }

  void unpack(const Eigen::VectorXd& y, MeanFieldState& s) const {
    s.a_d = get_c(y, 0);
    s.a_r = get_c(y, 1);
    for (int i = 0; i < m_; ++i) {
      s.b[i] = get_c(y, 2 + i);
      s.c[i] = get_c(y, 2 + m_ + i);
    }
    s.n_d = y[idx_nu_d()];
    s.n_r = y[idx_nu_d() + 1];
  }

  // Photon tallies integrate N gamma |a|^2; in t~ units that is
  // N kappa |a|^2 per unit t~.
  void rhs(double atom_number, const Eigen::VectorXd& y, Eigen::VectorXd& dy) const {
    dy.setZero(y.size());
    const double t = y[idx_time()];
    const std::complex<double> a_d = get_c(y, 0);
    const std::complex<double> a_r = get_c(y, 1);
    const std::complex<double> pr = phases_ ? std::exp(-imag_unit * delta_r_ * t)
                                            : std::complex<double>(1.0, 0.0);

    std::complex<double> s_sum = 0.0, t_sum = 0.0;
    for (int i = 0; i < m_; ++i) {
      const std::complex<double> b_i = get_c(y, 2 + i);
      const std::complex<double> c_i = get_c(y, 2 + m_ + i);
      t_sum += std::conj(c_i) * b_i;
      if (i + 1 < m_) {
        const std::complex<double> c_up = get_c(y, 2 + m_ + i + 1);
        const std::complex<double> pd = phase_d(i, t);
        s_sum += std::conj(c_up) * b_i * std::conj(pd);
      }
    }
    t_sum *= pr;

    set_c(dy, 0, -0.5 * kappa_d_ * a_d + s_sum);
    set_c(dy, 1, -0.5 * kappa_r_ * a_r + t_sum);

    for (int i = 0; i < m_; ++i) {
      const std::complex<double> b_i = get_c(y, 2 + i);
      const std::complex<double> c_i = get_c(y, 2 + m_ + i);
      std::complex<double> db = -a_r * c_i * std::conj(pr);
      if (i + 1 < m_) {
        db -= a_d * get_c(y, 2 + m_ + i + 1) * phase_d(i, t);
      }
      std::complex<double> dc = std::conj(a_r) * b_i * pr;
      if (i - 1 >= 0) {
        dc += std::conj(a_d) * get_c(y, 2 + i - 1) * std::conj(phase_d(i - 1, t));
      }
      set_c(dy, 2 + i, db);
      set_c(dy, 2 + m_ + i, dc);
    }
    dy[idx_nu_d()] = atom_number * kappa_d_ * std::norm(a_d);
    dy[idx_nu_d() + 1] = atom_number * kappa_r_ * std::norm(a_r);
    dy[idx_time()] = 1.0;
  }

  void jacobian(double atom_number, const Eigen::VectorXd& y, Eigen::MatrixXd& jac) const {
    jac.setZero(y.size(), y.size());
    const double t = y[idx_time()];
    const int tcol = idx_time();
    const std::complex<double> a_d = get_c(y, 0);
    const std::complex<double> a_r = get_c(y, 1);
    const std::complex<double> pr = phases_ ? std::exp(-imag_unit * delta_r_ * t)
                                            : std::complex<double>(1.0, 0.0);

    // a_d row
    add_linear_block(jac, 0, 0, {-0.5 * kappa_d_, 0.0});
    std::complex<double> dts = 0.0;
    for (int i = 0; i + 1 < m_; ++i) {
      const std::complex<double> b_i = get_c(y, 2 + i);
      const std::complex<double> c_up = get_c(y, 2 + m_ + i + 1);
      const std::complex<double> pdc = std::conj(phase_d(i, t));
      add_linear_block(jac, 0, 2 + i, std::conj(c_up) * pdc);
      add_conjugate_block(jac, 0, 2 + m_ + i + 1, b_i * pdc);
      if (phases_) dts += std::conj(c_up) * b_i * (-imag_unit * delta_d_[i]) * pdc;
    }
    if (phases_) {
      jac(0, tcol) += dts.real();
      jac(1, tcol) += dts.imag();
    }

    // a_r row
    add_linear_block(jac, 1, 1, {-0.5 * kappa_r_, 0.0});
    std::complex<double> dtt = 0.0;
    for (int i = 0; i < m_; ++i) {
      const std::complex<double> b_i = get_c(y, 2 + i);
      const std::complex<double> c_i = get_c(y, 2 + m_ + i);
      add_linear_block(jac, 1, 2 + i, std::conj(c_i) * pr);
      add_conjugate_block(jac, 1, 2 + m_ + i, b_i * pr);
      if (phases_) dtt += std::conj(c_i) * b_i * (-imag_unit * delta_r_) * pr;
    }
    if (phases_) {
      jac(2, tcol) += dtt.real();
      jac(3, tcol) += dtt.imag();
    }

    // ladder rows
    for (int i = 0; i < m_; ++i) {
      const int rb = 2 + i;
      const int rc = 2 + m_ + i;
      const std::complex<double> b_i = get_c(y, 2 + i);
      const std::complex<double> c_i = get_c(y, 2 + m_ + i);

      // db_i = -(a_d c_{i+1} pd_i + a_r c_i pr)
      add_linear_block(jac, rb, 1, -c_i * std::conj(pr));
      add_linear_block(jac, rb, 2 + m_ + i, -a_r * std::conj(pr));
      std::complex<double> dtb =
          phases_ ? -a_r * c_i * (imag_unit * delta_r_) * std::conj(pr) : 0.0;
      if (i + 1 < m_) {
        const std::complex<double> c_up = get_c(y, 2 + m_ + i + 1);
        const std::complex<double> pd = phase_d(i, t);
        add_linear_block(jac, rb, 0, -c_up * pd);
        add_linear_block(jac, rb, 2 + m_ + i + 1, -a_d * pd);
        if (phases_) dtb -= a_d * c_up * (imag_unit * delta_d_[i]) * pd;
      }
      if (phases_) {
        jac(2 * rb, tcol) += dtb.real();
        jac(2 * rb + 1, tcol) += dtb.imag();
      }

      // dc_i = conj(a_d) b_{i-1} conj(pd_{i-1}) + conj(a_r) b_i pr
      add_conjugate_block(jac, rc, 1, b_i * pr);
      add_linear_block(jac, rc, 2 + i, std::conj(a_r) * pr);
      std::complex<double> dtc =
          phases_ ? std::conj(a_r) * b_i * (-imag_unit * delta_r_) * pr : 0.0;
      if (i - 1 >= 0) {
        const std::complex<double> b_dn = get_c(y, 2 + i - 1);
        const std::complex<double> pdc = std::conj(phase_d(i - 1, t));
        add_conjugate_block(jac, rc, 0, b_dn * pdc);
        add_linear_block(jac, rc, 2 + i - 1, std::conj(a_d) * pdc);
        if (phases_) dtc += std::conj(a_d) * b_dn * (-imag_unit * delta_d_[i - 1]) * pdc;
      }
      if (phases_) {
        jac(2 * rc, tcol) += dtc.real();
        jac(2 * rc + 1, tcol) += dtc.imag();
      }
    }

    // photon tallies
    const int nd = idx_nu_d();
    jac(nd, 0) = 2.0 * atom_number * kappa_d_ * a_d.real();
    jac(nd, 1) = 2.0 * atom_number * kappa_d_ * a_d.imag();
    jac(nd + 1, 2) = 2.0 * atom_number * kappa_r_ * a_r.real();
    jac(nd + 1, 3) = 2.0 * atom_number * kappa_r_ * a_r.imag();
    // time row is constant 1; all derivatives zero
  }

 private:
  std::complex<double> phase_d(int i, double t) const {
    if (!phases_) return {1.0, 0.0};
    return std::exp(imag_unit * delta_d_[i] * t);
  }

  int m_;
  double kappa_d_, kappa_r_;
  bool phases_;
  Eigen::VectorXd delta_d_;
  double delta_r_;
};

// Light modes eliminated: a_d = (2/kappa_d) S, a_r = (2/kappa_r) T, advanced in
// t^ = (g_n^2/gamma_d) t so one emission timescale is one unit.
class AdiabaticSystem {
 public:
  AdiabaticSystem(const RetrievalParams& p, int n_max)
      : m_(2 * n_max + 1), rho_(p.gamma_d / p.gamma_r), phases_(p.use_phase_factors),
        kappa_d_(p.gamma_d / p.g_n), kappa_r_(p.gamma_r / p.g_n), delta_d_(m_) {
    const double hat = p.gamma_d / (p.g_n * p.g_n);  // seconds per t^ unit
    for (int i = 0; i < m_; ++i) {
      const int n = i - n_max;
      delta_d_[i] = (p.delta_d - 4.0 * n * p.omega_r) * hat;
    }
    delta_r_ = (p.delta_r + 2.0 * p.omega_r) * hat;
  }

  int n_real() const { return 4 * m_ + 2; }

  void pack(const MeanFieldState& s, Eigen::VectorXd& y) const {
    y.setZero(n_real());
    for (int i = 0; i < m_; ++i) {
      set_c(y, i, s.b[i]);
      set_c(y, m_ + i, s.c[i]);
    }
    y[4 * m_] = s.n_d;
    y[4 * m_ + 1] = s.n_r;
  }

  void unpack(const Eigen::VectorXd& y, MeanFieldState& s) const {
    for (int i = 0; i < m_; ++i) {
      s.b[i] = get_c(y, i);
      s.c[i] = get_c(y, m_ + i);
    }
    s.n_d = y[4 * m_];
    s.n_r = y[4 * m_ + 1];
    // eliminated light amplitudes, for trajectory output
    s.a_d = (2.0 / kappa_d_) * s.pathway_sum_down();
    s.a_r = (2.0 / kappa_r_) * s.pathway_sum_right();
  }

  void rhs(double atom_number, double t, const Eigen::VectorXd& y,
           Eigen::VectorXd& dy) const {
    dy.setZero(y.size());
    const std::complex<double> pr = phases_ ? std::exp(-imag_unit * delta_r_ * t)
                                            : std::complex<double>(1.0, 0.0);
    std::complex<double> s_sum = 0.0, t_sum = 0.0;
    for (int i = 0; i < m_; ++i) {
      const std::complex<double> b_i = get_c(y, i);
      const std::complex<double> c_i = get_c(y, m_ + i);
      t_sum += std::conj(c_i) * b_i;
      if (i + 1 < m_) {
        s_sum += std::conj(get_c(y, m_ + i + 1)) * b_i * std::conj(phase_d(i, t));
      }
    }
    t_sum *= pr;

    for (int i = 0; i < m_; ++i) {
      const std::complex<double> b_i = get_c(y, i);
      const std::complex<double> c_i = get_c(y, m_ + i);
      std::complex<double> db = -2.0 * rho_ * t_sum * c_i * std::conj(pr);
      if (i + 1 < m_) {
        db -= 2.0 * s_sum * get_c(y, m_ + i + 1) * phase_d(i, t);
      }
      std::complex<double> dc = 2.0 * rho_ * std::conj(t_sum) * b_i * pr;
      if (i - 1 >= 0) {
        dc += 2.0 * std::conj(s_sum) * get_c(y, i - 1) * std::conj(phase_d(i - 1, t));
      }
      set_c(dy, i, db);
      set_c(dy, m_ + i, dc);
    }
    dy[4 * m_] = 4.0 * atom_number * std::norm(s_sum);
    dy[4 * m_ + 1] = 4.0 * rho_ * atom_number * std::norm(t_sum);
  }

 private:
  std::complex<double> phase_d(int i, double t) const {
    if (!phases_) return {1.0, 0.0};
    return std::exp(imag_unit * delta_d_[i] * t);
  }

  int m_;
  double rho_;
  bool phases_;
  double kappa_d_, kappa_r_;
  Eigen::VectorXd delta_d_;
  double delta_r_;
};

void check_cutoff(const MeanFieldState& s) {
  if (s.edge_population() > cutoff_guard_threshold) {
    throw CutoffOverflow("population reached the momentum-ladder cutoff (|n| = " +
                         std::to_string(s.n_max()) + ")");
  }
}

// Advances `state` by dt seconds, reusing the adaptive step h across calls.
class Propagator {
 public:
  Propagator(const RetrievalParams& params, int n_max)
      : params_(params), stiff_(params, n_max), adiabatic_(params, n_max),
        use_stiff_(params.integrator == IntegratorKind::StiffAdaptive) {
    opts_.rel_tol = params.rel_tol;
    opts_.abs_tol = params.abs_tol;
    if (use_stiff_) {
      time_scale_ = 1.0 / params.g_n;  // seconds per t~ unit
    } else {
      time_scale_ = params.emission_timescale();  // seconds per t^ unit
    }
  }

  void start(const MeanFieldState& s) {
    if (use_stiff_) {
      stiff_.pack(s, y_);
    } else {
      adiabatic_.pack(s, y_);
    }
    t_ = 0.0;
    h_ = 0.0;
  }

  void advance(double dt_seconds) {
    const double t1 = t_ + dt_seconds / time_scale_;
    const double n_atoms = params_.atom_number;
    if (use_stiff_) {
      auto rhs = [this, n_atoms](double, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        stiff_.rhs(n_atoms, y, dy);
      };
      auto jac = [this, n_atoms](double, const Eigen::VectorXd& y, Eigen::MatrixXd& J) {
        stiff_.jacobian(n_atoms, y, J);
      };
      integrate_rosenbrock(rhs, jac, y_, t_, t1, h_, opts_);
    } else {
      auto rhs = [this, n_atoms](double t, const Eigen::VectorXd& y, Eigen::VectorXd& dy) {
        adiabatic_.rhs(n_atoms, t, y, dy);
      };
      integrate_dopri5(rhs, y_, t_, t1, h_, opts_);
    }
    t_ = t1;
  }

  MeanFieldState current(int n_max) const {
    MeanFieldState s(n_max);
    if (use_stiff_) {
      stiff_.unpack(y_, s);
    } else {
      adiabatic_.unpack(y_, s);
    }
    return s;
  }

 private:
  RetrievalParams params_;
  StiffSystem stiff_;
  AdiabaticSystem adiabatic_;
  bool use_stiff_;
  double time_scale_;
  OdeOptions opts_;
  Eigen::VectorXd y_;
  double t_ = 0.0;
  double h_ = 0.0;
};

}  // namespace

Trajectory evolve(const MeanFieldState& state, const RetrievalParams& params,
                  double t_end, double dt_record) {
  params.validate();
  if (!(t_end > 0.0)) throw DomainError("t_end must be positive");
  check_cutoff(state);

  Trajectory traj;
  traj.samples.push_back({0.0, state});
  if (params.g_n == 0.0) {
    // every right-hand side vanishes; the state is constant
    traj.samples.push_back({t_end, state});
    return traj;
  }
  if (!(dt_record > 0.0) || dt_record > t_end) dt_record = t_end;

  Propagator prop(params, state.n_max());
  prop.start(state);
  double t = 0.0;
  while (t < t_end) {
    const double dt = std::min(dt_record, t_end - t);
    prop.advance(dt);
    t += dt;
    MeanFieldState s = prop.current(state.n_max());
    check_cutoff(s);
    traj.samples.push_back({t, s});
  }
  return traj;
}

MeanFieldState retrieve_fixed_horizon(const MeanFieldState& state,
                                      const RetrievalParams& params,
                                      double horizon_timescales) {
  params.validate();
  check_cutoff(state);
  if (params.g_n == 0.0) return state;
  Propagator prop(params, state.n_max());
  prop.start(state);
  prop.advance(horizon_timescales * params.emission_timescale());
  MeanFieldState s = prop.current(state.n_max());
  check_cutoff(s);
  return s;
}

MeanFieldState retrieve_to_quiescence(const MeanFieldState& state,
                                      const RetrievalParams& params, double rel_change,
                                      double cap_timescales) {
  params.validate();
  check_cutoff(state);
  if (params.g_n == 0.0) return state;
  const double t_e = params.emission_timescale();
  Propagator prop(params, state.n_max());
  prop.start(state);
  MeanFieldState s = prop.current(state.n_max());
  double elapsed = 0.0;
  while (elapsed < cap_timescales) {
    const double before = s.n_d + s.n_r;
    prop.advance(t_e);
    elapsed += 1.0;
    s = prop.current(state.n_max());
    check_cutoff(s);
    const double after = s.n_d + s.n_r;
    if (after > 0.0 && (after - before) / after < rel_change) break;
  }
  return s;
}

VisibilityScan visibility_scan(const InitialConditionSpec& base,
                               const RetrievalParams& params,
                               const std::vector<double>& chi_grid,
                               double horizon_timescales) {
  const int n = static_cast<int>(chi_grid.size());
  if (n < 16) throw DomainError("chi grid needs at least 16 points");
  const auto [lo, hi] = std::minmax_element(chi_grid.begin(), chi_grid.end());
  if (*hi - *lo < two_pi * (1.0 - 2.0 / n)) {
    throw DomainError("chi grid must span a full 2 pi period");
  }

  VisibilityScan scan;
  scan.chi = chi_grid;
  scan.n_d.reserve(n);
  for (double chi : chi_grid) {
    InitialConditionSpec spec = base;
    spec.chi = chi;
    const MeanFieldState final_state =
        retrieve_fixed_horizon(build_initial_state(spec), params, horizon_timescales);
    scan.n_d.push_back(final_state.n_d);
  }

  // Dominant integer harmonic of the pattern.
  double mean = 0.0;
  for (double v : scan.n_d) mean += v;
  mean /= n;
  int best_k = 1;
  double best_amp = -1.0;
  double best_cos = 0.0, best_sin = 0.0;
  for (int k = 1; k <= n / 2 - 1; ++k) {
    double ac = 0.0, as = 0.0;
    for (int i = 0; i < n; ++i) {
      ac += (scan.n_d[i] - mean) * std::cos(k * chi_grid[i]);
      as += (scan.n_d[i] - mean) * std::sin(k * chi_grid[i]);
    }
    ac *= 2.0 / n;
    as *= 2.0 / n;
    const double amp = std::hypot(ac, as);
    if (amp > best_amp) {
      best_amp = amp;
      best_k = k;
      best_cos = ac;
      best_sin = as;
    }
  }
  scan.harmonic = best_k;

  DataSeries data;
  data.t = Eigen::Map<const Eigen::VectorXd>(chi_grid.data(), n);
  data.y = Eigen::Map<const Eigen::VectorXd>(scan.n_d.data(), n);
  const int k = best_k;
  ModelFunction model = [k](double chi, const Eigen::VectorXd& p) {
    return p[0] * (1.0 + p[1] * std::cos(k * chi - p[2]));
  };
  Eigen::Vector3d init(mean, best_amp / std::max(mean, 1e-300),
                       std::atan2(best_sin, best_cos));
  FitResult fit = least_squares(model, data, init);
  if (!fit.converged) {
    throw FitFailure("sinusoid fit of the interference pattern did not converge");
  }
  fit.names = {"amplitude", "visibility", "phase"};
  scan.fit = fit;
  scan.amplitude = fit.params[0];
  double v = fit.params[1];
  double phase = fit.params[2];
  if (v < 0.0) {
    v = -v;
    phase += pi;
  }
  scan.visibility = std::min(v, 1.0);
  scan.phase = std::remainder(phase, two_pi);
  return scan;
}

std::array<GateRow, 4> gate_truth_table(const InitialConditionSpec& base,
                                        const RetrievalParams& params,
                                        double horizon_timescales) {
  std::array<GateRow, 4> rows;
  const std::array<std::pair<bool, bool>, 4> inputs = {
      {{false, false}, {true, false}, {false, true}, {true, true}}};
  for (int i = 0; i < 4; ++i) {
    InitialConditionSpec spec = base;
    spec.scheme = PreparationScheme::BasicGate;
    spec.signal1_on = inputs[i].first;
    spec.signal2_on = inputs[i].second;
    const MeanFieldState final_state =
        retrieve_fixed_horizon(build_initial_state(spec), params, horizon_timescales);
    rows[i] = {inputs[i].first, inputs[i].second, final_state.n_d, final_state.n_r};
  }
  return rows;
}

PhaseFactorReport phase_factor_validation(const InitialConditionSpec& spec,
                                          const RetrievalParams& params, double t_end) {
  PhaseFactorReport report{};
  report.regime_warning = !(params.g_n > 100.0 * std::fabs(params.omega_r));

  RetrievalParams with = params;
  with.use_phase_factors = true;
  RetrievalParams without = params;
  without.use_phase_factors = false;

  const MeanFieldState s0 = build_initial_state(spec);
  report.n_d_with_phases = evolve(s0, with, t_end, t_end).final_state().n_d;
  report.n_d_unity = evolve(s0, without, t_end, t_end).final_state().n_d;
  report.relative_deviation =
      std::fabs(report.n_d_with_phases - report.n_d_unity) /
      std::max(report.n_d_unity, 1e-300);
  return report;
}

std::complex<double> short_pulse_interference_rate(const MeanFieldState& state,
                                                   double g_n) {
  return g_n * (std::conj(state.c_at(0)) * state.b_at(-1) +
                std::conj(state.c_at(1)) * state.b_at(0));
}

}  // namespace becgate
