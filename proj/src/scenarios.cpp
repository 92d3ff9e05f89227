#include "becgate/scenarios.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "becgate/beam_optics.hpp"
#include "becgate/csv.hpp"
#include "becgate/svg.hpp"
#include "becgate/synth.hpp"
#include "becgate/validate.hpp"

namespace fs = std::filesystem;

namespace becgate {

Scenario scenario_from_name(const std::string& name) {
  for (int i = 0; i <= static_cast<int>(Scenario::Validate); ++i) {
    if (name == scenario_name(static_cast<Scenario>(i))) return static_cast<Scenario>(i);
  }
  throw ConfigError("unknown scenario: " + name);
}

const char* scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::Growth: return "growth";
    case Scenario::Retrieval: return "retrieval";
    case Scenario::Interference: return "interference";
    case Scenario::Gate: return "gate";
    case Scenario::Rabi: return "rabi";
    case Scenario::FitGrowth: return "fit-growth";
    case Scenario::FitInterference: return "fit-interference";
    case Scenario::ReproduceFig2: return "reproduce-fig2";
    case Scenario::ReproduceFig3: return "reproduce-fig3";
    case Scenario::ReproduceFig4: return "reproduce-fig4";
    case Scenario::Validate: return "validate";
  }
  return "?";
}

std::vector<std::string> scenario_names() {
  std::vector<std::string> names;
  for (int i = 0; i <= static_cast<int>(Scenario::Validate); ++i) {
    names.push_back(scenario_name(static_cast<Scenario>(i)));
  }
  return names;
}

RetrievalParams scenario_retrieval_params(const ScenarioParams& params) {
  const PhysicalConstants constants = params.constants();
  const CloudGeometry cloud = params.cloud();
  const ThomasFermiCloud tf(cloud);
  LaserPulseSpec control3{params.p_c3(), params.w_control1(), params.delta3(), 0.0};
  const CouplingResult coupling =
      retrieval_coupling(control3, constants, tf, params.n_coupling);

  RetrievalParams rp;
  rp.g_n = coupling.g_n;
  rp.gamma_d = params.gamma_over_gn * rp.g_n;
  rp.gamma_r = cloud.aspect_ratio() * rp.gamma_d;
  rp.atom_number = params.n_coupling;
  rp.omega_r = recoil_quantities(constants).omega_r;
  rp.integrator = params.integrator;
  rp.validate();
  return rp;
}

GrowthModel scenario_growth_model(const ScenarioParams& params) {
  const PhysicalConstants constants = params.constants();
  const CloudGeometry cloud = params.cloud();
  const ThomasFermiCloud tf(cloud);
  const double tau = growth_timescale(constants, tf);
  const SaturationTimes ts = saturation_times(constants, cloud);
  return GrowthModel(tau, ts.t0, cloud.aspect_ratio(), 0.0);
}

namespace {

// Collects the files a scenario writes and emits the manifest at the end.
class OutputSink {
 public:
  OutputSink(const ScenarioConfig& config) : config_(config) {
    fs::create_directories(config.output_dir);
  }

  std::string path(const std::string& name) {
    files_.push_back(name);
    return (fs::path(config_.output_dir) / name).string();
  }

  void write_manifest() {
    const fs::path manifest_path = fs::path(config_.output_dir) / "manifest.txt";
    std::ofstream out(manifest_path);
    if (!out) throw ConfigError("cannot write manifest: " + manifest_path.string());
    out << "# becgate run manifest\n";
    out << "# scenario: " << scenario_name(config_.scenario) << "\n";
    out << "# seed: " << config_.seed << "\n";
    out << "# this file parses as a --config input\n";
    config_.params.dump(out);
    for (const std::string& name : files_) {
      out << "# output: " << name << " fnv1a64:"
          << file_hash_hex((fs::path(config_.output_dir) / name).string()) << "\n";
    }
  }

 private:
  ScenarioConfig config_;
  std::vector<std::string> files_;
};

void write_fit_result_text(const std::string& path, const FitResult& fit) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write fit result: " + path);
  for (size_t i = 0; i < fit.names.size(); ++i) {
    out << fit.names[i] << " = " << format_double(fit.params[static_cast<Eigen::Index>(i)])
        << "\n";
    out << fit.names[i]
        << "_uncertainty = " << format_double(fit.uncertainties[static_cast<Eigen::Index>(i)])
        << "\n";
  }
  out << "residual_norm = " << format_double(fit.residual_norm) << "\n";
  out << "iterations = " << fit.iterations << "\n";
  out << "converged = " << (fit.converged ? 1 : 0) << "\n";
}

InitialConditionSpec scenario_initial_spec(const ScenarioParams& params,
                                           PreparationScheme scheme) {
  InitialConditionSpec spec;
  spec.theta1 = params.theta1();
  spec.theta2 = params.theta2();
  spec.beta = params.beta;
  spec.scheme = scheme;
  spec.n_max = params.cutoff;
  const double omega_r = recoil_quantities(params.constants()).omega_r;
  spec.chi = -2.0 * omega_r * params.t_fwm();
  return spec;
}

void run_growth(const ScenarioConfig& config, OutputSink& sink, const std::string& csv_name) {
  const GrowthModel model = scenario_growth_model(config.params);
  std::ofstream out(sink.path(csv_name));
  CsvWriter csv(out, {"t_s", "n_q"});
  std::vector<double> ts, ns;
  const double dt = config.params.fig2_dt();
  for (double t = 0.0; t <= config.params.fig2_t_max() + 0.5 * dt; t += dt) {
    const double n = fwm_population(t, model);
    csv.row({t, n});
    ts.push_back(t);
    ns.push_back(n);
  }
  if (config.emit_svg) {
    write_line_plot_svg(sink.path(csv_name.substr(0, csv_name.size() - 4) + ".svg"),
                        {{ts, ns, "#1f77b4"}}, "t (s)", "N_q",
                        "four-wave-mixing population growth");
  }
}

void run_retrieval(const ScenarioConfig& config, OutputSink& sink) {
  const RetrievalParams rp = scenario_retrieval_params(config.params);
  const InitialConditionSpec spec =
      scenario_initial_spec(config.params, PreparationScheme::Extended);
  const double t_end = config.params.horizon_timescales * rp.emission_timescale();
  const Trajectory traj = evolve(build_initial_state(spec), rp, t_end, t_end / 200.0);
  std::ofstream out(sink.path("trajectory.csv"));
  write_trajectory_csv(out, traj);
  if (config.emit_svg) {
    std::vector<double> ts, nd;
    for (const auto& s : traj.samples) {
      ts.push_back(s.t);
      nd.push_back(s.state.n_d);
    }
    write_line_plot_svg(sink.path("trajectory.svg"), {{ts, nd, "#1f77b4"}}, "t (s)", "N_d",
                        "retrieved photons, downward mode");
  }
}

void run_interference(const ScenarioConfig& config, OutputSink& sink) {
  const RetrievalParams rp = scenario_retrieval_params(config.params);
  const InitialConditionSpec spec =
      scenario_initial_spec(config.params, PreparationScheme::Extended);
  std::vector<double> grid(config.params.chi_points);
  for (size_t i = 0; i < grid.size(); ++i) grid[i] = two_pi * i / grid.size();
  const VisibilityScan scan =
      visibility_scan(spec, rp, grid, config.params.horizon_timescales);

  std::ofstream out(sink.path("interference.csv"));
  CsvWriter csv(out, {"chi_rad", "n_d"});
  for (size_t i = 0; i < grid.size(); ++i) csv.row({scan.chi[i], scan.n_d[i]});

  FitResult annotated = scan.fit;
  annotated.names = {"amplitude", "visibility", "phase_rad"};
  write_fit_result_text(sink.path("interference_fit.txt"), annotated);
  std::cout << "visibility V = " << scan.visibility << " (harmonic " << scan.harmonic
            << ")\n";
  if (config.emit_svg) {
    write_line_plot_svg(sink.path("interference.svg"), {{scan.chi, scan.n_d, "#1f77b4"}},
                        "chi (rad)", "N_d", "interference pattern");
  }
}

void run_gate(const ScenarioConfig& config, OutputSink& sink, const std::string& csv_name) {
  const RetrievalParams rp = scenario_retrieval_params(config.params);
  const InitialConditionSpec spec =
      scenario_initial_spec(config.params, PreparationScheme::BasicGate);
  const auto rows = gate_truth_table(spec, rp, config.params.horizon_timescales);
  std::ofstream out(sink.path(csv_name));
  CsvWriter csv(out, {"signal1", "signal2", "n_d", "n_r"});
  std::vector<std::string> labels;
  std::vector<double> values;
  for (const GateRow& row : rows) {
    csv.row({row.signal1 ? 1.0 : 0.0, row.signal2 ? 1.0 : 0.0, row.n_d, row.n_r});
    labels.push_back(std::string(row.signal1 ? "on" : "off") + "/" +
                     (row.signal2 ? "on" : "off"));
    values.push_back(row.n_d);
    std::cout << labels.back() << ": N_d = " << row.n_d << "\n";
  }
  if (config.emit_svg) {
    write_bar_plot_svg(sink.path(csv_name.substr(0, csv_name.size() - 4) + ".svg"), labels,
                       values, "N_d", "AND gate truth table");
  }
}

void run_rabi(const ScenarioConfig& config, OutputSink& sink) {
  const ScenarioParams& p = config.params;
  const PhysicalConstants constants = p.constants();
  const CloudGeometry cloud = p.cloud();
  const ThomasFermiCloud tf(cloud);

  const LaserPulseSpec s1{p.p_s1(), p.w_signal(), p.delta1(), p.pulse1_duration()};
  const LaserPulseSpec c1{p.p_c1(), p.w_control1(), p.delta1(), p.pulse1_duration()};
  const LaserPulseSpec s2{p.p_s2(), p.w_signal(), p.delta2(), p.pulse2_duration()};
  const LaserPulseSpec c2{p.p_c2(), p.w_control2(), p.delta2(), p.pulse2_duration()};
  const LaserPulseSpec c3{p.p_c3(), p.w_control1(), p.delta3(), 0.0};

  const CouplingResult k1 = pulse_coupling(s1, c1, constants);
  const CouplingResult k2 = pulse_coupling(s2, c2, constants);
  const CouplingResult k3 = retrieval_coupling(c3, constants, tf, p.n_coupling);
  const DampingRates damping = damping_rates(constants, cloud);
  const RecoilQuantities recoil = recoil_quantities(constants);
  const double omega_osc = oscillation_frequency(constants, p.beams());

  std::ofstream out(sink.path("rabi.csv"));
  CsvWriter csv(out, {"pulse", "i_signal_w_m2", "i_control_w_m2", "omega_cyc_s_rad_s",
                      "omega_cyc_c_rad_s", "omega_eff_rad_s", "area_pi"});
  csv.row({1, intensity(s1, constants).intensity, intensity(c1, constants).intensity,
           k1.omega_cyc_s, k1.omega_cyc_c, k1.omega_eff, k1.pulse_area / pi});
  csv.row({2, intensity(s2, constants).intensity, intensity(c2, constants).intensity,
           k2.omega_cyc_s, k2.omega_cyc_c, k2.omega_eff, k2.pulse_area / pi});
  csv.row({3, 0.0, intensity(c3, constants).intensity, k3.omega_cyc_s, k3.omega_cyc_c,
           k3.omega_eff, 0.0});

  std::ofstream summary(sink.path("rabi_summary.txt"));
  auto line = [&summary](const std::string& k, double v, const std::string& unit) {
    summary << k << " = " << format_double(v) << "  # " << unit << "\n";
    std::cout << k << " = " << v << " " << unit << "\n";
  };
  std::cout << "pulse areas: theta1 = " << k1.pulse_area / pi
            << " pi, theta2 = " << k2.pulse_area / pi << " pi\n";
  line("theta1_pi", k1.pulse_area / pi, "pulse area / pi");
  line("theta2_pi", k2.pulse_area / pi, "pulse area / pi");
  line("g", k3.g, "rad/s");
  line("g_n", k3.g_n, "rad/s");
  line("gamma_d", damping.gamma_d, "1/s");
  line("gamma_r", damping.gamma_r, "1/s");
  line("gamma_d_over_g_n", damping.gamma_d / k3.g_n, "");
  line("emission_timescale", damping.gamma_d / (k3.g_n * k3.g_n), "s");
  line("omega_r", recoil.omega_r, "rad/s");
  line("omega_oscillation", omega_osc, "rad/s");
}

void run_fit_growth(const ScenarioConfig& config, OutputSink& sink) {
  const ScenarioParams& p = config.params;
  DataSeries data;
  if (!p.fit_input_csv.empty()) {
    data = read_data_series_csv(p.fit_input_csv);
  } else {
    // reference best-fit curve as ground truth
    const GrowthModel truth(2.5e-6, 1.3e-3, p.cloud().aspect_ratio(), 0.0);
    SeededRng rng(config.seed);
    data = synth_growth_data(truth, p.fig2_t_max(), 101, p.fit_noise_frac, rng);
  }
  write_data_series_csv(sink.path("fitgrowth_data.csv"), data, "t_s", "n_q");
  const double epsilon = p.cloud().aspect_ratio();
  const FitResult fit = fit_growth(data, epsilon);
  write_fit_result_text(sink.path("fitgrowth_result.txt"), fit);
  std::cout << "fit: tau = " << fit.param("tau") << " s, t0 = " << fit.param("t0")
            << " s, offset = " << fit.param("n_offset")
            << (fit.converged ? "" : "  (NOT converged)") << "\n";

  const GrowthModel fitted(fit.param("tau"), fit.param("t0"), epsilon,
                           fit.param("n_offset"));
  std::ofstream out(sink.path("fitgrowth_curve.csv"));
  CsvWriter csv(out, {"t_s", "n_q_fit"});
  std::vector<double> ts, ys;
  for (Eigen::Index i = 0; i < data.t.size(); ++i) {
    const double y = fwm_population(data.t[i], fitted);
    csv.row({data.t[i], y});
    ts.push_back(data.t[i]);
    ys.push_back(y);
  }
  if (config.emit_svg) {
    std::vector<double> tv(data.t.data(), data.t.data() + data.t.size());
    std::vector<double> yv(data.y.data(), data.y.data() + data.y.size());
    write_line_plot_svg(sink.path("fitgrowth.svg"),
                        {{tv, yv, "#999999"}, {ts, ys, "#d62728"}}, "t (s)", "N_q",
                        "growth fit");
  }
}

void run_fit_interference(const ScenarioConfig& config, OutputSink& sink) {
  const ScenarioParams& p = config.params;
  DataSeries data;
  if (!p.fit_input_csv.empty()) {
    data = read_data_series_csv(p.fit_input_csv);
  } else {
    SeededRng rng(config.seed);
    data = synth_interference_data(InterferenceTruth{}, p.fig4_t_min(), p.fig4_t_max(),
                                   141, p.fit_noise_frac, rng);
  }
  write_data_series_csv(sink.path("fitinterference_data.csv"), data, "t_s", "n_d");
  const FitResult fit = fit_sinusoid_envelope(data);
  write_fit_result_text(sink.path("fitinterference_result.txt"), fit);
  std::cout << "fit: V = " << fit.param("visibility")
            << ", omega/2pi = " << fit.param("omega") / two_pi << " Hz"
            << (fit.converged ? "" : "  (NOT converged)") << "\n";

  std::ofstream out(sink.path("fitinterference_curve.csv"));
  CsvWriter csv(out, {"t_s", "n_d_fit"});
  for (Eigen::Index i = 0; i < data.t.size(); ++i) {
    const double t = data.t[i];
    const double arg = (t - fit.param("center")) / fit.param("width");
    const double y = fit.param("amplitude") * std::exp(-0.5 * arg * arg) *
                         (1.0 + fit.param("visibility") *
                                    std::cos(fit.param("omega") * (t - fit.param("t5")))) +
                     fit.param("y0");
    csv.row({t, y});
  }
}

void run_fig4(const ScenarioConfig& config, OutputSink& sink) {
  const ScenarioParams& p = config.params;
  const PhysicalConstants constants = p.constants();
  const RetrievalParams rp = scenario_retrieval_params(p);
  const SaturationTimes ts = saturation_times(constants, p.cloud());
  const double epsilon = p.cloud().aspect_ratio();
  // chi = -2 omega_r t with omega_r replaced by a quarter of the measured
  // interference frequency, so the plotted period matches the beam geometry.
  const double omega_osc = oscillation_frequency(constants, p.beams());

  InitialConditionSpec spec = scenario_initial_spec(p, PreparationScheme::Extended);
  std::ofstream out(sink.path("fig4.csv"));
  CsvWriter csv(out, {"t_s", "chi_rad", "envelope", "n_d_raw", "n_d"});
  std::vector<double> tv, yv;
  for (double t = p.fig4_t_min(); t <= p.fig4_t_max() + 0.5 * p.fig4_dt();
       t += p.fig4_dt()) {
    spec.chi = -0.5 * omega_osc * t;
    const MeanFieldState final_state =
        retrieve_fixed_horizon(build_initial_state(spec), rp, p.horizon_timescales);
    const double t2 = std::min({t, ts.t0, ts.t1});
    const double f = f_profile(t2 / ts.t0, epsilon);
    const double envelope = f * f * overlap_fraction(t / (2.0 * ts.t0));
    const double n_d = envelope * final_state.n_d;
    csv.row({t, spec.chi, envelope, final_state.n_d, n_d});
    tv.push_back(t);
    yv.push_back(n_d);
  }
  if (config.emit_svg) {
    write_line_plot_svg(sink.path("fig4.svg"), {{tv, yv, "#1f77b4"}}, "t_fwm (s)", "N_d",
                        "interference versus storage time");
  }
}

}  // namespace

int run_scenario(const ScenarioConfig& config) {
  OutputSink sink(config);
  int status = 0;
  switch (config.scenario) {
    case Scenario::Growth: run_growth(config, sink, "growth.csv"); break;
    case Scenario::ReproduceFig2: run_growth(config, sink, "fig2.csv"); break;
    case Scenario::Retrieval: run_retrieval(config, sink); break;
    case Scenario::Interference: run_interference(config, sink); break;
    case Scenario::Gate: run_gate(config, sink, "gate.csv"); break;
    case Scenario::ReproduceFig3: run_gate(config, sink, "fig3.csv"); break;
    case Scenario::Rabi: run_rabi(config, sink); break;
    case Scenario::FitGrowth: run_fit_growth(config, sink); break;
    case Scenario::FitInterference: run_fit_interference(config, sink); break;
    case Scenario::ReproduceFig4: run_fig4(config, sink); break;
    case Scenario::Validate: {
      const auto results = run_acceptance_criteria();
      status = print_acceptance_report(std::cout, results) == 0 ? 0 : 1;
      std::ofstream out(sink.path("validate.txt"));
      print_acceptance_report(out, results);
      break;
    }
  }
  sink.write_manifest();
  return status;
}

}  // namespace becgate
