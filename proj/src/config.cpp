#include "becgate/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "becgate/csv.hpp"

namespace becgate {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace

KeyValueConfig KeyValueConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_string(buffer.str(), path);
}

KeyValueConfig KeyValueConfig::parse_string(const std::string& text,
                                            const std::string& origin) {
  KeyValueConfig config;
  config.origin_ = origin;
  std::stringstream ss(text);
  std::string line;
  int line_no = 0;
  while (std::getline(ss, line)) {
    ++line_no;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) +
                        ": expected `key = value`");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key or value");
    }
    if (config.entries_.count(key)) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": duplicate key `" +
                        key + "`");
    }
    config.entries_[key] = {value, line_no, false};
  }
  return config;
}

const KeyValueConfig::Entry* KeyValueConfig::find(const std::string& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return nullptr;
  it->second.consumed = true;
  return &it->second;
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.count(key) != 0;
}

double KeyValueConfig::number(const std::string& key, double fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  try {
    size_t used = 0;
    const double v = std::stod(e->value, &used);
    if (used != e->value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError(origin_ + ":" + std::to_string(e->line) + ": `" + key +
                      "` is not a number: " + e->value);
  }
}

std::string KeyValueConfig::text(const std::string& key, const std::string& fallback) const {
  const Entry* e = find(key);
  return e ? e->value : fallback;
}

Eigen::Vector3d KeyValueConfig::triple(const std::string& key,
                                       const Eigen::Vector3d& fallback) const {
  const Entry* e = find(key);
  if (!e) return fallback;
  Eigen::Vector3d v;
  std::stringstream ss(e->value);
  std::string cell;
  int i = 0;
  while (std::getline(ss, cell, ',') && i < 3) {
    try {
      v[i++] = std::stod(cell);
    } catch (const std::exception&) {
      throw ConfigError(origin_ + ":" + std::to_string(e->line) + ": `" + key +
                        "` needs three comma-separated numbers");
    }
  }
  if (i != 3) {
    throw ConfigError(origin_ + ":" + std::to_string(e->line) + ": `" + key +
                      "` needs three comma-separated numbers");
  }
  return v;
}

void KeyValueConfig::reject_unknown_keys() const {
  for (const auto& [key, entry] : entries_) {
    if (!entry.consumed) {
      throw ConfigError(origin_ + ":" + std::to_string(entry.line) + ": unknown key `" +
                        key + "`");
    }
  }
}

ScenarioParams ScenarioParams::from_config(const KeyValueConfig& config) {
  ScenarioParams p;

  p.radii_um = config.triple("cloud.radii_um", p.radii_um);
  p.n_total = config.number("cloud.n_total", p.n_total);
  p.n_component_geomean = config.number("cloud.n_component_geomean", p.n_component_geomean);
  p.n_coupling = config.number("cloud.n_coupling", p.n_coupling);

  const std::string mode = config.text("beams.mode", "measured");
  if (mode == "rectangular") {
    p.rectangular_beams = true;
  } else if (mode != "measured") {
    throw ConfigError("beams.mode must be `measured` or `rectangular`");
  }
  p.q_sq_ratio = config.number("beams.q_sq_ratio", p.q_sq_ratio);
  p.qk_ratio = config.number("beams.qk_ratio", p.qk_ratio);

  p.theta1_pi = config.number("pulses.theta1_pi", p.theta1_pi);
  p.theta2_pi = config.number("pulses.theta2_pi", p.theta2_pi);
  p.t1_us = config.number("pulses.t1_us", p.t1_us);
  p.t2_us = config.number("pulses.t2_us", p.t2_us);
  p.beta = config.number("fwm.beta", p.beta);
  p.t_fwm_ms = config.number("fwm.t_fwm_ms", p.t_fwm_ms);

  p.gamma_over_gn = config.number("retrieval.gamma_over_gn", p.gamma_over_gn);
  p.cutoff = static_cast<int>(config.number("retrieval.cutoff", p.cutoff));
  if (p.cutoff < 2) throw ConfigError("retrieval.cutoff must be at least 2");
  const std::string integ = config.text("retrieval.integrator", "adiabatic");
  if (integ == "adiabatic") {
    p.integrator = IntegratorKind::AdiabaticElimination;
  } else if (integ == "stiff") {
    p.integrator = IntegratorKind::StiffAdaptive;
  } else {
    throw ConfigError("retrieval.integrator must be `adiabatic` or `stiff`");
  }
  p.horizon_timescales = config.number("retrieval.horizon_timescales", p.horizon_timescales);

  p.ps1_uw = config.number("laser.ps1_uw", p.ps1_uw);
  p.ps2_uw = config.number("laser.ps2_uw", p.ps2_uw);
  p.pc1_uw = config.number("laser.pc1_uw", p.pc1_uw);
  p.pc2_uw = config.number("laser.pc2_uw", p.pc2_uw);
  p.pc3_uw = config.number("laser.pc3_uw", p.pc3_uw);
  p.ws_mm = config.number("laser.ws_mm", p.ws_mm);
  p.wc1_mm = config.number("laser.wc1_mm", p.wc1_mm);
  p.wc2_mm = config.number("laser.wc2_mm", p.wc2_mm);
  p.delta1_mhz = config.number("laser.delta1_mhz", p.delta1_mhz);
  p.delta2_mhz = config.number("laser.delta2_mhz", p.delta2_mhz);
  p.delta3_mhz = config.number("laser.delta3_mhz", p.delta3_mhz);

  p.fig2_tmax_ms = config.number("grid.fig2_tmax_ms", p.fig2_tmax_ms);
  p.fig2_dt_us = config.number("grid.fig2_dt_us", p.fig2_dt_us);
  p.fig4_tmin_ms = config.number("grid.fig4_tmin_ms", p.fig4_tmin_ms);
  p.fig4_tmax_ms = config.number("grid.fig4_tmax_ms", p.fig4_tmax_ms);
  p.fig4_dt_us = config.number("grid.fig4_dt_us", p.fig4_dt_us);
  p.chi_points = static_cast<int>(config.number("scan.chi_points", p.chi_points));
  if (p.chi_points < 16) throw ConfigError("scan.chi_points must be at least 16");

  p.fit_input_csv = config.text("fit.input_csv", "");
  p.fit_noise_frac = config.number("fit.noise_frac", p.fit_noise_frac);

  config.reject_unknown_keys();
  return p;
}

CloudGeometry ScenarioParams::cloud() const {
  return CloudGeometry::with_equal_components(radii_um * 1e-6, n_total)
      .with_component_geomean(n_component_geomean);
}

BeamGeometry ScenarioParams::beams() const {
  if (rectangular_beams) return BeamGeometry::rectangular(constants());
  return BeamGeometry::measured(constants(), q_sq_ratio, qk_ratio);
}

void ScenarioParams::dump(std::ostream& out) const {
  auto kv = [&out](const std::string& key, double value, const std::string& si) {
    out << key << " = " << format_double(value);
    if (!si.empty()) out << "  # " << si;
    out << "\n";
  };
  const CloudGeometry cl = cloud();
  out << "cloud.radii_um = " << format_double(radii_um.x()) << ","
      << format_double(radii_um.y()) << "," << format_double(radii_um.z()) << "  # "
      << format_double(cl.radii().x()) << " " << format_double(cl.radii().y()) << " "
      << format_double(cl.radii().z()) << " m, aspect ratio "
      << format_double(cl.aspect_ratio()) << "\n";
  kv("cloud.n_total", n_total, "");
  kv("cloud.n_component_geomean", n_component_geomean, "");
  kv("cloud.n_coupling", n_coupling, "");
  out << "beams.mode = " << (rectangular_beams ? "rectangular" : "measured") << "\n";
  kv("beams.q_sq_ratio", q_sq_ratio,
     rectangular_beams ? "pinned to 2 in rectangular mode" : "");
  kv("beams.qk_ratio", qk_ratio, rectangular_beams ? "pinned to 0 in rectangular mode" : "");
  kv("pulses.theta1_pi", theta1_pi, format_double(theta1()) + " rad");
  kv("pulses.theta2_pi", theta2_pi, format_double(theta2()) + " rad");
  kv("pulses.t1_us", t1_us, format_double(pulse1_duration()) + " s");
  kv("pulses.t2_us", t2_us, format_double(pulse2_duration()) + " s");
  kv("fwm.beta", beta, "");
  kv("fwm.t_fwm_ms", t_fwm_ms, format_double(t_fwm()) + " s");
  kv("retrieval.gamma_over_gn", gamma_over_gn, "");
  kv("retrieval.cutoff", cutoff, "");
  out << "retrieval.integrator = "
      << (integrator == IntegratorKind::StiffAdaptive ? "stiff" : "adiabatic") << "\n";
  kv("retrieval.horizon_timescales", horizon_timescales, "");
  kv("laser.ps1_uw", ps1_uw, format_double(p_s1()) + " W");
  kv("laser.ps2_uw", ps2_uw, format_double(p_s2()) + " W");
  kv("laser.pc1_uw", pc1_uw, format_double(p_c1()) + " W");
  kv("laser.pc2_uw", pc2_uw, format_double(p_c2()) + " W");
  kv("laser.pc3_uw", pc3_uw, format_double(p_c3()) + " W");
  kv("laser.ws_mm", ws_mm, format_double(w_signal()) + " m");
  kv("laser.wc1_mm", wc1_mm, format_double(w_control1()) + " m");
  kv("laser.wc2_mm", wc2_mm, format_double(w_control2()) + " m");
  kv("laser.delta1_mhz", delta1_mhz, format_double(delta1()) + " rad/s");
  kv("laser.delta2_mhz", delta2_mhz, format_double(delta2()) + " rad/s");
  kv("laser.delta3_mhz", delta3_mhz, format_double(delta3()) + " rad/s");
  kv("grid.fig2_tmax_ms", fig2_tmax_ms, format_double(fig2_t_max()) + " s");
  kv("grid.fig2_dt_us", fig2_dt_us, format_double(fig2_dt()) + " s");
  kv("grid.fig4_tmin_ms", fig4_tmin_ms, format_double(fig4_t_min()) + " s");
  kv("grid.fig4_tmax_ms", fig4_tmax_ms, format_double(fig4_t_max()) + " s");
  kv("grid.fig4_dt_us", fig4_dt_us, format_double(fig4_dt()) + " s");
  kv("scan.chi_points", chi_points, "");
  if (!fit_input_csv.empty()) out << "fit.input_csv = " << fit_input_csv << "\n";
  kv("fit.noise_frac", fit_noise_frac, "");
}

}  // namespace becgate
