// Scenario dispatch: each scenario resolves its parameters, runs the model,
// and writes CSV artifacts plus a manifest with content hashes.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "becgate/config.hpp"
#include "becgate/fwm.hpp"

namespace becgate {

enum class Scenario {
  Growth,
  Retrieval,
  Interference,
  Gate,
  Rabi,
  FitGrowth,
  FitInterference,
  ReproduceFig2,
  ReproduceFig3,
  ReproduceFig4,
  Validate,
};

Scenario scenario_from_name(const std::string& name);
const char* scenario_name(Scenario scenario);
std::vector<std::string> scenario_names();

struct ScenarioConfig {
  Scenario scenario = Scenario::Growth;
  ScenarioParams params;
  std::string output_dir = ".";
  uint64_t seed = 1;
  bool emit_svg = false;
};

// Retrieval parameters derived from the scenario knobs: g from the pulse-3
// coupling chain, g_N = g sqrt(n_coupling), gamma_d = gamma_over_gn * g_N,
// gamma_r from the cloud aspect ratio.
RetrievalParams scenario_retrieval_params(const ScenarioParams& params);

// Growth model predicted from the configuration (tau from the overlap
// integral, t0/t1 from the cloud sliding apart).
GrowthModel scenario_growth_model(const ScenarioParams& params);

// Runs the scenario and writes its files. Returns the process exit status:
// 0 on success; Validate returns 1 when a criterion fails. Throws ConfigError
// for configuration problems and other SimulationErrors for numerical ones.
int run_scenario(const ScenarioConfig& config);

}  // namespace becgate
