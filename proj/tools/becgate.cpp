// becgate: mean-field simulator of a light-pulse AND gate built on storage in
// a Bose-Einstein condensate, matter-wave four-wave mixing, and retrieval by
// Raman amplification of matter waves.
#include <CLI11.hpp>
#include <iostream>

#include "becgate/scenarios.hpp"

int main(int argc, char** argv) {
  CLI::App app{
      "becgate: BEC light-gate simulator (four-wave mixing, retrieval, fits, figures)"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output_dir = ".";
  uint64_t seed = 1;
  bool emit_svg = false;

  for (const std::string& name : becgate::scenario_names()) {
    CLI::App* sub = app.add_subcommand(name, "run the `" + name + "` scenario");
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--out", output_dir, "output directory (default: current)");
    sub->add_option("--seed", seed, "seed for synthetic-data scenarios");
    sub->add_flag("--svg", emit_svg, "also write SVG plots");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    becgate::ScenarioConfig config;
    config.scenario = becgate::scenario_from_name(app.get_subcommands().front()->get_name());
    if (!config_path.empty()) {
      config.params =
          becgate::ScenarioParams::from_config(becgate::KeyValueConfig::parse_file(config_path));
    }
    config.output_dir = output_dir;
    config.seed = seed;
    config.emit_svg = emit_svg;
    return becgate::run_scenario(config);
  } catch (const becgate::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const becgate::SimulationError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
