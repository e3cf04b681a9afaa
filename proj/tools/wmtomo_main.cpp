#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wmtomo/errors.hpp"
#include "wmtomo/experiment.hpp"
#include "wmtomo/version.hpp"

namespace {

struct CliOptions {
  std::optional<std::string> config;
  std::optional<std::string> target;
  std::vector<double> g;
  std::optional<std::string> mode;
  std::optional<double> sigma;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<std::string> out;
  std::optional<std::string> observable;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
  cmd->add_option("--config", opts.config, "JSON config file");
  cmd->add_option("--target", opts.target,
                  "bell1, bell2, hadamard, rx90, a basis label, or a matrix "
                  "file path");
  cmd->add_option("--g", opts.g, "coupling strength value(s)");
  cmd->add_option("--mode", opts.mode,
                  "FirstOrder, ExactCoupling, or CompiledCircuit");
  cmd->add_option("--sigma", opts.sigma, "readout noise std (enables noise)");
  cmd->add_option("--seed", opts.seed, "noise seed (needs a noise model)");
  cmd->add_option("--trials", opts.trials,
                  "Monte Carlo trials (needs a noise model)");
  cmd->add_option("--out", opts.out, "output file stem");
  cmd->add_option("--observable", opts.observable,
                  "Pauli word measured by sweeps");
}

wmtomo::cli::ExperimentConfig build_config(const std::string& task_name,
                                           const CliOptions& opts) {
  using wmtomo::cli::ExperimentConfig;
  const wmtomo::cli::Task task = wmtomo::cli::task_from_string(task_name);

  ExperimentConfig cfg;
  if (opts.config.has_value()) {
    cfg = wmtomo::cli::load_config(*opts.config);
    if (cfg.task != task) {
      throw wmtomo::ConfigError(
          "task", "config task '" + to_string(cfg.task) +
                      "' does not match the subcommand '" + task_name + "'");
    }
  }
  cfg.task = task;

  if (opts.target.has_value()) cfg.target = *opts.target;
  if (!opts.g.empty()) cfg.g_values = opts.g;
  if (opts.mode.has_value()) {
    cfg.mode = wmtomo::weakmeas::mode_from_string(*opts.mode);
  }
  if (opts.sigma.has_value()) {
    if (cfg.noise.has_value()) {
      cfg.noise->sigma = *opts.sigma;
    } else {
      wmtomo::noise::NoiseModel model;
      model.sigma = *opts.sigma;
      model.seed = wmtomo::cli::fallback_seed();
      model.trials = 1;
      cfg.noise = model;
    }
  }
  if (opts.seed.has_value()) {
    if (!cfg.noise.has_value()) {
      throw wmtomo::ConfigError("seed",
                                "no noise model configured (set --sigma)");
    }
    cfg.noise->seed = *opts.seed;
  }
  if (opts.trials.has_value()) {
    if (!cfg.noise.has_value()) {
      throw wmtomo::ConfigError("trials",
                                "no noise model configured (set --sigma)");
    }
    cfg.noise->trials = *opts.trials;
  }
  if (opts.out.has_value()) cfg.out = *opts.out;
  if (opts.observable.has_value()) cfg.observable = *opts.observable;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"weak-measurement direct tomography toolkit"};
  app.set_version_flag("--version", std::string("wmtomo ") + wmtomo::version);
  app.require_subcommand(1);

  CliOptions opts;
  for (const auto& [name, description] :
       {std::pair<const char*, const char*>{"dqst", "reconstruct a state"},
        {"dqpt", "reconstruct a process matrix"},
        {"sweep-g", "scan coupling strengths for one observable"},
        {"sweep-state", "scan superposition states at fixed coupling"},
        {"validate", "check the compiled sequences and schedules"}}) {
    add_common_options(app.add_subcommand(name, description), opts);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const std::string task_name = app.get_subcommands().front()->get_name();
    const wmtomo::cli::ExperimentConfig cfg = build_config(task_name, opts);
    return wmtomo::cli::run(cfg, std::cout);
  } catch (const wmtomo::Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << "\n";
    return 1;
  }
}
