#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wmtomo/noise.hpp"
#include "wmtomo/weak.hpp"

namespace wmtomo::cli {

enum class Task { Dqst, Dqpt, SweepG, SweepState, Validate };

std::string to_string(Task task);
Task task_from_string(const std::string& name);

// Everything needed to reproduce a run. The echo written into result files
// is exactly this structure.
struct ExperimentConfig {
  Task task = Task::Dqst;
  // bell1, bell2, hadamard, rx90, a basis label such as "00", or a path to a
  // matrix file (density matrix for state tasks, unitary for process tasks).
  std::string target;
  std::vector<double> g_values = {0.1};
  weakmeas::EvolutionMode mode = weakmeas::EvolutionMode::FirstOrder;
  std::optional<noise::NoiseModel> noise;
  std::string out = "wmtomo_result";
  // Observable for sweeps; sweep-state scans cos(t)|00> + sin(t)|10>.
  std::string observable = "ZI";
  std::vector<double> thetas;  // empty = n pi/20 for n = 0..10
};

// Seed used when a noise model omits one: the WMTOMO_SEED environment
// variable if set (must parse as a nonnegative integer), otherwise 0.
std::uint64_t fallback_seed();

// Reads a JSON config file. Field problems raise ConfigError naming the
// offending field.
ExperimentConfig load_config(const std::string& path);

// Executes the task, writes <out>.json (and <out>.csv for sweeps), and logs
// a human-readable summary. Returns the process exit code: 0 success,
// 1 failed validation checks, 3 projection non-convergence (files are still
// written). Config problems throw ConfigError; the caller maps them to 2.
int run(const ExperimentConfig& config, std::ostream& log);

}  // namespace wmtomo::cli
