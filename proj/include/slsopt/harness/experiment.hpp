#pragma once

#include "slsopt/harness/config.hpp"

#include <map>
#include <string>
#include <vector>

namespace slsopt {

struct ExperimentOutputs {
  std::vector<std::string> csv_paths;  // one per seed, in seed order
  std::string metadata_path;
};

/// Runs every seed of the experiment and writes one CSV per seed plus a
/// metadata file (the config echoed back with a format/version stamp). On
/// failure the partial outputs of this experiment are removed and the error
/// names the seed (and iteration, for a stepper abort).
ExperimentOutputs run_experiment(const ExperimentConfig& config);

/// In-memory variant used by tests and the verification suites.
RunTrace run_config_single_seed(const ExperimentConfig& config, std::uint64_t seed);

/// One sweep axis: a dotted config key and its values (as config text).
struct SweepAxis {
  std::string key;
  std::vector<std::string> values;
};

/// Expands the Cartesian product of the axes over the base config, ordered
/// lexicographically by key and then by value, and runs each grid point in
/// its own subdirectory. Returns the grid-point directory names in order.
std::vector<std::string> run_sweep(const ExperimentConfig& base, std::vector<SweepAxis> axes);

/// Applies `key = value` to a config (the same keys the config file accepts).
ExperimentConfig with_config_key(const ExperimentConfig& base, const std::string& key,
                                 const std::string& value);

}  // namespace slsopt
