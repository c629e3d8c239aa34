#include "slsopt/harness/experiment.hpp"

#include "slsopt/harness/csv.hpp"
#include "slsopt/version.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace slsopt {

namespace fs = std::filesystem;

RunTrace run_config_single_seed(const ExperimentConfig& config, std::uint64_t seed) {
  config.validate();
  BuiltProblem built = build_problem(config.problem);

  RunConfig rc;
  rc.ls = config.ls;
  rc.opts = config.opts;
  rc.batch_size = config.batch_size;
  rc.seed = seed;
  rc.test_metric = built.test_metric;

  const int n = built.oracle ? built.oracle->components() : built.saddle->components();
  if (rc.batch_size > n)
    throw std::invalid_argument("config: batch_size exceeds the number of components");
  // smallest k with epoch_of(k) >= epochs
  rc.iterations = (config.epochs * static_cast<long>(n) + rc.batch_size - 1) / rc.batch_size;

  const std::uint64_t init_seed = derive_stream(seed, "init");
  if (built.oracle) {
    rc.w0 = built.oracle->initial_point(init_seed);
    return run(algorithm_from_name(config.algorithm), *built.oracle, rc);
  }
  if (algorithm_from_name(config.algorithm) != Algorithm::SegLipschitz)
    throw std::invalid_argument("saddle problems support only seg_lipschitz");
  rc.w0 = built.saddle->initial_point(init_seed);
  return run(*built.saddle, rc);
}

ExperimentOutputs run_experiment(const ExperimentConfig& config) {
  config.validate();
  fs::create_directories(config.out_dir);

  ExperimentOutputs outputs;
  try {
    for (const auto seed : config.seeds) {
      RunTrace trace;
      try {
        trace = run_config_single_seed(config, seed);
      } catch (const std::exception& e) {
        throw std::runtime_error("seed " + std::to_string(seed) + ": " + e.what());
      }
      const std::string path = (fs::path(config.out_dir) /
                                (config.name + "_seed" + std::to_string(seed) + ".csv"))
                                   .string();
      std::ofstream out(path);
      if (!out) throw std::runtime_error("cannot write '" + path + "'");
      write_csv(out, trace);
      outputs.csv_paths.push_back(path);
    }
    outputs.metadata_path =
        (fs::path(config.out_dir) / (config.name + "_meta.txt")).string();
    std::ofstream meta(outputs.metadata_path);
    if (!meta) throw std::runtime_error("cannot write '" + outputs.metadata_path + "'");
    meta << config.serialize();
    meta << "library_version = " << kVersion << "\n";
    meta << "platform = " << kPlatformNote << "\n";
  } catch (...) {
    for (const auto& p : outputs.csv_paths) {
      std::error_code ec;
      fs::remove(p, ec);
    }
    if (!outputs.metadata_path.empty()) {
      std::error_code ec;
      fs::remove(outputs.metadata_path, ec);
    }
    throw;
  }
  return outputs;
}

ExperimentConfig with_config_key(const ExperimentConfig& base, const std::string& key,
                                 const std::string& value) {
  // round-trip through the file format so every key accepts the same syntax
  return ExperimentConfig::parse(base.serialize() + key + " = " + value + "\n");
}

namespace {

std::string sanitize(const std::string& s) {
  std::string out = s;
  for (char& ch : out)
    if (ch == '.' || ch == '/' || ch == ' ') ch = '_';
  return out;
}

bool numeric_values(const std::vector<std::string>& vals) {
  for (const auto& v : vals) {
    try {
      parse_double(v);
    } catch (...) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> run_sweep(const ExperimentConfig& base, std::vector<SweepAxis> axes) {
  if (axes.empty()) throw std::invalid_argument("sweep: no axes given");
  std::sort(axes.begin(), axes.end(),
            [](const SweepAxis& a, const SweepAxis& b) { return a.key < b.key; });
  for (auto& axis : axes) {
    if (axis.values.empty()) throw std::invalid_argument("sweep: axis without values");
    if (numeric_values(axis.values)) {
      std::sort(axis.values.begin(), axis.values.end(), [](const auto& a, const auto& b) {
        return parse_double(a) < parse_double(b);
      });
    } else {
      std::sort(axis.values.begin(), axis.values.end());
    }
  }

  std::vector<std::string> grid_dirs;
  std::vector<std::size_t> idx(axes.size(), 0);
  while (true) {
    ExperimentConfig point = base;
    std::ostringstream dir_name;
    dir_name << base.name;
    for (std::size_t a = 0; a < axes.size(); ++a) {
      point = with_config_key(point, axes[a].key, axes[a].values[idx[a]]);
      dir_name << "__" << sanitize(axes[a].key) << "=" << sanitize(axes[a].values[idx[a]]);
    }
    point.out_dir = (fs::path(base.out_dir) / dir_name.str()).string();
    run_experiment(point);
    grid_dirs.push_back(dir_name.str());

    // advance the odometer, last axis fastest
    std::size_t a = axes.size();
    while (a > 0) {
      --a;
      if (++idx[a] < axes[a].values.size()) break;
      idx[a] = 0;
      if (a == 0) return grid_dirs;
    }
  }
}

}  // namespace slsopt
