#pragma once

#include "slsopt/core/oracle.hpp"
#include "slsopt/optimizers/optimizers.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace slsopt {

/// One experiment: a problem, an algorithm, its parameters, and a seed list.
/// Serializes to a flat "dotted.key = value" text file and back, losslessly.
struct ExperimentConfig {
  std::string name = "experiment";
  std::map<std::string, std::string> problem;  // problem.* keys, includes "name" and "seed"
  std::string algorithm = "sgd_armijo";
  LineSearchConfig ls;
  OptimizerOptions opts;
  int batch_size = 1;
  long epochs = 1;
  std::vector<std::uint64_t> seeds;
  std::string out_dir = "out";

  void validate() const;
  std::string serialize() const;
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig parse_file(const std::string& path);
};

/// Built problem: exactly one of the two oracles is set. The optional test
/// metric (kernel problems) evaluates held-out accuracy.
struct BuiltProblem {
  std::shared_ptr<FiniteSumOracle> oracle;
  std::shared_ptr<SaddleOracle> saddle;
  std::function<double(const Vector&)> test_metric;
};

/// Instantiates the generator named by problem["name"] with its parameters.
/// Known names: diag_quadratic, least_squares, matrix_factorization,
/// kernel_synthetic, kernel_libsvm, bilinear_game, monotone_game.
BuiltProblem build_problem(const std::map<std::string, std::string>& params);

// formatting helpers shared by config and CSV writers
std::string format_double(double v);      // shortest round-trip-exact decimal
double parse_double(const std::string& s);
long parse_long(const std::string& s);
bool parse_bool(const std::string& s);

}  // namespace slsopt
