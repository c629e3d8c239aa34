#include "slsopt/harness/aggregate.hpp"
#include "slsopt/harness/experiment.hpp"
#include "slsopt/verify/verify.hpp"
#include "slsopt/version.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

slsopt::ExperimentConfig load_config(const std::string& path, const std::string& out_override) {
  auto cfg = slsopt::ExperimentConfig::parse_file(path);
  if (!out_override.empty()) cfg.out_dir = out_override;
  cfg.validate();
  return cfg;
}

int cmd_run(const std::string& config_path, const std::string& out_override) {
  const auto cfg = load_config(config_path, out_override);
  const auto outputs = slsopt::run_experiment(cfg);
  for (const auto& p : outputs.csv_paths) std::cout << "wrote " << p << "\n";
  std::cout << "wrote " << outputs.metadata_path << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_override,
              const std::vector<std::string>& params) {
  const auto cfg = load_config(config_path, out_override);
  std::vector<slsopt::SweepAxis> axes;
  for (const auto& p : params) {
    const auto eq = p.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("--param expects key=v1,v2,... , got '" + p + "'");
    slsopt::SweepAxis axis;
    axis.key = p.substr(0, eq);
    std::istringstream vs(p.substr(eq + 1));
    std::string tok;
    while (std::getline(vs, tok, ',')) axis.values.push_back(tok);
    axes.push_back(std::move(axis));
  }
  const auto dirs = slsopt::run_sweep(cfg, std::move(axes));
  for (const auto& d : dirs) std::cout << "grid point " << d << "\n";
  std::cout << dirs.size() << " grid points under " << cfg.out_dir << "\n";
  return kExitOk;
}

int cmd_aggregate(const std::vector<std::string>& inputs, const std::string& to) {
  const auto table = slsopt::aggregate_seed_files(inputs);
  std::ofstream out(to);
  if (!out) throw std::invalid_argument("cannot write '" + to + "'");
  slsopt::write_aggregate_csv(out, table);
  std::cout << "wrote " << to << " (" << table.iter.size() << " rows, " << inputs.size()
            << " runs)\n";
  return kExitOk;
}

void print_suite(const slsopt::verify::SuiteResult& suite) {
  std::cout << (suite.pass() ? "[PASS]" : "[FAIL]") << " criterion " << suite.criterion << " ("
            << suite.suite << ")\n";
  for (const auto& c : suite.cases) {
    std::cout << "    " << (c.pass ? "ok  " : "FAIL") << "  " << c.name;
    if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
    std::cout << "\n";
  }
}

int cmd_verify(const std::string& suite, bool list) {
  if (list) {
    for (const auto& n : slsopt::verify::suite_names()) std::cout << n << "\n";
    return kExitOk;
  }
  bool all_pass = true;
  if (!suite.empty()) {
    const auto result = slsopt::verify::run_suite(suite);
    print_suite(result);
    all_pass = result.pass();
  } else {
    for (const auto& result : slsopt::verify::run_all_suites()) {
      print_suite(result);
      all_pass = all_pass && result.pass();
    }
  }
  return all_pass ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"stochastic line-search optimization harness"};
  app.set_version_flag("--version", slsopt::kVersion);
  app.require_subcommand(1);

  std::string config_path, out_override, agg_to, suite;
  std::vector<std::string> sweep_params, agg_inputs;
  bool list_suites = false;

  auto* run_cmd = app.add_subcommand("run", "execute one experiment config");
  run_cmd->add_option("--config", config_path, "experiment config file")->required();
  run_cmd->add_option("--out", out_override, "override the output directory");

  auto* sweep_cmd = app.add_subcommand("sweep", "expand a parameter grid over a config");
  sweep_cmd->add_option("--config", config_path, "experiment config file")->required();
  sweep_cmd->add_option("--out", out_override, "override the output directory");
  sweep_cmd
      ->add_option("--param", sweep_params,
                   "axis as key=v1,v2,... (repeatable, e.g. linesearch.c=0.1,0.5)")
      ->required();

  auto* agg_cmd = app.add_subcommand("aggregate", "mean/std across per-seed CSV files");
  agg_cmd->add_option("inputs", agg_inputs, "per-seed CSV files")->required();
  agg_cmd->add_option("--to", agg_to, "output CSV path")->required();

  auto* verify_cmd = app.add_subcommand("verify", "run the acceptance suites");
  verify_cmd->add_option("--suite", suite, "run a single suite by id");
  verify_cmd->add_flag("--list", list_suites, "list suite ids and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path, out_override);
    if (sweep_cmd->parsed()) return cmd_sweep(config_path, out_override, sweep_params);
    if (agg_cmd->parsed()) return cmd_aggregate(agg_inputs, agg_to);
    if (verify_cmd->parsed()) return cmd_verify(suite, list_suites);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}
