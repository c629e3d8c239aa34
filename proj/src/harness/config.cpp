#include "slsopt/harness/config.hpp"

#include "slsopt/problems/diag_quadratic.hpp"
#include "slsopt/problems/games.hpp"
#include "slsopt/problems/kernel.hpp"
#include "slsopt/problems/least_squares.hpp"
#include "slsopt/problems/matrix_factorization.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace slsopt {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  std::size_t pos = 0;
  const long v = std::stol(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("bad boolean '" + s + "'");
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void ExperimentConfig::validate() const {
  algorithm_from_name(algorithm);
  ls.validate(algorithm == "sgd_goldstein");
  opts.validate(algorithm_from_name(algorithm));
  if (batch_size < 1) throw std::invalid_argument("config: batch_size must be >= 1");
  if (epochs < 1) throw std::invalid_argument("config: epochs must be >= 1");
  if (seeds.empty()) throw std::invalid_argument("config: seed list must not be empty");
  if (!problem.count("name")) throw std::invalid_argument("config: problem.name is required");
  if (name.empty()) throw std::invalid_argument("config: name must not be empty");
  if (out_dir.empty()) throw std::invalid_argument("config: out_dir must not be empty");
}

std::string ExperimentConfig::serialize() const {
  std::ostringstream out;
  out << "format = 1\n";
  out << "name = " << name << "\n";
  out << "algorithm = " << algorithm << "\n";
  out << "batch_size = " << batch_size << "\n";
  out << "epochs = " << epochs << "\n";
  out << "seeds = ";
  for (std::size_t i = 0; i < seeds.size(); ++i) out << (i ? "," : "") << seeds[i];
  out << "\n";
  out << "out_dir = " << out_dir << "\n";
  for (const auto& [k, v] : problem) out << "problem." << k << " = " << v << "\n";
  out << "linesearch.c = " << format_double(ls.c) << "\n";
  out << "linesearch.beta = " << format_double(ls.beta) << "\n";
  out << "linesearch.gamma = " << format_double(ls.gamma) << "\n";
  out << "linesearch.eta_max = " << format_double(ls.eta_max) << "\n";
  out << "linesearch.reset_option = " << ls.reset_option << "\n";
  out << "linesearch.max_backtracks = " << ls.max_backtracks << "\n";
  out << "opts.alpha = " << format_double(opts.alpha) << "\n";
  if (opts.step_cap) out << "opts.step_cap = " << format_double(*opts.step_cap) << "\n";
  out << "opts.independent_batch = " << (opts.independent_batch ? "true" : "false") << "\n";
  out << "opts.baseline_eta = " << format_double(opts.baseline_eta) << "\n";
  out << "opts.adam_lr = " << format_double(opts.adam_lr) << "\n";
  out << "opts.adam_beta1 = " << format_double(opts.adam_beta1) << "\n";
  out << "opts.adam_beta2 = " << format_double(opts.adam_beta2) << "\n";
  out << "opts.adam_eps = " << format_double(opts.adam_eps) << "\n";
  return out.str();
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig cfg;
  cfg.seeds.clear();
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected 'key = value'");
    const std::string key = trim(t.substr(0, eq));
    const std::string val = trim(t.substr(eq + 1));
    if (key.empty()) throw std::invalid_argument("config line " + std::to_string(line_no) +
                                                 ": empty key");
    if (key == "format") {
      if (val != "1") throw std::invalid_argument("config: unsupported format '" + val + "'");
    } else if (key == "name") cfg.name = val;
    else if (key == "algorithm") cfg.algorithm = val;
    else if (key == "batch_size") cfg.batch_size = static_cast<int>(parse_long(val));
    else if (key == "epochs") cfg.epochs = parse_long(val);
    else if (key == "seeds") {
      std::istringstream ss(val);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        const std::string st = trim(tok);
        if (!st.empty()) cfg.seeds.push_back(static_cast<std::uint64_t>(std::stoull(st)));
      }
    } else if (key == "out_dir") cfg.out_dir = val;
    else if (key.rfind("problem.", 0) == 0) cfg.problem[key.substr(8)] = val;
    else if (key == "linesearch.c") cfg.ls.c = parse_double(val);
    else if (key == "linesearch.beta") cfg.ls.beta = parse_double(val);
    else if (key == "linesearch.gamma") cfg.ls.gamma = parse_double(val);
    else if (key == "linesearch.eta_max") cfg.ls.eta_max = parse_double(val);
    else if (key == "linesearch.reset_option")
      cfg.ls.reset_option = static_cast<int>(parse_long(val));
    else if (key == "linesearch.max_backtracks")
      cfg.ls.max_backtracks = static_cast<int>(parse_long(val));
    else if (key == "opts.alpha") cfg.opts.alpha = parse_double(val);
    else if (key == "opts.step_cap") cfg.opts.step_cap = parse_double(val);
    else if (key == "opts.independent_batch") cfg.opts.independent_batch = parse_bool(val);
    else if (key == "opts.baseline_eta") cfg.opts.baseline_eta = parse_double(val);
    else if (key == "opts.adam_lr") cfg.opts.adam_lr = parse_double(val);
    else if (key == "opts.adam_beta1") cfg.opts.adam_beta1 = parse_double(val);
    else if (key == "opts.adam_beta2") cfg.opts.adam_beta2 = parse_double(val);
    else if (key == "opts.adam_eps") cfg.opts.adam_eps = parse_double(val);
    else throw std::invalid_argument("config line " + std::to_string(line_no) +
                                     ": unknown key '" + key + "'");
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

namespace {

const std::string& require(const std::map<std::string, std::string>& m, const std::string& k) {
  const auto it = m.find(k);
  if (it == m.end()) throw std::invalid_argument("problem parameter '" + k + "' is required");
  return it->second;
}

std::string get_or(const std::map<std::string, std::string>& m, const std::string& k,
                   const std::string& dflt) {
  const auto it = m.find(k);
  return it == m.end() ? dflt : it->second;
}

}  // namespace

BuiltProblem build_problem(const std::map<std::string, std::string>& params) {
  BuiltProblem built;
  const std::string& name = require(params, "name");
  if (name == "diag_quadratic") {
    std::vector<double> L;
    std::istringstream ss(require(params, "L"));
    std::string tok;
    while (std::getline(ss, tok, ',')) L.push_back(parse_double(tok));
    const int dim = static_cast<int>(parse_long(get_or(params, "dim", "1")));
    built.oracle = std::make_shared<DiagQuadraticProblem>(std::move(L), dim);
  } else if (name == "least_squares") {
    built.oracle = std::make_shared<LeastSquaresProblem>(gen_least_squares_interpolated(
        static_cast<std::uint64_t>(parse_long(require(params, "seed"))),
        static_cast<int>(parse_long(require(params, "n"))),
        static_cast<int>(parse_long(require(params, "d")))));
  } else if (name == "matrix_factorization") {
    built.oracle = std::make_shared<MatrixFactorizationProblem>(gen_matrix_factorization(
        static_cast<std::uint64_t>(parse_long(require(params, "seed"))),
        static_cast<int>(parse_long(require(params, "m"))),
        static_cast<int>(parse_long(require(params, "rank")))));
  } else if (name == "kernel_synthetic" || name == "kernel_libsvm") {
    Dataset data;
    const auto seed = static_cast<std::uint64_t>(parse_long(require(params, "seed")));
    if (name == "kernel_synthetic") {
      data = gen_margin_dataset_2d(seed,
                                   static_cast<int>(parse_long(get_or(params, "count", "500"))),
                                   parse_double(get_or(params, "margin", "0.5")));
    } else {
      std::ifstream in(require(params, "path"));
      if (!in)
        throw std::invalid_argument("cannot open dataset '" + require(params, "path") + "'");
      data = parse_libsvm(in);
    }
    auto split = std::make_shared<KernelSplit>(
        rbf_kernel_problem(data, parse_double(require(params, "bandwidth")),
                           parse_double(get_or(params, "train_fraction", "0.8")), seed));
    built.test_metric = [split](const Vector& w) {
      return split->problem.test_accuracy(w, split->test_inputs, split->test_labels);
    };
    built.oracle = std::shared_ptr<FiniteSumOracle>(split, &split->problem);
  } else if (name == "bilinear_game") {
    built.saddle = std::make_shared<BilinearGameProblem>(gen_bilinear_game(
        static_cast<std::uint64_t>(parse_long(require(params, "seed"))),
        static_cast<int>(parse_long(require(params, "d"))),
        static_cast<int>(parse_long(require(params, "n"))),
        parse_bool(get_or(params, "interpolated", "true"))));
  } else if (name == "monotone_game") {
    built.saddle = std::make_shared<StronglyMonotoneGameProblem>(gen_strongly_monotone_game(
        static_cast<std::uint64_t>(parse_long(require(params, "seed"))),
        static_cast<int>(parse_long(require(params, "d"))),
        static_cast<int>(parse_long(require(params, "n"))),
        parse_double(require(params, "mu"))));
  } else {
    throw std::invalid_argument("unknown problem '" + name + "'");
  }
  return built;
}

}  // namespace slsopt
