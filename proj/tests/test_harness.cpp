#include "slsopt/harness/aggregate.hpp"
#include "slsopt/harness/csv.hpp"
#include "slsopt/harness/experiment.hpp"
#include "slsopt/harness/overlay.hpp"
#include "slsopt/problems/diag_quadratic.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace slsopt;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config(const std::string& out_dir) {
  ExperimentConfig cfg;
  cfg.name = "tiny";
  cfg.problem = {{"name", "diag_quadratic"}, {"L", "1"}, {"dim", "1"}};
  cfg.algorithm = "sgd_armijo";
  cfg.ls.c = 0.5;
  cfg.batch_size = 1;
  cfg.epochs = 1;
  cfg.seeds = {1};
  cfg.out_dir = out_dir;
  return cfg;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("slsopt_test_" + std::to_string(::getpid()) +
                                                "_" + std::to_string(counter++))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  static inline int counter = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config serializes losslessly") {
  ExperimentConfig cfg = tiny_config("somewhere");
  cfg.ls.c = 0.1234567890123456;
  cfg.opts.step_cap = 10.0;
  cfg.opts.alpha = 0.8;
  cfg.seeds = {1, 2, 42};
  const std::string text = cfg.serialize();
  const ExperimentConfig back = ExperimentConfig::parse(text);
  CHECK(back.serialize() == text);
  CHECK(back.ls.c == cfg.ls.c);
  CHECK(back.opts.step_cap == cfg.opts.step_cap);
  CHECK(back.seeds == cfg.seeds);
  CHECK(back.problem == cfg.problem);
}

TEST_CASE("config validation and parse errors") {
  CHECK_THROWS_AS(ExperimentConfig::parse("what is this"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::parse("unknown.key = 1\n"), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::parse("format = 2\n"), std::invalid_argument);
  ExperimentConfig cfg = tiny_config("x");
  cfg.seeds.clear();
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = tiny_config("x");
  cfg.algorithm = "bogus";
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS(ExperimentConfig::parse_file("/nonexistent/config"), std::invalid_argument);
}

TEST_CASE("trace to csv round trip") {
  RunTrace trace;
  trace.seed = 9;
  TraceRow r;
  r.iter = 1;
  r.epoch = 1;
  r.train_loss = 1.0 / 3.0;
  r.step_size = 0.9;
  r.fn_evals = 3;
  r.grad_evals = 2;
  r.dist_sq = 0.1234567890123456789;
  r.wall_secs = 0.5;
  trace.rows.push_back(r);
  r.iter = 2;
  r.test_metric = 0.75;
  r.dist_sq.reset();
  trace.rows.push_back(r);

  std::ostringstream out;
  write_csv(out, trace);
  std::istringstream in(out.str());
  const ParsedCsv parsed = read_csv(in);
  REQUIRE(parsed.columns.size() == 10);
  CHECK(parsed.columns[0] == "run_seed");
  REQUIRE(parsed.rows.size() == 2);
  CHECK(parsed.rows[0][3].value == 1.0 / 3.0);  // %.17g round-trips exactly
  CHECK(parsed.rows[0][8].value == 0.1234567890123456789);
  CHECK_FALSE(parsed.rows[0][4].present);
  CHECK(parsed.rows[1][4].present);
  CHECK_FALSE(parsed.rows[1][8].present);
}

TEST_CASE("aggregate") {
  const auto make_csv = [](double loss) {
    std::ostringstream out;
    out << kCsvHeader << "\n";
    out << "1,1,0," << format_double(loss) << ",,0.5,1,1,2.0,0.1\n";
    std::istringstream in(out.str());
    return read_csv(in);
  };
  SUBCASE("single input: mean is the input, std is zero") {
    const auto t = aggregate_seeds({make_csv(1.0)});
    CHECK(t.loss_mean[0] == 1.0);
    CHECK(t.loss_std[0] == 0.0);
    CHECK(t.dist_mean[0].present);
  }
  SUBCASE("two runs with losses 1 and 3: mean 2, std sqrt(2)") {
    const auto t = aggregate_seeds({make_csv(1.0), make_csv(3.0)});
    CHECK(t.loss_mean[0] == 2.0);
    CHECK(t.loss_std[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  }
  SUBCASE("empty input list rejected") {
    CHECK_THROWS_AS(aggregate_seeds({}), std::invalid_argument);
  }
  SUBCASE("mismatched grids rejected") {
    auto a = make_csv(1.0);
    auto b = make_csv(1.0);
    b.rows[0][1].value = 7;  // different iteration index
    CHECK_THROWS_AS(aggregate_seeds({a, b}), std::invalid_argument);
  }
}

TEST_CASE("theoretical overlays") {
  SUBCASE("contraction factor from mu=1, L_max=2, eta_max=1 is 0.5") {
    RateBound rb;
    rb.mu_bar = 1.0;
    rb.L_max = 2.0;
    rb.eta_max = 1.0;
    const auto curve = theoretical_overlay(RateKind::SgdContraction, rb, 4.0, 3);
    CHECK(curve.factor_or_constant == 0.5);
    CHECK(curve.hypotheses_ok);
    CHECK(curve.values == std::vector<double>{2.0, 1.0, 0.5});
  }
  SUBCASE("the c=2/3 envelope specializes to max{3 L_max, 2/eta_max}") {
    RateBound rb;
    rb.c = 2.0 / 3.0;
    rb.L_max = 5.0;
    rb.eta_max = 0.1;
    const double direct = std::max(3.0 * rb.L_max, 2.0 / rb.eta_max);
    CHECK(rb.averaged_envelope_constant() == doctest::Approx(direct).epsilon(1e-12));
  }
  SUBCASE("zero horizon yields an empty curve") {
    RateBound rb;
    rb.mu_bar = 1.0;
    rb.L_max = 2.0;
    const auto curve = theoretical_overlay(RateKind::SgdContraction, rb, 1.0, 0);
    CHECK(curve.values.empty());
  }
  SUBCASE("violated hypotheses flag the curve but still emit it") {
    RateBound rb;
    rb.mu_bar = 0.0;  // factor becomes 1: no contraction
    rb.L_max = 2.0;
    const auto curve = theoretical_overlay(RateKind::SgdContraction, rb, 1.0, 2);
    CHECK_FALSE(curve.hypotheses_ok);
    CHECK_FALSE(curve.warning.empty());
    CHECK(curve.values.size() == 2);
    RateBound env;
    env.c = 0.1;
    const auto envelope = theoretical_overlay(RateKind::AveragedEnvelope, env, 1.0, 2);
    CHECK_FALSE(envelope.hypotheses_ok);
  }
  SUBCASE("contraction curves decrease monotonically when the factor is in (0,1)") {
    RateBound rb;
    rb.mu_bar = 0.3;
    rb.L_max = 2.0;
    rb.eta_max = 1.0;
    const auto curve = theoretical_overlay(RateKind::SgdContraction, rb, 1.0, 50);
    for (std::size_t i = 1; i < curve.values.size(); ++i)
      CHECK(curve.values[i] < curve.values[i - 1]);
  }
}

TEST_CASE("strong-growth ratio estimate") {
  SUBCASE("single component: the ratio is exactly one") {
    DiagQuadraticProblem p({3.0}, 2);
    Rng rng(2);
    CHECK(estimate_sgc_rho(p, {rng.normal_vector(2)}) == 1.0);
  }
  SUBCASE("two components with L = 1, 3 give 5/4 at any point") {
    DiagQuadraticProblem p({1.0, 3.0}, 2);
    Rng rng(2);
    const Vector w = rng.normal_vector(2);
    CHECK(estimate_sgc_rho(p, {w}) == doctest::Approx(1.25).epsilon(1e-12));
    CHECK(estimate_sgc_rho(p, {Vector(2.0 * w)}) ==
          doctest::Approx(estimate_sgc_rho(p, {w})).epsilon(1e-12));
  }
  SUBCASE("all-zero gradients are an error") {
    DiagQuadraticProblem p({1.0}, 2);
    CHECK_THROWS_AS(estimate_sgc_rho(p, {Vector::Zero(2)}), std::runtime_error);
  }
}

TEST_CASE("run_experiment writes per-seed csv and metadata") {
  TempDir tmp;
  auto cfg = tiny_config(tmp.path.string());
  const auto outputs = run_experiment(cfg);
  REQUIRE(outputs.csv_paths.size() == 1);
  const ParsedCsv parsed = read_csv_file(outputs.csv_paths[0]);
  REQUIRE(parsed.rows.size() == 1);
  CHECK(parsed.rows[0][1].value == 1.0);   // iter
  CHECK(parsed.rows[0][2].value == 1.0);   // epoch
  CHECK(parsed.rows[0][3].value == 0.0);   // train_loss hits zero at epoch 1
  CHECK(parsed.rows[0][5].value == 1.0);   // accepted step
  const std::string meta = read_file(outputs.metadata_path);
  CHECK(meta.find("format = 1") != std::string::npos);
  CHECK(meta.find("library_version = ") != std::string::npos);
}

TEST_CASE("reruns are identical apart from wall-clock") {
  TempDir tmp;
  ExperimentConfig cfg = tiny_config(tmp.path.string());
  cfg.problem = {{"name", "least_squares"}, {"seed", "5"}, {"n", "30"}, {"d", "4"}};
  cfg.epochs = 5;
  cfg.batch_size = 2;
  cfg.seeds = {3};

  const auto first = run_experiment(cfg);
  const ParsedCsv a = read_csv_file(first.csv_paths[0]);
  const auto second = run_experiment(cfg);
  const ParsedCsv b = read_csv_file(second.csv_paths[0]);

  REQUIRE(a.rows.size() == b.rows.size());
  const std::size_t wall = a.columns.size() - 1;
  REQUIRE(a.columns[wall] == "wall_secs");
  for (std::size_t i = 0; i < a.rows.size(); ++i)
    for (std::size_t j = 0; j < wall; ++j) {
      CHECK(a.rows[i][j].present == b.rows[i][j].present);
      CHECK(a.rows[i][j].value == b.rows[i][j].value);
    }

  // the same determinism, seen through the in-memory trace
  const RunTrace t1 = run_config_single_seed(cfg, 3);
  const RunTrace t2 = run_config_single_seed(cfg, 3);
  CHECK(traces_equal_ignoring_wall(t1, t2));
}

TEST_CASE("failed experiments remove partial outputs") {
  TempDir tmp;
  auto cfg = tiny_config(tmp.path.string());
  cfg.seeds = {1, 2};
  cfg.opts = OptimizerOptions{};
  cfg.algorithm = "constant_sgd";
  cfg.opts.baseline_eta = 1e308;  // diverges, aborting the second phase of the run
  CHECK_THROWS(run_experiment(cfg));
  CHECK(fs::is_empty(tmp.path));
}

TEST_CASE("sweep expands the sorted cartesian product") {
  TempDir tmp;
  auto cfg = tiny_config(tmp.path.string());
  // axes given out of order; expansion sorts by key then value
  std::vector<SweepAxis> axes;
  axes.push_back({"linesearch.eta_max", {"2", "1"}});
  axes.push_back({"linesearch.c", {"0.5", "0.25"}});
  const auto dirs = run_sweep(cfg, axes);
  const std::vector<std::string> expected{
      "tiny__linesearch_c=0.25__linesearch_eta_max=1",
      "tiny__linesearch_c=0.25__linesearch_eta_max=2",
      "tiny__linesearch_c=0.5__linesearch_eta_max=1",
      "tiny__linesearch_c=0.5__linesearch_eta_max=2",
  };
  CHECK(dirs == expected);
  for (const auto& d : dirs) {
    CHECK(fs::exists(tmp.path / d / "tiny_seed1.csv"));
    CHECK(fs::exists(tmp.path / d / "tiny_meta.txt"));
  }
}

TEST_CASE("with_config_key applies overrides through the file syntax") {
  const auto cfg = tiny_config("x");
  const auto changed = with_config_key(cfg, "linesearch.c", "0.25");
  CHECK(changed.ls.c == 0.25);
  CHECK_THROWS_AS(with_config_key(cfg, "no.such.key", "1"), std::invalid_argument);
}
