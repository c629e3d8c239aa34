#include "slsopt/verify/verify.hpp"

#include "slsopt/harness/experiment.hpp"
#include "slsopt/harness/overlay.hpp"
#include "slsopt/problems/diag_quadratic.hpp"
#include "slsopt/problems/games.hpp"
#include "slsopt/problems/kernel.hpp"
#include "slsopt/problems/least_squares.hpp"
#include "slsopt/problems/matrix_factorization.hpp"

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <sstream>

namespace slsopt::verify {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof buf, format, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------- criterion 1

SuiteResult suite_step_bounds() {
  SuiteResult result{1, "step-bounds", {}};
  const auto t0 = Clock::now();
  const double eta_max = 1.0;
  const double beta = 0.9;
  bool lower_ok = true, upper_ok = true, post_ok = true;
  Rng rng(derive_stream(2024, "step_bounds_points"));
  for (const double L : {0.5, 1.0, 4.0, 100.0}) {
    DiagQuadraticProblem oracle({L}, 5);
    const Batch batch{0};
    for (const double c : {0.1, 0.5}) {
      LineSearchConfig ls;
      ls.c = c;
      ls.beta = beta;
      ls.eta_max = eta_max;
      for (int rep = 0; rep < 250; ++rep) {
        Vector w = rng.normal_vector(5);
        if (w.squaredNorm() == 0.0) w[0] = 1.0;
        Vector g;
        const double f_w = oracle.batch_value_and_gradient(w, batch, g);
        const auto out = backtrack_armijo(oracle, batch, w, g, f_w, eta_max, ls);
        const double lower = beta * std::min(2.0 * (1.0 - c) / L, eta_max);
        const double upper = std::min(1.0 / (2.0 * c * L), eta_max) / beta;
        if (!(out.eta >= lower)) lower_ok = false;
        if (!(out.eta <= upper)) upper_ok = false;
        if (out.hit_floor || !armijo_holds(oracle, batch, w, g, f_w, out.eta, c))
          post_ok = false;
      }
    }
  }
  const double secs = seconds_since(t0);
  result.cases.push_back({"accepted step >= beta*min(2(1-c)/L, eta_max)", lower_ok, ""});
  result.cases.push_back({"accepted step <= min(1/(2c*mu), eta_max)/beta", upper_ok, ""});
  result.cases.push_back({"accepted step satisfies the decrease condition", post_ok, ""});
  result.cases.push_back({"runtime under 1 s", secs < 1.0, fmt("%.3f s", secs)});
  return result;
}

// ------------------------------------------------------- criteria 2, 3, 7, 9

ExperimentConfig mf_base_config(int rank, const std::string& algorithm, double c,
                                long epochs) {
  ExperimentConfig cfg;
  cfg.name = "mf";
  cfg.problem = {{"name", "matrix_factorization"},
                 {"seed", "1"},
                 {"m", "1000"},
                 {"rank", std::to_string(rank)}};
  cfg.algorithm = algorithm;
  cfg.ls.c = c;
  cfg.ls.beta = 0.9;
  cfg.ls.gamma = 2.0;       // non-convex growth factor
  cfg.ls.eta_max = 10.0;    // matches the non-convex step cap
  cfg.ls.reset_option = 2;
  cfg.opts.step_cap = 10.0;
  cfg.batch_size = 100;
  cfg.epochs = epochs;
  cfg.seeds = {1};
  return cfg;
}

SuiteResult suite_factorization_interpolation() {
  SuiteResult result{2, "factorization-interpolation", {}};
  const auto cfg = mf_base_config(10, "sgd_armijo", 0.1, 50);
  int hits = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RunTrace trace = run_config_single_seed(cfg, seed);
    double best = trace.rows.front().train_loss;
    for (const auto& r : trace.rows) best = std::min(best, r.train_loss);
    if (best < 1e-10) ++hits;
    worst = std::max(worst, best);
  }
  result.cases.push_back({"training loss < 1e-10 within 50 epochs on >= 18/20 seeds",
                          hits >= 18, fmt("%d/20 seeds, worst best-loss %.3e", hits, worst)});
  return result;
}

double reduced_rank_floor(const Matrix& A, const Matrix& samples, int rank) {
  const Matrix C = samples.transpose() * samples / static_cast<double>(samples.rows());
  const Matrix L = Eigen::LLT<Matrix>(C).matrixL();
  const Vector sv = Eigen::JacobiSVD<Matrix>(A * L).singularValues();
  double floor = 0.0;
  for (Eigen::Index i = rank; i < sv.size(); ++i) floor += sv[i] * sv[i];
  return floor;
}

SuiteResult suite_factorization_rank1() {
  SuiteResult result{3, "factorization-rank1", {}};
  const auto cfg = mf_base_config(1, "sgd_armijo", 0.1, 50);
  const auto problem = gen_matrix_factorization(1, 1000, 1);
  const double floor = reduced_rank_floor(problem.target(), problem.samples(), 1);
  bool all_in = true;
  double rmin = 1e300, rmax = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RunTrace trace = run_config_single_seed(cfg, seed);
    const double ratio = trace.back().train_loss / floor;
    rmin = std::min(rmin, ratio);
    rmax = std::max(rmax, ratio);
    if (!(ratio >= 0.5 && ratio <= 10.0)) all_in = false;
  }
  result.cases.push_back(
      {"final loss within [0.5x, 10x] of the rank-1 floor on every seed", all_in,
       fmt("floor %.4e, ratio range [%.3f, %.3f]", floor, rmin, rmax)});
  return result;
}

SuiteResult suite_seg_factorization() {
  SuiteResult result{7, "seg-factorization", {}};
  const auto cfg = mf_base_config(10, "seg_lipschitz", 0.25, 100);
  int hits = 0;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RunTrace trace = run_config_single_seed(cfg, seed);
    double best = trace.rows.front().train_loss;
    for (const auto& r : trace.rows) best = std::min(best, r.train_loss);
    if (best < 1e-8) ++hits;
    worst = std::max(worst, best);
  }
  result.cases.push_back({"training loss < 1e-8 within 100 epochs on >= 18/20 seeds",
                          hits >= 18, fmt("%d/20 seeds, worst best-loss %.3e", hits, worst)});
  return result;
}

SuiteResult suite_eval_budget() {
  SuiteResult result{9, "eval-budget", {}};
  const auto cfg = mf_base_config(10, "sgd_armijo", 0.1, 50);
  double worst_mean = 0.0;
  bool floor_fired = false;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const RunTrace trace = run_config_single_seed(cfg, seed);
    long count = 0;
    long long checks = 0;
    for (const auto& r : trace.rows) {
      if (r.hit_floor) floor_fired = true;
      if (r.epoch >= 1) {
        checks += r.condition_evals;
        ++count;
      }
    }
    worst_mean = std::max(worst_mean, static_cast<double>(checks) / count);
  }
  result.cases.push_back({"mean condition checks per iteration after epoch 1 <= 3",
                          worst_mean <= 3.0, fmt("worst seed mean %.3f", worst_mean)});
  result.cases.push_back({"hit_floor never fires", !floor_fired, ""});
  return result;
}

// ---------------------------------------------------------------- criterion 4

SuiteResult suite_sgd_contraction() {
  SuiteResult result{4, "sgd-contraction", {}};
  const auto t0 = Clock::now();
  const auto problem = gen_least_squares_interpolated(7, 200, 20);
  const double mu = problem.strong_convexity().value();
  const double L_max = problem.lipschitz_constants()->maxCoeff();
  const double eta_max = 1.0;
  const double bound = std::max(1.0 - mu / L_max, 1.0 - mu * eta_max);

  RunConfig rc;
  rc.ls.c = 0.5;
  rc.ls.beta = 0.9;
  rc.ls.eta_max = eta_max;
  rc.ls.reset_option = 1;  // restart from eta_max every iteration
  rc.batch_size = 1;
  rc.iterations = 500;

  std::vector<double> expected(501, 0.0);
  const int n_runs = 200;
  for (int s = 0; s < n_runs; ++s) {
    rc.seed = static_cast<std::uint64_t>(s + 1);
    rc.w0 = problem.initial_point(derive_stream(rc.seed, "init"));
    const RunTrace trace = run(Algorithm::SgdArmijo, problem, rc);
    for (const auto& r : trace.rows) expected[static_cast<std::size_t>(r.iter)] += *r.dist_sq;
  }
  double log_sum = 0.0;
  int count = 0;
  for (int k = 50; k < 500; ++k) {
    log_sum += std::log(expected[static_cast<std::size_t>(k + 1)] /
                        expected[static_cast<std::size_t>(k)]);
    ++count;
  }
  const double geo_mean = std::exp(log_sum / count);
  const double secs = seconds_since(t0);
  result.cases.push_back(
      {"geometric mean contraction <= max{1-mu/L_max, 1-mu*eta_max} + 0.02",
       geo_mean <= bound + 0.02, fmt("ratio %.5f vs bound %.5f", geo_mean, bound + 0.02)});
  result.cases.push_back({"runtime under 30 s", secs < 30.0, fmt("%.2f s", secs)});
  return result;
}

// ---------------------------------------------------------------- criterion 5

SuiteResult suite_seg_bilinear_map() {
  SuiteResult result{5, "seg-bilinear-map", {}};
  // 1-D bilinear game with zero offsets: F(x, y) = (y, -x)
  const BilinearGameProblem game(Matrix::Zero(1, 1), Matrix::Zero(1, 1), Vector::Zero(2));

  LineSearchConfig ls;
  ls.c = 1.0 / std::sqrt(2.0);
  ls.beta = 0.9;
  ls.eta_max = 1.0;
  ls.reset_option = 1;
  OptimizerOptions opts;

  double eta_expected = 1.0;
  for (int i = 0; i < 4; ++i) eta_expected *= 0.9;

  EvalCounts counts;
  CountingSaddle counted(game, counts);
  const auto op = [&](const Vector& z, const Batch& batch) {
    return counted.batch_operator(z, batch);
  };
  MiniBatchSampler sampler(1, 1, derive_stream(5, "batch"));

  Vector z0(2);
  z0 << 1.0, 0.0;
  SegState state = SegState::init(z0, ls);

  state = seg_lipschitz_step(state, op, sampler, ls, opts);
  const bool eta_exact = state.eta_prev == eta_expected;
  const bool evals_exact = state.last_search.condition_evals == 5;

  // closed-form reference map for the remaining iterations
  const double eta = eta_expected;
  const double a = 1.0 - eta * eta;
  double xr = (1.0 - eta * eta) * 1.0 - eta * 0.0;
  double yr = eta * 1.0 + (1.0 - eta * eta) * 0.0;
  double max_err = std::max(std::abs(state.z[0] - xr), std::abs(state.z[1] - yr));
  double max_norm_err = 0.0;
  for (int k = 2; k <= 100; ++k) {
    const double before = state.z.squaredNorm();
    state = seg_lipschitz_step(state, op, sampler, ls, opts);
    const double nx = a * xr - eta * yr;
    const double ny = eta * xr + a * yr;
    xr = nx;
    yr = ny;
    max_err = std::max({max_err, std::abs(state.z[0] - xr), std::abs(state.z[1] - yr)});
    const double predicted = (a * a + eta * eta) * before;
    max_norm_err = std::max(max_norm_err,
                            std::abs(state.z.squaredNorm() - predicted) /
                                std::max(predicted, 1e-300));
  }
  result.cases.push_back({"accepted step equals 0.9^4 = 0.6561 exactly", eta_exact,
                          fmt("eta %.17g, checks %d", state.eta_prev,
                              state.last_search.condition_evals)});
  result.cases.push_back({"line search uses 5 condition checks", evals_exact, ""});
  result.cases.push_back({"100 iterates match the closed-form map to 1e-12 per coordinate",
                          max_err <= 1e-12, fmt("max |err| %.3e", max_err)});
  result.cases.push_back({"per-step norm recurrence holds to 1e-12", max_norm_err <= 1e-12,
                          fmt("max rel err %.3e", max_norm_err)});
  return result;
}

// ---------------------------------------------------------------- criterion 6

ExperimentConfig bilinear_config(bool interpolated) {
  ExperimentConfig cfg;
  cfg.name = "bilinear";
  cfg.problem = {{"name", "bilinear_game"},
                 {"seed", "11"},
                 {"d", "50"},
                 {"n", "50"},
                 {"interpolated", interpolated ? "true" : "false"}};
  cfg.algorithm = "seg_lipschitz";
  cfg.ls.c = 1.0 / std::sqrt(2.0);
  cfg.ls.beta = 0.9;
  cfg.ls.gamma = 1.5;
  cfg.ls.eta_max = 1.0;
  cfg.ls.reset_option = 2;
  cfg.batch_size = 1;
  cfg.epochs = 80;  // 80 epochs * 50 components = 4000 iterations at b = 1
  cfg.seeds = {1};
  return cfg;
}

SuiteResult suite_bilinear_game() {
  SuiteResult result{6, "bilinear-game", {}};
  const auto t0 = Clock::now();

  int hits = 0;
  double worst = 0.0;
  const auto cfg_in = bilinear_config(true);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RunTrace trace = run_config_single_seed(cfg_in, seed);
    const double final_dist = *trace.back().dist_sq;
    if (final_dist < 1e-8) ++hits;
    worst = std::max(worst, final_dist);
  }
  result.cases.push_back(
      {"interpolated: dist^2 < 1e-8 within 4000 iterations on >= 4/5 seeds", hits >= 4,
       fmt("%d/5 seeds, worst final %.3e", hits, worst)});

  // non-interpolated variant: recover the averaged-game solution by probing
  // the full-batch operator, then require no convergence toward it
  const auto cfg_out = bilinear_config(false);
  const auto game = gen_bilinear_game(11, 50, 50, false);
  const int d = 50;
  const Batch all = full_batch(d);
  const Vector F0 = game.batch_operator(Vector::Zero(2 * d), all);
  const Vector b_bar = -F0.head(d);
  const Vector c_bar = F0.tail(d);
  Matrix A_bar(d, d);
  for (int j = 0; j < d; ++j) {
    Vector z = Vector::Zero(2 * d);
    z[d + j] = 1.0;
    A_bar.col(j) = game.batch_operator(z, all).head(d) + b_bar;
  }
  Vector z_star(2 * d);
  z_star.head(d) = A_bar.transpose().colPivHouseholderQr().solve(c_bar);
  z_star.tail(d) = A_bar.colPivHouseholderQr().solve(b_bar);

  // the oracle exposes no solution here, so drive the same trajectory the
  // harness would produce and measure against the probed z* directly
  bool none_converged = true;
  double closest = 1e300;
  const OptimizerOptions opts;
  const auto op = [&](const Vector& z, const Batch& batch) {
    return game.batch_operator(z, batch);
  };
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const Vector z0 = game.initial_point(derive_stream(seed, "init"));
    const double d0 = squared_distance(z0, z_star);
    MiniBatchSampler sampler(d, 1, derive_stream(seed, "batch"));
    SegState state = SegState::init(z0, cfg_out.ls);
    for (long k = 1; k <= 4000; ++k)
      state = seg_lipschitz_step(state, op, sampler, cfg_out.ls, opts);
    const double final_dist = squared_distance(state.z, z_star);
    closest = std::min(closest, final_dist / d0);
    if (!(final_dist > 1e-2 * d0)) none_converged = false;
  }
  const double secs = seconds_since(t0);
  result.cases.push_back(
      {"non-interpolated: dist^2 stays above 1e-2 of initial on every seed", none_converged,
       fmt("smallest final/initial ratio %.3e", closest)});
  result.cases.push_back({"runtime under 30 s", secs < 30.0, fmt("%.2f s", secs)});
  return result;
}

// ---------------------------------------------------------------- criterion 8

SuiteResult suite_monotone_game() {
  SuiteResult result{8, "monotone-game", {}};
  const auto game = gen_strongly_monotone_game(3, 20, 50, 0.1);
  const double eta_max = std::min(1.0, 1.0 / (4.0 * game.mu_max()));

  ExperimentConfig cfg;
  cfg.name = "monotone";
  cfg.problem = {{"name", "monotone_game"},
                 {"seed", "3"},
                 {"d", "20"},
                 {"n", "50"},
                 {"mu", "0.1"}};
  cfg.algorithm = "seg_lipschitz";
  cfg.ls.c = 0.25;
  cfg.ls.beta = 0.9;
  cfg.ls.gamma = 1.5;
  cfg.ls.eta_max = eta_max;
  cfg.ls.reset_option = 2;
  cfg.batch_size = 1;
  cfg.epochs = 40;  // 2000 iterations at b = 1, n = 50
  cfg.seeds = {1};

  bool all_converged = true, all_monotone = true;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const RunTrace trace = run_config_single_seed(cfg, seed);
    const double final_dist = *trace.back().dist_sq;
    worst = std::max(worst, final_dist);
    if (!(final_dist < 1e-10)) all_converged = false;
    // epoch-averaged distances must be non-increasing
    std::vector<double> sums;
    std::vector<long> counts;
    for (const auto& r : trace.rows) {
      const auto e = static_cast<std::size_t>(epoch_of(r.iter - 1, 1, 50));
      if (e >= sums.size()) {
        sums.push_back(0.0);
        counts.push_back(0);
      }
      sums[e] += *r.dist_sq;
      ++counts[e];
    }
    for (std::size_t e = 1; e < sums.size(); ++e)
      if (sums[e] / counts[e] > sums[e - 1] / counts[e - 1]) all_monotone = false;
  }
  result.cases.push_back({"dist^2 < 1e-10 within 2000 iterations on every seed", all_converged,
                          fmt("worst final %.3e, eta_max %.3f", worst, eta_max)});
  result.cases.push_back({"epoch-averaged dist^2 decays monotonically", all_monotone, ""});
  return result;
}

// --------------------------------------------------------------- criterion 10

SuiteResult suite_kernel_convex() {
  SuiteResult result{10, "kernel-convex", {}};
  const Dataset data = gen_margin_dataset_2d(1234, 500, 0.5);
  const KernelSplit split = rbf_kernel_problem(data, 0.5, 0.8, 1234);
  const auto& problem = split.problem;
  const int n = problem.components();
  const int b = 100;
  const long iters_per_epoch = (n + b - 1) / b;

  LineSearchConfig ls;
  ls.c = 0.1;
  ls.beta = 0.9;
  ls.gamma = 1.5;
  ls.eta_max = 1.0;
  ls.reset_option = 2;
  OptimizerOptions opts;
  const Batch all = full_batch(n);

  const auto run_manual = [&](std::uint64_t seed, long epochs, Vector* w_out,
                              std::vector<std::pair<long, double>>* avg_loss_at_epoch) {
    MiniBatchSampler sampler(n, b, derive_stream(seed, "batch"));
    SgdState state = SgdState::init(Vector::Zero(n), ls);
    Vector wbar_sum = Vector::Zero(n);
    const long T = epochs * iters_per_epoch;
    for (long k = 1; k <= T; ++k) {
      state = sgd_armijo_step(state, problem, sampler, ls, opts);
      wbar_sum += state.w;
      if (avg_loss_at_epoch && k % iters_per_epoch == 0) {
        const Vector wbar = wbar_sum / static_cast<double>(k);
        avg_loss_at_epoch->emplace_back(k, problem.batch_value(wbar, all));
      }
    }
    if (w_out) *w_out = state.w;
    return problem.batch_value(state.w, all);
  };

  // long reference run stands in for the (non-finite) minimizer
  Vector w_ref;
  run_manual(999, 2000, &w_ref, nullptr);
  const double f_ref = problem.batch_value(w_ref, all);
  const double L_max = problem.lipschitz_constants()->maxCoeff();
  RateBound envelope;
  envelope.c = 2.0 / 3.0;
  envelope.L_max = L_max;
  envelope.eta_max = ls.eta_max;
  const double C = envelope.averaged_envelope_constant() * w_ref.squaredNorm();

  bool loss_ok = true, acc_ok = true, overlay_ok = true;
  double worst_loss = 0.0, worst_acc = 1.0, worst_margin = 1e300;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Vector w_final;
    std::vector<std::pair<long, double>> avg_losses;
    const double final_loss = run_manual(seed, 35, &w_final, &avg_losses);
    const double acc = problem.test_accuracy(w_final, split.test_inputs, split.test_labels);
    worst_loss = std::max(worst_loss, final_loss);
    worst_acc = std::min(worst_acc, acc);
    if (!(final_loss < 1e-2)) loss_ok = false;
    if (acc != 1.0) acc_ok = false;
    for (const auto& [T, f_avg] : avg_losses) {
      const double margin = C / static_cast<double>(T) - (f_avg - f_ref);
      worst_margin = std::min(worst_margin, margin);
      if (margin < 0.0) overlay_ok = false;
    }
  }
  result.cases.push_back({"final training loss < 1e-2 on every seed", loss_ok,
                          fmt("worst %.3e", worst_loss)});
  result.cases.push_back({"test accuracy 100%% on every seed", acc_ok,
                          fmt("worst %.1f%%", 100.0 * worst_acc)});
  result.cases.push_back(
      {"averaged-iterate envelope C/T bounds suboptimality at every epoch", overlay_ok,
       fmt("C %.1f, smallest margin %.3f", C, worst_margin)});
  return result;
}

// --------------------------------------------------------------- criterion 11

SuiteResult suite_structural() {
  SuiteResult result{11, "structural", {}};

  const auto problem = gen_least_squares_interpolated(21, 50, 5);

  // Polyak with zero momentum reproduces plain line-search SGD bit for bit
  {
    LineSearchConfig ls;
    ls.reset_option = 2;
    OptimizerOptions opts;
    opts.alpha = 0.0;
    MiniBatchSampler sa(50, 1, 42), sb(50, 1, 42);
    SgdState a = SgdState::init(problem.initial_point(7), ls);
    SgdState b = a;
    bool identical = true;
    for (int k = 0; k < 1000 && identical; ++k) {
      a = sgd_armijo_step(a, problem, sa, ls, opts);
      b = polyak_armijo_step(b, problem, sb, ls, opts);
      identical = a.w == b.w && a.eta_prev == b.eta_prev;
    }
    result.cases.push_back(
        {"polyak(alpha=0) matches sgd_armijo bit for bit over 1000 iterations", identical, ""});
  }

  // Nesterov bookkeeping sequence
  {
    LineSearchConfig ls;
    OptimizerOptions opts;
    MiniBatchSampler s(50, 1, 9);
    SgdState st = SgdState::init(problem.initial_point(3), ls);
    st = nesterov_armijo_step(st, problem, s, ls, opts);
    const double tau1 = st.tau;
    st = nesterov_armijo_step(st, problem, s, ls, opts);
    const double tau2 = st.tau;
    st = nesterov_armijo_step(st, problem, s, ls, opts);
    const double tau3 = st.tau;
    const double gold = (1.0 + std::sqrt(5.0)) / 2.0;
    const double tau3_expected = (1.0 - gold) / gold;
    const bool ok = tau1 == 0.0 && tau2 == 0.0 && std::abs(tau3 - tau3_expected) <= 1e-9;
    result.cases.push_back({"nesterov tau sequence is (0, 0, -0.3819660...)", ok,
                            fmt("tau = %.10g, %.10g, %.10g", tau1, tau2, tau3)});
  }

  // Goldstein accepted steps satisfy both inequalities exactly
  {
    LineSearchConfig ls;
    ls.c = 0.1;
    MiniBatchSampler s(50, 2, 5);
    Vector w = problem.initial_point(11);
    double eta = ls.eta_max;
    bool both_hold = true;
    for (int k = 0; k < 200; ++k) {
      const Batch batch = s.sample();
      Vector g;
      const double f_w = problem.batch_value_and_gradient(w, batch, g);
      const auto out = goldstein_search(problem, batch, w, g, f_w, eta, ls);
      const double f_trial = problem.batch_value(w - out.eta * g, batch);
      const double gg = g.squaredNorm();
      if (!(f_trial <= f_w - ls.c * out.eta * gg) ||
          !(f_trial >= f_w - (1.0 - ls.c) * out.eta * gg))
        both_hold = false;
      w -= out.eta * g;
      eta = out.eta;
    }
    result.cases.push_back(
        {"goldstein accepted steps satisfy both inequalities exactly", both_hold, ""});
  }

  // reset option 0 yields a non-increasing step-size sequence
  {
    ExperimentConfig cfg;
    cfg.name = "nonincreasing";
    cfg.problem = {{"name", "least_squares"}, {"seed", "21"}, {"n", "50"}, {"d", "5"}};
    cfg.algorithm = "sgd_armijo";
    cfg.ls.reset_option = 0;
    cfg.batch_size = 1;
    cfg.epochs = 10;
    cfg.seeds = {1};
    const RunTrace trace = run_config_single_seed(cfg, 1);
    bool non_increasing = true;
    for (std::size_t i = 1; i < trace.rows.size(); ++i)
      if (trace.rows[i].step_size > trace.rows[i - 1].step_size) non_increasing = false;
    result.cases.push_back(
        {"reset option 0: accepted steps never increase", non_increasing, ""});
  }

  // LIBSVM round-trip on generated fixtures
  {
    Rng rng(derive_stream(31, "libsvm_fixtures"));
    bool all_identical = true;
    for (int rep = 0; rep < 100 && all_identical; ++rep) {
      Dataset d;
      const int rows = 1 + rng.uniform_int(0, 19);
      for (int r = 0; r < rows; ++r) {
        d.labels.push_back(rng.uniform() < 0.5 ? -1.0 : 1.0);
        SparseRow row;
        int idx = 0;
        const int nnz = rng.uniform_int(0, 6);
        for (int t = 0; t < nnz; ++t) {
          idx += 1 + rng.uniform_int(0, 9);
          row.emplace_back(idx - 1, rng.normal());
        }
        d.num_features = std::max(d.num_features, idx);
        d.rows.push_back(std::move(row));
      }
      std::ostringstream once;
      write_libsvm(once, d);
      std::istringstream in(once.str());
      const Dataset back = parse_libsvm(in);
      std::ostringstream twice;
      write_libsvm(twice, back);
      if (once.str() != twice.str() || back.labels != d.labels || back.rows != d.rows ||
          back.num_features != d.num_features)
        all_identical = false;
    }
    result.cases.push_back({"libsvm round-trip is the identity on 100 fixtures",
                            all_identical, ""});
  }

  // finite-difference gradient checks across every generator
  {
    bool all_pass = true;
    double worst = 0.0;
    const auto check = [&](const FiniteSumOracle& oracle, std::uint64_t seed) {
      Rng rng(derive_stream(seed, "fd_points"));
      for (int rep = 0; rep < 20; ++rep) {
        const Vector w = 0.5 * rng.normal_vector(oracle.dim());
        const Batch batch{rng.uniform_int(0, oracle.components() - 1)};
        Vector g;
        oracle.batch_value_and_gradient(w, batch, g);
        Vector g_fd(w.size());
        for (Eigen::Index j = 0; j < w.size(); ++j) {
          const double h = 1e-6 * (1.0 + std::abs(w[j]));
          Vector wp = w, wm = w;
          wp[j] += h;
          wm[j] -= h;
          g_fd[j] = (oracle.batch_value(wp, batch) - oracle.batch_value(wm, batch)) / (2 * h);
        }
        const double rel = (g - g_fd).norm() / std::max(g_fd.norm(), 1e-12);
        worst = std::max(worst, rel);
        if (rel > 1e-5) all_pass = false;
      }
    };
    check(DiagQuadraticProblem({0.5, 2.0, 7.0}, 4), 51);
    check(gen_least_squares_interpolated(52, 30, 6), 52);
    check(gen_matrix_factorization(53, 40, 3), 53);
    const auto ks = rbf_kernel_problem(gen_margin_dataset_2d(54, 60, 0.3), 0.7, 0.8, 54);
    check(ks.problem, 54);
    result.cases.push_back({"finite-difference gradient checks pass at relative 1e-5",
                            all_pass, fmt("worst rel err %.2e", worst)});
  }

  return result;
}

using SuiteFn = SuiteResult (*)();

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"step-bounds", suite_step_bounds},
    {"factorization-interpolation", suite_factorization_interpolation},
    {"factorization-rank1", suite_factorization_rank1},
    {"sgd-contraction", suite_sgd_contraction},
    {"seg-bilinear-map", suite_seg_bilinear_map},
    {"bilinear-game", suite_bilinear_game},
    {"seg-factorization", suite_seg_factorization},
    {"monotone-game", suite_monotone_game},
    {"eval-budget", suite_eval_budget},
    {"kernel-convex", suite_kernel_convex},
    {"structural", suite_structural},
};

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> names;
  for (const auto& s : kSuites) names.emplace_back(s.name);
  return names;
}

SuiteResult run_suite(const std::string& name) {
  for (const auto& s : kSuites)
    if (name == s.name) return s.fn();
  throw std::invalid_argument("unknown suite '" + name + "'; use --list to see suite ids");
}

std::vector<SuiteResult> run_all_suites() {
  std::vector<SuiteResult> out;
  for (const auto& s : kSuites) out.push_back(s.fn());
  return out;
}

}  // namespace slsopt::verify
