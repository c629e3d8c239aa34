#include "slsopt/optimizers/optimizers.hpp"

#include <chrono>
#include <cmath>

namespace slsopt {

std::string algorithm_name(Algorithm alg) {
  switch (alg) {
    case Algorithm::SgdArmijo: return "sgd_armijo";
    case Algorithm::SgdGoldstein: return "sgd_goldstein";
    case Algorithm::PolyakArmijo: return "polyak_armijo";
    case Algorithm::NesterovArmijo: return "nesterov_armijo";
    case Algorithm::SegLipschitz: return "seg_lipschitz";
    case Algorithm::ConstantSgd: return "constant_sgd";
    case Algorithm::Adam: return "adam";
  }
  throw std::invalid_argument("algorithm_name: unknown algorithm");
}

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "sgd_armijo") return Algorithm::SgdArmijo;
  if (name == "sgd_goldstein") return Algorithm::SgdGoldstein;
  if (name == "polyak_armijo") return Algorithm::PolyakArmijo;
  if (name == "nesterov_armijo") return Algorithm::NesterovArmijo;
  if (name == "seg_lipschitz") return Algorithm::SegLipschitz;
  if (name == "constant_sgd") return Algorithm::ConstantSgd;
  if (name == "adam") return Algorithm::Adam;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

void OptimizerOptions::validate(Algorithm alg) const {
  if (!(alpha >= 0.0 && alpha < 1.0))
    throw std::invalid_argument("OptimizerOptions: alpha must be in [0,1)");
  if (step_cap && !(*step_cap > 0.0))
    throw std::invalid_argument("OptimizerOptions: step_cap must be > 0");
  if (independent_batch && alg != Algorithm::SgdArmijo)
    throw std::invalid_argument("OptimizerOptions: independent_batch applies to sgd_armijo only");
  if (alg == Algorithm::ConstantSgd && !(baseline_eta > 0.0))
    throw std::invalid_argument("OptimizerOptions: constant SGD needs baseline_eta > 0");
  if (alg == Algorithm::Adam) {
    if (!(adam_lr > 0.0) || !(adam_eps > 0.0))
      throw std::invalid_argument("OptimizerOptions: adam needs lr > 0 and eps > 0");
    if (!(adam_beta1 >= 0.0 && adam_beta1 < 1.0) || !(adam_beta2 >= 0.0 && adam_beta2 < 1.0))
      throw std::invalid_argument("OptimizerOptions: adam betas must be in [0,1)");
  }
}

SgdState SgdState::init(Vector w0, const LineSearchConfig& ls) {
  SgdState s;
  s.w = std::move(w0);
  s.w_prev = s.w;
  s.eta_prev = ls.eta_max;
  return s;
}

SegState SegState::init(Vector z0, const LineSearchConfig& ls) {
  SegState s;
  s.z = std::move(z0);
  s.eta_prev = ls.eta_max;
  return s;
}

AdamState AdamState::init(Vector w0) {
  AdamState s;
  s.m = Vector::Zero(w0.size());
  s.v = Vector::Zero(w0.size());
  s.w = std::move(w0);
  return s;
}

namespace {

// Armijo search shared by the SGD/Polyak/Nesterov steppers. The update
// direction is the gradient on `batch`; in independent mode the acceptance
// test runs entirely on a second batch (its own value, gradient and
// candidate evaluations), decoupling the step-size from the update gradient.
struct ArmijoPick {
  Vector g;  // update direction gradient (on the step batch)
  LineSearchOutcome out;
};

ArmijoPick pick_armijo_step(const SgdState& state, const FiniteSumOracle& oracle,
                            MiniBatchSampler& sampler, const LineSearchConfig& ls,
                            const OptimizerOptions& opts, MiniBatchSampler* ls_sampler) {
  const Batch batch = sampler.sample();
  ArmijoPick pick;
  const double f_w = oracle.batch_value_and_gradient(state.w, batch, pick.g);
  const double start =
      reset_step(state.eta_prev, ls, sampler.batch_size(), sampler.population(), state.k);
  if (opts.independent_batch) {
    if (!ls_sampler)
      throw std::invalid_argument("independent_batch mode needs a line-search sampler");
    const Batch ls_batch = ls_sampler->sample();
    Vector g_ls;
    const double f_ls = oracle.batch_value_and_gradient(state.w, ls_batch, g_ls);
    pick.out = backtrack_armijo(oracle, ls_batch, state.w, g_ls, f_ls, start, ls);
  } else {
    pick.out = backtrack_armijo(oracle, batch, state.w, pick.g, f_w, start, ls);
  }
  if (opts.step_cap) pick.out.eta = std::min(pick.out.eta, *opts.step_cap);
  return pick;
}

void check_finite(const Vector& w, long k) {
  if (!all_finite(w)) throw RunAbort(k, "non-finite iterate");
}

}  // namespace

SgdState sgd_armijo_step(SgdState state, const FiniteSumOracle& oracle,
                         MiniBatchSampler& sampler, const LineSearchConfig& ls,
                         const OptimizerOptions& opts, MiniBatchSampler* ls_sampler) {
  ArmijoPick pick = pick_armijo_step(state, oracle, sampler, ls, opts, ls_sampler);
  Vector w_next = state.w - pick.out.eta * pick.g;
  check_finite(w_next, state.k);
  state.w_prev = state.w;
  state.w = std::move(w_next);
  state.eta_prev = pick.out.eta;
  state.last_search = pick.out;
  ++state.k;
  return state;
}

SgdState sgd_goldstein_step(SgdState state, const FiniteSumOracle& oracle,
                            MiniBatchSampler& sampler, const LineSearchConfig& ls,
                            const OptimizerOptions& opts) {
  const Batch batch = sampler.sample();
  Vector g;
  const double f_w = oracle.batch_value_and_gradient(state.w, batch, g);
  // the step carries over from the previous iteration; no reset call
  LineSearchOutcome out = goldstein_search(oracle, batch, state.w, g, f_w, state.eta_prev, ls);
  if (opts.step_cap) out.eta = std::min(out.eta, *opts.step_cap);
  Vector w_next = state.w - out.eta * g;
  check_finite(w_next, state.k);
  state.w_prev = state.w;
  state.w = std::move(w_next);
  state.eta_prev = out.eta;
  state.last_search = out;
  ++state.k;
  return state;
}

SgdState polyak_armijo_step(SgdState state, const FiniteSumOracle& oracle,
                            MiniBatchSampler& sampler, const LineSearchConfig& ls,
                            const OptimizerOptions& opts) {
  ArmijoPick pick = pick_armijo_step(state, oracle, sampler, ls, opts, nullptr);
  Vector w_next = state.w - pick.out.eta * pick.g + opts.alpha * (state.w - state.w_prev);
  check_finite(w_next, state.k);
  state.w_prev = state.w;
  state.w = std::move(w_next);
  state.eta_prev = pick.out.eta;
  state.last_search = pick.out;
  ++state.k;
  return state;
}

SgdState nesterov_armijo_step(SgdState state, const FiniteSumOracle& oracle,
                              MiniBatchSampler& sampler, const LineSearchConfig& ls,
                              const OptimizerOptions& opts) {
  ArmijoPick pick = pick_armijo_step(state, oracle, sampler, ls, opts, nullptr);
  const Vector w_grad_step = state.w - pick.out.eta * pick.g;
  Vector w_next = (1.0 - state.tau) * w_grad_step + state.tau * state.w;
  check_finite(w_next, state.k);
  state.w_prev = state.w;
  state.w = std::move(w_next);
  // bookkeeping, exactly in this order
  const double temp = state.lambda;
  state.lambda = (1.0 + std::sqrt(1.0 + 4.0 * state.lambda_prev * state.lambda_prev)) / 2.0;
  state.lambda_prev = temp;
  state.tau = (1.0 - state.lambda_prev) / state.lambda;
  state.eta_prev = pick.out.eta;
  state.last_search = pick.out;
  ++state.k;
  return state;
}

SgdState constant_sgd_step(SgdState state, const FiniteSumOracle& oracle,
                           MiniBatchSampler& sampler, const OptimizerOptions& opts) {
  const Batch batch = sampler.sample();
  Vector g;
  oracle.batch_value_and_gradient(state.w, batch, g);
  Vector w_next = state.w - opts.baseline_eta * g;
  check_finite(w_next, state.k);
  state.w_prev = state.w;
  state.w = std::move(w_next);
  state.eta_prev = opts.baseline_eta;
  state.last_search = {opts.baseline_eta, 0, false};
  ++state.k;
  return state;
}

AdamState adam_step(AdamState state, const FiniteSumOracle& oracle, MiniBatchSampler& sampler,
                    const OptimizerOptions& opts) {
  const Batch batch = sampler.sample();
  Vector g;
  oracle.batch_value_and_gradient(state.w, batch, g);
  ++state.t;
  state.m = opts.adam_beta1 * state.m + (1.0 - opts.adam_beta1) * g;
  state.v = opts.adam_beta2 * state.v + (1.0 - opts.adam_beta2) * g.cwiseProduct(g);
  const double bc1 = 1.0 - std::pow(opts.adam_beta1, static_cast<double>(state.t));
  const double bc2 = 1.0 - std::pow(opts.adam_beta2, static_cast<double>(state.t));
  const Vector m_hat = state.m / bc1;
  const Vector v_hat = state.v / bc2;
  const Vector denom = v_hat.cwiseSqrt() + Vector::Constant(state.w.size(), opts.adam_eps);
  Vector w_next = state.w - opts.adam_lr * m_hat.cwiseQuotient(denom);
  check_finite(w_next, state.t);
  state.w = std::move(w_next);
  return state;
}

namespace {

class TraceRecorder {
 public:
  TraceRecorder(std::uint64_t seed, int b, int n, double initial_loss,
                std::function<double(const Vector&)> metric)
      : b_(b), n_(n), last_loss_(initial_loss), metric_(std::move(metric)),
        start_(std::chrono::steady_clock::now()) {
    trace_.seed = seed;
  }

  template <class FullLoss>
  void record(long k, const Vector& iterate, double eta, const LineSearchOutcome& search,
              const EvalCounts& counts, const std::optional<Vector>& solution,
              FullLoss&& full_loss) {
    const long epoch = epoch_of(k, b_, n_);
    if (epoch > last_epoch_) {
      last_loss_ = full_loss(iterate);
      if (metric_) last_metric_ = metric_(iterate);
      last_epoch_ = epoch;
    }
    TraceRow row;
    row.iter = k;
    row.epoch = epoch;
    row.train_loss = last_loss_;
    row.test_metric = last_metric_;
    row.step_size = eta;
    row.fn_evals = counts.fn;
    row.grad_evals = counts.grad;
    if (solution) row.dist_sq = squared_distance(iterate, *solution);
    row.wall_secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    row.condition_evals = search.condition_evals;
    row.hit_floor = search.hit_floor;
    trace_.rows.push_back(std::move(row));
  }

  RunTrace take() { return std::move(trace_); }

 private:
  int b_, n_;
  long last_epoch_ = 0;
  double last_loss_;
  std::optional<double> last_metric_;
  std::function<double(const Vector&)> metric_;
  std::chrono::steady_clock::time_point start_;
  RunTrace trace_;
};

}  // namespace

RunTrace run(Algorithm alg, const FiniteSumOracle& oracle, const RunConfig& config) {
  config.ls.validate(alg == Algorithm::SgdGoldstein);
  config.opts.validate(alg);
  if (config.iterations < 1) throw std::invalid_argument("run: iteration budget must be >= 1");
  if (config.w0.size() != oracle.dim())
    throw std::invalid_argument("run: starting point dimension mismatch");

  EvalCounts counts;
  CountingOracle counted(oracle, counts);
  const int n = oracle.components();
  MiniBatchSampler sampler(n, config.batch_size, derive_stream(config.seed, "batch"));
  MiniBatchSampler ls_sampler(n, config.batch_size, derive_stream(config.seed, "linesearch"));

  const auto solution = oracle.solution();
  TraceRecorder rec(config.seed, config.batch_size, n, oracle.full_value(config.w0),
                    config.test_metric);
  const auto full_loss = [&](const Vector& w) { return oracle.full_value(w); };

  if (alg == Algorithm::SegLipschitz) {
    const auto op = [&](const Vector& z, const Batch& batch) {
      return counted.batch_gradient(z, batch);
    };
    SegState state = SegState::init(config.w0, config.ls);
    for (long k = 1; k <= config.iterations; ++k) {
      state = seg_lipschitz_step(state, op, sampler, config.ls, config.opts);
      rec.record(k, state.z, state.eta_prev, state.last_search, counts, solution, full_loss);
    }
    return rec.take();
  }

  if (alg == Algorithm::Adam) {
    AdamState state = AdamState::init(config.w0);
    for (long k = 1; k <= config.iterations; ++k) {
      state = adam_step(state, counted, sampler, config.opts);
      rec.record(k, state.w, config.opts.adam_lr, {config.opts.adam_lr, 0, false}, counts,
                 solution, full_loss);
    }
    return rec.take();
  }

  SgdState state = SgdState::init(config.w0, config.ls);
  for (long k = 1; k <= config.iterations; ++k) {
    switch (alg) {
      case Algorithm::SgdArmijo:
        state = sgd_armijo_step(state, counted, sampler, config.ls, config.opts, &ls_sampler);
        break;
      case Algorithm::SgdGoldstein:
        state = sgd_goldstein_step(state, counted, sampler, config.ls, config.opts);
        break;
      case Algorithm::PolyakArmijo:
        state = polyak_armijo_step(state, counted, sampler, config.ls, config.opts);
        break;
      case Algorithm::NesterovArmijo:
        state = nesterov_armijo_step(state, counted, sampler, config.ls, config.opts);
        break;
      case Algorithm::ConstantSgd:
        state = constant_sgd_step(state, counted, sampler, config.opts);
        break;
      default:
        throw std::invalid_argument("run: unsupported algorithm");
    }
    rec.record(k, state.w, state.eta_prev, state.last_search, counts, solution, full_loss);
  }
  return rec.take();
}

RunTrace run(const SaddleOracle& saddle, const RunConfig& config) {
  config.ls.validate(false);
  config.opts.validate(Algorithm::SegLipschitz);
  if (config.iterations < 1) throw std::invalid_argument("run: iteration budget must be >= 1");
  if (config.w0.size() != saddle.dim())
    throw std::invalid_argument("run: starting point dimension mismatch");

  EvalCounts counts;
  CountingSaddle counted(saddle, counts);
  const int n = saddle.components();
  MiniBatchSampler sampler(n, config.batch_size, derive_stream(config.seed, "batch"));
  const auto solution = saddle.solution();

  const auto op = [&](const Vector& z, const Batch& batch) {
    return counted.batch_operator(z, batch);
  };
  // saddle problems have no scalar loss; trace the squared operator norm of
  // the averaged operator at epoch boundaries instead
  const Batch all = full_batch(n);
  const auto full_loss = [&](const Vector& z) {
    return saddle.batch_operator(z, all).squaredNorm();
  };

  TraceRecorder rec(config.seed, config.batch_size, n, full_loss(config.w0),
                    config.test_metric);
  SegState state = SegState::init(config.w0, config.ls);
  for (long k = 1; k <= config.iterations; ++k) {
    state = seg_lipschitz_step(state, op, sampler, config.ls, config.opts);
    rec.record(k, state.z, state.eta_prev, state.last_search, counts, solution, full_loss);
  }
  return rec.take();
}

}  // namespace slsopt
