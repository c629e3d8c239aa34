#include "slsopt/optimizers/optimizers.hpp"
#include "slsopt/problems/diag_quadratic.hpp"
#include "slsopt/problems/least_squares.hpp"

#include <doctest.h>

#include <cmath>

using namespace slsopt;

namespace {

LeastSquaresProblem shifted_quadratic(double x, double target) {
  // single component 0.5 (x w - x target)^2
  Matrix X(1, 1);
  X << x;
  Vector w_star(1);
  w_star << target;
  return LeastSquaresProblem(X, w_star);
}

}  // namespace

TEST_CASE("sgd_armijo_step reaches the minimizer of 0.5 w^2 in one step") {
  DiagQuadraticProblem p({1.0}, 1);
  LineSearchConfig ls;
  ls.c = 0.5;
  ls.eta_max = 1.0;
  OptimizerOptions opts;
  MiniBatchSampler sampler(1, 1, 0);
  Vector w0(1);
  w0 << 1.0;
  SgdState s = SgdState::init(w0, ls);
  s = sgd_armijo_step(s, p, sampler, ls, opts);
  CHECK(s.eta_prev == 1.0);
  CHECK(s.w[0] == 0.0);
  CHECK(s.k == 2);
}

TEST_CASE("two identical shifted components behave like the deterministic step") {
  // f_i(w) = 0.5 (w - 1)^2 for both components; from w = 3 the gradient is 2
  Matrix X(2, 1);
  X << 1, 1;
  Vector w_star(1);
  w_star << 1.0;
  LeastSquaresProblem p(X, w_star);
  LineSearchConfig ls;
  ls.c = 0.5;
  ls.eta_max = 1.0;
  OptimizerOptions opts;
  MiniBatchSampler sampler(2, 1, 4);
  Vector w0(1);
  w0 << 3.0;
  SgdState s = SgdState::init(w0, ls);
  s = sgd_armijo_step(s, p, sampler, ls, opts);
  CHECK(s.eta_prev == 1.0);
  CHECK(s.w[0] == 1.0);
}

TEST_CASE("zero gradient leaves the iterate unchanged") {
  DiagQuadraticProblem p({2.0}, 2);
  LineSearchConfig ls;
  OptimizerOptions opts;
  MiniBatchSampler sampler(1, 1, 0);
  SgdState s = SgdState::init(Vector::Zero(2), ls);
  s = sgd_armijo_step(s, p, sampler, ls, opts);
  CHECK(s.w == Vector::Zero(2));
  CHECK(s.eta_prev == ls.eta_max);  // the reset value is accepted
}

TEST_CASE("goldstein stepper carries eta across iterations") {
  DiagQuadraticProblem p({1.0}, 1);
  LineSearchConfig ls;
  ls.c = 0.1;
  ls.gamma = 1.5;
  ls.eta_max = 1.0;
  OptimizerOptions opts;
  MiniBatchSampler sampler(1, 1, 0);
  Vector w0(1);
  w0 << 1.0;
  SgdState s = SgdState::init(w0, ls);
  s = sgd_goldstein_step(s, p, sampler, ls, opts);
  CHECK(s.eta_prev == 1.0);  // window at w=1 is [0.2, 1.8]
  CHECK(s.w[0] == 0.0);
}

TEST_CASE("goldstein forward search from a small carried step") {
  DiagQuadraticProblem p({1.0}, 1);
  LineSearchConfig ls;
  ls.c = 0.1;
  ls.gamma = 1.5;
  ls.eta_max = 1.0;
  OptimizerOptions opts;
  MiniBatchSampler sampler(1, 1, 0);
  Vector w0(1);
  w0 << 1.0;
  SgdState s = SgdState::init(w0, ls);
  s.eta_prev = 0.05;
  s = sgd_goldstein_step(s, p, sampler, ls, opts);
  CHECK(s.eta_prev == doctest::Approx(0.253125));
  CHECK(s.w[0] == doctest::Approx(1.0 - 0.253125));
}

TEST_CASE("polyak momentum update") {
  SUBCASE("direct substitution") {
    // gradient 1 at w = 1, accepted eta = 1, w_prev = 0, alpha = 0.5
    auto p = shifted_quadratic(1.0, 0.0);
    LineSearchConfig ls;
    ls.c = 0.1;
    ls.eta_max = 1.0;
    OptimizerOptions opts;
    opts.alpha = 0.5;
    MiniBatchSampler sampler(1, 1, 0);
    Vector w0(1);
    w0 << 1.0;
    SgdState s = SgdState::init(w0, ls);
    s.w_prev = Vector::Zero(1);
    s = polyak_armijo_step(s, p, sampler, ls, opts);
    CHECK(s.w[0] == 0.5);  // 1 - 1*1 + 0.5*(1 - 0)
  }
  SUBCASE("first iteration has no momentum by initialization") {
    auto p = shifted_quadratic(1.0, 0.0);
    LineSearchConfig ls;
    OptimizerOptions with_momentum, without;
    with_momentum.alpha = 0.9;
    MiniBatchSampler s1(1, 1, 0), s2(1, 1, 0);
    Vector w0(1);
    w0 << 2.0;
    SgdState a = polyak_armijo_step(SgdState::init(w0, ls), p, s1, ls, with_momentum);
    SgdState b = sgd_armijo_step(SgdState::init(w0, ls), p, s2, ls, without);
    CHECK(a.w == b.w);
  }
}

TEST_CASE("nesterov bookkeeping and first update") {
  const auto p = gen_least_squares_interpolated(17, 20, 3);
  LineSearchConfig ls;
  OptimizerOptions opts;
  MiniBatchSampler sampler(20, 1, 8);
  SgdState s = SgdState::init(p.initial_point(1), ls);
  const Vector w0 = s.w;
  CHECK(s.tau == 1.0);
  s = nesterov_armijo_step(s, p, sampler, ls, opts);
  // tau = 1 makes the first accelerated combination return w unchanged
  CHECK(s.w == w0);
  CHECK(s.lambda == 1.0);
  CHECK(s.lambda_prev == 1.0);
  CHECK(s.tau == 0.0);
  s = nesterov_armijo_step(s, p, sampler, ls, opts);
  CHECK(s.lambda == doctest::Approx(1.6180340).epsilon(1e-7));
  CHECK(s.lambda_prev == 1.0);
  CHECK(s.tau == 0.0);
  s = nesterov_armijo_step(s, p, sampler, ls, opts);
  CHECK(s.lambda == doctest::Approx(1.6180340).epsilon(1e-7));
  CHECK(s.lambda_prev == doctest::Approx(1.6180340).epsilon(1e-7));
  CHECK(s.tau == doctest::Approx(-0.3819660).epsilon(1e-7));
}

TEST_CASE("extra-gradient closed forms") {
  SUBCASE("gradient operator of 0.5 w^2 contracts by 1 - eta + eta^2") {
    DiagQuadraticProblem p({1.0}, 1);
    const auto op = [&](const Vector& z, const Batch& b) { return p.batch_gradient(z, b); };
    LineSearchConfig ls;
    ls.c = 0.6;       // acceptance is eta <= c for this operator
    ls.eta_max = 0.5; // so the first candidate 0.5 is accepted
    OptimizerOptions opts;
    MiniBatchSampler sampler(1, 1, 0);
    Vector z0(1);
    z0 << 1.0;
    SegState s = SegState::init(z0, ls);
    s = seg_lipschitz_step(s, op, sampler, ls, opts);
    CHECK(s.eta_prev == 0.5);
    CHECK(s.z[0] == doctest::Approx(0.75).epsilon(1e-15));
  }
  SUBCASE("zero operator leaves z unchanged") {
    const auto op = [](const Vector& z, const Batch&) { return Vector(Vector::Zero(z.size())); };
    LineSearchConfig ls;
    OptimizerOptions opts;
    MiniBatchSampler sampler(1, 1, 0);
    SegState s = SegState::init(Vector::Ones(3), ls);
    s = seg_lipschitz_step(s, op, sampler, ls, opts);
    CHECK(s.z == Vector::Ones(3));
  }
}

TEST_CASE("constant step and adam") {
  SUBCASE("constant step arithmetic") {
    auto p = shifted_quadratic(2.0, 0.0);  // gradient at w: 4w
    OptimizerOptions opts;
    opts.baseline_eta = 0.1;
    MiniBatchSampler sampler(1, 1, 0);
    Vector w0(1);
    w0 << 1.0;
    SgdState s = SgdState::init(w0, LineSearchConfig{});
    s = constant_sgd_step(s, p, sampler, opts);
    CHECK(s.w[0] == doctest::Approx(0.6).epsilon(1e-15));
  }
  SUBCASE("baseline_eta = 0 is rejected at validation") {
    OptimizerOptions opts;
    opts.baseline_eta = 0.0;
    CHECK_THROWS_AS(opts.validate(Algorithm::ConstantSgd), std::invalid_argument);
  }
  SUBCASE("first adam step moves by lr/(1+eps)") {
    auto p = shifted_quadratic(1.0, 4.0);  // gradient at w=5 is exactly 1
    OptimizerOptions opts;
    MiniBatchSampler sampler(1, 1, 0);
    Vector w0(1);
    w0 << 5.0;
    AdamState s = AdamState::init(w0);
    s = adam_step(s, p, sampler, opts);
    CHECK(s.w[0] == doctest::Approx(5.0 - 1e-3 / (1.0 + 1e-8)).epsilon(1e-15));
  }
  SUBCASE("adam never moves on zero gradients") {
    DiagQuadraticProblem p({1.0}, 2);
    OptimizerOptions opts;
    MiniBatchSampler sampler(1, 1, 0);
    AdamState s = AdamState::init(Vector::Zero(2));
    for (int i = 0; i < 5; ++i) s = adam_step(s, p, sampler, opts);
    CHECK(s.w == Vector::Zero(2));
  }
}

TEST_CASE("step cap binds every accepted step") {
  const auto p = gen_least_squares_interpolated(3, 30, 4);
  RunConfig rc;
  rc.ls.c = 0.1;
  rc.ls.eta_max = 1.0;
  rc.opts.step_cap = 0.05;
  rc.batch_size = 1;
  rc.iterations = 200;
  rc.seed = 1;
  rc.w0 = p.initial_point(2);
  const RunTrace trace = run(Algorithm::SgdArmijo, p, rc);
  for (const auto& r : trace.rows) CHECK(r.step_size <= 0.05);
}

TEST_CASE("independent batch mode searches on its own stream") {
  // probe oracle recording which batches feed values vs gradients
  class ProbeOracle final : public FiniteSumOracle {
   public:
    explicit ProbeOracle(const FiniteSumOracle& inner) : inner_(inner) {}
    int components() const override { return inner_.components(); }
    int dim() const override { return inner_.dim(); }
    double batch_value(const Vector& w, const Batch& b) const override {
      value_batches.push_back(b);
      return inner_.batch_value(w, b);
    }
    double batch_value_and_gradient(const Vector& w, const Batch& b,
                                    Vector& g) const override {
      gradient_batches.push_back(b);
      return inner_.batch_value_and_gradient(w, b, g);
    }
    mutable std::vector<Batch> value_batches, gradient_batches;

   private:
    const FiniteSumOracle& inner_;
  };

  const auto inner = gen_least_squares_interpolated(5, 100, 4);
  ProbeOracle probe(inner);
  LineSearchConfig ls;
  OptimizerOptions opts;
  opts.independent_batch = true;
  MiniBatchSampler sampler(100, 5, derive_stream(9, "batch"));
  MiniBatchSampler ls_sampler(100, 5, derive_stream(9, "linesearch"));
  SgdState s = SgdState::init(inner.initial_point(1), ls);
  s = sgd_armijo_step(s, probe, sampler, ls, opts, &ls_sampler);

  REQUIRE(probe.gradient_batches.size() == 2);  // step batch, then search batch
  CHECK(probe.gradient_batches[0] != probe.gradient_batches[1]);
  for (const auto& b : probe.value_batches) CHECK(b == probe.gradient_batches[1]);
  CHECK_THROWS_AS(sgd_armijo_step(s, probe, sampler, ls, opts, nullptr),
                  std::invalid_argument);
}

TEST_CASE("armijo post-condition holds at every accepted step of a run") {
  const auto p = gen_least_squares_interpolated(13, 60, 5);
  LineSearchConfig ls;
  ls.c = 0.1;
  ls.reset_option = 2;
  OptimizerOptions opts;
  MiniBatchSampler sampler(60, 3, 77);
  MiniBatchSampler replay(60, 3, 77);
  SgdState s = SgdState::init(p.initial_point(6), ls);
  for (int k = 0; k < 300; ++k) {
    const Vector w_before = s.w;
    s = sgd_armijo_step(s, p, sampler, ls, opts);
    const Batch batch = replay.sample();
    Vector g;
    const double f_w = p.batch_value_and_gradient(w_before, batch, g);
    CHECK(armijo_holds(p, batch, w_before, g, f_w, s.eta_prev, ls.c));
  }
}

TEST_CASE("runner") {
  SUBCASE("budget must be positive") {
    DiagQuadraticProblem p({1.0}, 1);
    RunConfig rc;
    rc.iterations = 0;
    rc.w0 = Vector::Ones(1);
    CHECK_THROWS_AS(run(Algorithm::SgdArmijo, p, rc), std::invalid_argument);
  }
  SUBCASE("one-component quadratic reaches zero loss at epoch 1") {
    DiagQuadraticProblem p({1.0}, 1);
    RunConfig rc;
    rc.ls.c = 0.5;
    rc.batch_size = 1;
    rc.iterations = 1;
    rc.w0 = Vector::Ones(1);
    const RunTrace trace = run(Algorithm::SgdArmijo, p, rc);
    REQUIRE(trace.rows.size() == 1);
    CHECK(trace.rows[0].iter == 1);
    CHECK(trace.rows[0].epoch == 1);
    CHECK(trace.rows[0].step_size == 1.0);
    CHECK(trace.rows[0].train_loss == 0.0);
    CHECK(*trace.rows[0].dist_sq == 0.0);
    // one gradient (with its forward pass) plus one condition check
    CHECK(trace.rows[0].grad_evals == 1);
    CHECK(trace.rows[0].fn_evals == 1);
  }
  SUBCASE("evaluation counters are non-decreasing") {
    const auto p = gen_least_squares_interpolated(23, 40, 4);
    RunConfig rc;
    rc.batch_size = 4;
    rc.iterations = 100;
    rc.seed = 3;
    rc.w0 = p.initial_point(3);
    const RunTrace trace = run(Algorithm::SgdGoldstein, p, rc);
    for (std::size_t i = 1; i < trace.rows.size(); ++i) {
      CHECK(trace.rows[i].fn_evals >= trace.rows[i - 1].fn_evals);
      CHECK(trace.rows[i].grad_evals >= trace.rows[i - 1].grad_evals);
    }
  }
  SUBCASE("non-finite iterates abort with the iteration index") {
    DiagQuadraticProblem p({1.0}, 1);
    RunConfig rc;
    rc.opts.baseline_eta = 1e308;
    rc.batch_size = 1;
    rc.iterations = 10;
    rc.w0 = Vector::Ones(1);
    CHECK_THROWS_AS(run(Algorithm::ConstantSgd, p, rc), RunAbort);
  }
}

TEST_CASE("algorithm names round-trip") {
  for (auto alg : {Algorithm::SgdArmijo, Algorithm::SgdGoldstein, Algorithm::PolyakArmijo,
                   Algorithm::NesterovArmijo, Algorithm::SegLipschitz, Algorithm::ConstantSgd,
                   Algorithm::Adam})
    CHECK(algorithm_from_name(algorithm_name(alg)) == alg);
  CHECK_THROWS_AS(algorithm_from_name("bogus"), std::invalid_argument);
}
