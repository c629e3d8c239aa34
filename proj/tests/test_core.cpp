#include "slsopt/core/oracle.hpp"
#include "slsopt/core/rng.hpp"
#include "slsopt/core/types.hpp"
#include "slsopt/problems/diag_quadratic.hpp"
#include "slsopt/problems/least_squares.hpp"

#include <doctest.h>

#include <array>
#include <cmath>

using namespace slsopt;

TEST_CASE("squared_distance") {
  Vector w(2), v(2);
  w << 1, 0;
  v << 0, 1;
  CHECK(squared_distance(w, w) == 0.0);
  CHECK(squared_distance(w, v) == 2.0);
  Vector a(2), b(2);
  a << 3, 4;
  b << 0, 0;
  CHECK(squared_distance(a, b) == 25.0);
  Vector c(3);
  CHECK_THROWS_AS(squared_distance(w, c), std::invalid_argument);
}

TEST_CASE("epoch_of") {
  CHECK(epoch_of(0, 100, 1000) == 0);
  CHECK(epoch_of(9, 100, 1000) == 0);
  CHECK(epoch_of(10, 100, 1000) == 1);
  CHECK(epoch_of(25, 100, 1000) == 2);
  CHECK_THROWS_AS(epoch_of(1, 0, 10), std::invalid_argument);
}

TEST_CASE("sampler basics") {
  SUBCASE("n=1 always yields index 0") {
    MiniBatchSampler s(1, 1, 123);
    for (int i = 0; i < 10; ++i) CHECK(s.sample() == Batch{0});
  }
  SUBCASE("equal seeds give identical streams") {
    MiniBatchSampler a(1000, 100, 42), b(1000, 100, 42);
    for (int i = 0; i < 5; ++i) CHECK(a.sample() == b.sample());
  }
  SUBCASE("preconditions enforced at construction") {
    CHECK_THROWS_AS(MiniBatchSampler(0, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS(MiniBatchSampler(10, 0, 0), std::invalid_argument);
    CHECK_THROWS_AS(MiniBatchSampler(10, 11, 0), std::invalid_argument);
  }
}

TEST_CASE("sampler is uniform with replacement") {
  // 100000 singleton draws over n = 10: every frequency stays within five
  // binomial standard deviations of 10000 (sigma = sqrt(1e5 * .1 * .9))
  MiniBatchSampler s(10, 1, 7);
  std::array<long, 10> counts{};
  for (int i = 0; i < 100000; ++i) ++counts[static_cast<std::size_t>(s.sample()[0])];
  const double sigma = std::sqrt(100000 * 0.1 * 0.9);
  for (long c : counts) CHECK(std::abs(c - 10000.0) <= 5.0 * sigma);
}

TEST_CASE("stream derivation decorrelates substreams") {
  const auto a = derive_stream(1, "batch");
  const auto b = derive_stream(1, "linesearch");
  const auto c = derive_stream(2, "batch");
  CHECK(a != b);
  CHECK(a != c);
  CHECK(derive_stream(1, "batch") == a);
}

TEST_CASE("full-batch value matches full_value") {
  const auto p = gen_least_squares_interpolated(5, 40, 6);
  Rng rng(3);
  const Vector w = rng.normal_vector(6);
  const double fb = p.batch_value(w, full_batch(40));
  const double fv = p.full_value(w);
  CHECK(std::abs(fb - fv) <= 1e-12 * std::max(1.0, std::abs(fv)));
}

TEST_CASE("batch_gradient is deterministic") {
  const auto p = gen_least_squares_interpolated(9, 30, 4);
  Rng rng(4);
  const Vector w = rng.normal_vector(4);
  const Batch batch{3, 7, 7, 11};
  const Vector g1 = p.batch_gradient(w, batch);
  const Vector g2 = p.batch_gradient(w, batch);
  CHECK(g1 == g2);
}

TEST_CASE("counting oracle charges calls") {
  DiagQuadraticProblem p({1.0}, 1);
  EvalCounts counts;
  CountingOracle counted(p, counts);
  Vector w(1), g;
  w << 2.0;
  counted.batch_value(w, {0});
  CHECK(counts.fn == 1);
  CHECK(counts.grad == 0);
  counted.batch_value_and_gradient(w, {0}, g);
  CHECK(counts.grad == 1);
  counted.full_value(w);  // trace-only, never counted
  CHECK(counts.fn == 1);
}
