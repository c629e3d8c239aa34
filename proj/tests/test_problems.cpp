#include "slsopt/problems/diag_quadratic.hpp"
#include "slsopt/problems/games.hpp"
#include "slsopt/problems/kernel.hpp"
#include "slsopt/problems/least_squares.hpp"
#include "slsopt/problems/matrix_factorization.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <doctest.h>

#include <cmath>

using namespace slsopt;

TEST_CASE("diag quadratic") {
  DiagQuadraticProblem p({4.0, 1.0}, 3);
  Rng rng(1);
  const Vector w = rng.normal_vector(3);
  Vector g;
  SUBCASE("gradient is exactly L_i w on singleton batches") {
    p.batch_value_and_gradient(w, {0}, g);
    CHECK(g == Vector(4.0 * w));
    p.batch_value_and_gradient(w, {1}, g);
    CHECK(g == w);
  }
  SUBCASE("solution is the origin with zero value") {
    CHECK(p.solution().value() == Vector::Zero(3));
    CHECK(p.full_value(Vector::Zero(3)) == 0.0);
  }
  SUBCASE("exposed constants") {
    CHECK(p.lipschitz_constants().value()[0] == 4.0);
    CHECK(p.strong_convexity().value() == 2.5);
  }
  SUBCASE("invalid construction") {
    CHECK_THROWS_AS(DiagQuadraticProblem({}, 1), std::invalid_argument);
    CHECK_THROWS_AS(DiagQuadraticProblem({-1.0}, 1), std::invalid_argument);
  }
}

TEST_CASE("interpolated least squares") {
  SUBCASE("hand-built single row: f(w) = 0.5 (2w - 6)^2") {
    Matrix X(1, 1);
    X << 2.0;
    Vector ws(1);
    ws << 3.0;
    LeastSquaresProblem p(X, ws);
    Vector w(1);
    w << 0.0;
    CHECK(p.batch_value(w, {0}) == 18.0);
    CHECK(p.lipschitz_constants().value()[0] == 4.0);
    CHECK(p.strong_convexity().value() == doctest::Approx(4.0).epsilon(1e-12));
  }
  SUBCASE("every component vanishes at the planted solution") {
    const auto p = gen_least_squares_interpolated(11, 50, 8);
    const Vector ws = p.solution().value();
    CHECK(p.full_value(ws) == 0.0);
    for (int i = 0; i < 50; ++i) {
      Vector g;
      CHECK(p.batch_value_and_gradient(ws, {i}, g) == 0.0);
      CHECK(g.norm() <= 1e-8);
    }
  }
  SUBCASE("exposed mu matches an independent singular-value route") {
    const auto p = gen_least_squares_interpolated(11, 50, 8);
    const Vector sv =
        Eigen::JacobiSVD<Matrix>(p.design() / std::sqrt(50.0)).singularValues();
    const double mu_svd = sv.minCoeff() * sv.minCoeff();
    CHECK(p.strong_convexity().value() ==
          doctest::Approx(mu_svd).epsilon(1e-8));
  }
  SUBCASE("n >= d required") {
    CHECK_THROWS_AS(gen_least_squares_interpolated(1, 3, 5), std::invalid_argument);
  }
}

TEST_CASE("matrix factorization target is conditioned at 1e10") {
  const auto p = gen_matrix_factorization(1, 10, 3);
  // measure in extended precision so the certificate is not measurement-bound
  using LongMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  const LongMatrix A = p.target().cast<long double>();
  Eigen::JacobiSVD<LongMatrix> svd(A);
  const long double kappa = svd.singularValues()(0) / svd.singularValues()(5);
  CHECK(std::abs(static_cast<double>(kappa / 1e10L) - 1.0) <= 1e-6);
}

TEST_CASE("matrix factorization oracle") {
  const auto p = gen_matrix_factorization(2, 50, 6);
  SUBCASE("an exact factorization zeroes every component and gradient") {
    // W1 = I keeps W1*x bitwise equal to x, so W2 = A reproduces A*x exactly
    const Vector w = p.pack(Matrix::Identity(6, 6), p.target());
    for (int j = 0; j < 10; ++j) {
      Vector g;
      CHECK(p.batch_value_and_gradient(w, {j}, g) == 0.0);
      CHECK(g == Vector::Zero(p.dim()));
    }
  }
  SUBCASE("loss is invariant to the orthogonal factor ambiguity") {
    Rng rng(5);
    const Matrix W1 = rng.normal_matrix(6, 6);
    const Matrix W2 = rng.normal_matrix(10, 6);
    const Matrix Q =
        Eigen::HouseholderQR<Matrix>(rng.normal_matrix(6, 6)).householderQ();
    const double f = p.full_value(p.pack(W1, W2));
    const double f_rot = p.full_value(p.pack(Q * W1, W2 * Q.transpose()));
    CHECK(f_rot == doctest::Approx(f).epsilon(1e-10));
  }
  SUBCASE("packing round-trips") {
    Rng rng(6);
    const Matrix W1 = rng.normal_matrix(6, 6);
    const Matrix W2 = rng.normal_matrix(10, 6);
    const Vector w = p.pack(W1, W2);
    CHECK(p.unpack_w1(w) == W1);
    CHECK(p.unpack_w2(w) == W2);
  }
  SUBCASE("rank bounds enforced") {
    CHECK_THROWS_AS(gen_matrix_factorization(1, 10, 0), std::invalid_argument);
    CHECK_THROWS_AS(gen_matrix_factorization(1, 10, 11), std::invalid_argument);
  }
}

TEST_CASE("rbf kernel problem") {
  const Dataset data = gen_margin_dataset_2d(3, 80, 0.4);
  const KernelSplit split = rbf_kernel_problem(data, 0.5, 0.8, 3);
  const auto& p = split.problem;
  const auto& K = p.gram();

  SUBCASE("gram diagonal is one and symmetry is bit-exact") {
    for (Eigen::Index i = 0; i < K.rows(); ++i) CHECK(K(i, i) == 1.0);
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("zero weights give log 2 everywhere") {
    const Vector w = Vector::Zero(p.dim());
    CHECK(p.batch_value(w, {0, 5}) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
    CHECK(p.full_value(w) == doctest::Approx(0.6931472).epsilon(1e-7));
  }
  SUBCASE("bandwidth must be positive") {
    CHECK_THROWS_AS(rbf_kernel_problem(data, 0.0, 0.8, 3), std::invalid_argument);
    CHECK_THROWS_AS(rbf_kernel_problem(data, -1.0, 0.8, 3), std::invalid_argument);
  }
  SUBCASE("margin dataset keeps the classes separated") {
    double closest = 1e300;
    for (std::size_t i = 0; i < data.rows.size(); ++i)
      for (std::size_t j = 0; j < data.rows.size(); ++j)
        if (data.labels[i] != data.labels[j])
          closest = std::min(closest, sparse_squared_distance(data.rows[i], data.rows[j]));
    CHECK(std::sqrt(closest) >= 0.4);
  }
}

TEST_CASE("bilinear game") {
  SUBCASE("d=1 operator formula") {
    Matrix b(1, 1), c(1, 1);
    b << 0.25;
    c << -0.5;
    BilinearGameProblem game(b, c, std::nullopt);
    Vector z(2);
    z << 2.0, 3.0;
    const Vector F = game.batch_operator(z, {0});
    CHECK(F[0] == 3.0 - 0.25);     // A_1 y - b = y - b
    CHECK(F[1] == -(2.0 - -0.5));  // -(A_1^T x - c)
  }
  SUBCASE("interpolated instances zero every component at z*") {
    const auto game = gen_bilinear_game(4, 50, 50, true);
    const Vector zs = game.solution().value();
    double worst = 0.0;
    for (int i = 0; i < 50; ++i)
      worst = std::max(worst, game.batch_operator(zs, {i}).norm());
    CHECK(worst <= 1e-10);
  }
  SUBCASE("averaged operator is orthogonal to z - z* on interpolated instances") {
    const auto game = gen_bilinear_game(4, 20, 20, true);
    const Vector zs = game.solution().value();
    const Batch all = full_batch(20);
    Rng rng(8);
    for (int t = 0; t < 20; ++t) {
      const Vector z = rng.normal_vector(40);
      const double ip = game.batch_operator(z, all).dot(z - zs);
      CHECK(std::abs(ip) <= 1e-12 * std::max(1.0, z.squaredNorm()));
    }
  }
  SUBCASE("sigma bounds reflect the delta construction") {
    const auto game = gen_bilinear_game(4, 25, 25, false);
    const auto sb = game.sigma_bounds().value();
    CHECK(sb.sigma_min_mean == doctest::Approx(1.0 / 25.0));
    CHECK(sb.sigma_max_component == 1.0);
  }
  SUBCASE("the delta construction requires n == d") {
    CHECK_THROWS_AS(gen_bilinear_game(1, 4, 5, true), std::invalid_argument);
  }
}

TEST_CASE("strongly monotone game") {
  SUBCASE("d=1 hand construction: F(z) = 2 (z - 1)") {
    std::vector<Matrix> M{(Matrix(1, 1) << 2.0).finished()};
    Vector zs(1);
    zs << 1.0;
    StronglyMonotoneGameProblem game(std::move(M), zs);
    Vector z(1);
    z << 4.0;
    CHECK(game.batch_operator(z, {0})[0] == 6.0);
    CHECK(game.component_mu(0) == 2.0);
  }
  SUBCASE("every component vanishes at z*") {
    const auto game = gen_strongly_monotone_game(6, 10, 30, 0.2);
    const Vector zs = game.solution().value();
    for (int i = 0; i < 30; ++i) CHECK(game.batch_operator(zs, {i}).norm() <= 1e-10);
  }
  SUBCASE("averaged operator is mu-strongly monotone on random pairs") {
    const auto game = gen_strongly_monotone_game(6, 10, 30, 0.2);
    const Batch all = full_batch(30);
    Rng rng(9);
    for (int t = 0; t < 50; ++t) {
      const Vector u = rng.normal_vector(10);
      const Vector v = rng.normal_vector(10);
      const Vector dF = game.batch_operator(u, all) - game.batch_operator(v, all);
      CHECK(dF.dot(u - v) >= 0.2 * (u - v).squaredNorm() - 1e-9);
    }
  }
  SUBCASE("mu must be positive") {
    CHECK_THROWS_AS(gen_strongly_monotone_game(1, 4, 4, 0.0), std::invalid_argument);
  }
}
