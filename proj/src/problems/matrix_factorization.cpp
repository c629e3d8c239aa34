#include "slsopt/problems/matrix_factorization.hpp"

#include <Eigen/QR>

#include <cmath>
#include <stdexcept>

namespace slsopt {

namespace {

Matrix random_orthogonal(Rng& rng, int n) {
  const Matrix G = rng.normal_matrix(n, n);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ() * Matrix::Identity(n, n);
  // fix the sign convention so Q is a deterministic function of G
  const Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

}  // namespace

MatrixFactorizationProblem::MatrixFactorizationProblem(Matrix A, Matrix samples, int rank)
    : A_(std::move(A)), samples_(std::move(samples)), rank_(rank) {
  if (A_.rows() != kRows || A_.cols() != kCols)
    throw std::invalid_argument("MatrixFactorizationProblem: A must be 10x6");
  if (samples_.cols() != kCols)
    throw std::invalid_argument("MatrixFactorizationProblem: samples must have 6 columns");
  if (samples_.rows() < 1)
    throw std::invalid_argument("MatrixFactorizationProblem: need at least one sample");
  if (rank_ < 1 || rank_ > 10)
    throw std::invalid_argument("MatrixFactorizationProblem: rank must be in 1..10");
}

Matrix MatrixFactorizationProblem::unpack_w1(const Vector& w) const {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(w.data(), rank_, kCols);
}

Matrix MatrixFactorizationProblem::unpack_w2(const Vector& w) const {
  using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  return Eigen::Map<const RowMajor>(w.data() + rank_ * kCols, kRows, rank_);
}

Vector MatrixFactorizationProblem::pack(const Matrix& W1, const Matrix& W2) const {
  Vector w(dim());
  int p = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < kCols; ++j) w[p++] = W1(i, j);
  for (int i = 0; i < kRows; ++i)
    for (int j = 0; j < rank_; ++j) w[p++] = W2(i, j);
  return w;
}

double MatrixFactorizationProblem::batch_value(const Vector& w, const Batch& batch) const {
  if (batch.empty()) throw std::invalid_argument("MatrixFactorizationProblem: empty batch");
  const Matrix W1 = unpack_w1(w);
  const Matrix W2 = unpack_w2(w);
  double s = 0.0;
  for (int j : batch) {
    const Vector x = samples_.row(j).transpose();
    s += (W2 * (W1 * x) - A_ * x).squaredNorm();
  }
  return s / static_cast<double>(batch.size());
}

double MatrixFactorizationProblem::batch_value_and_gradient(const Vector& w,
                                                            const Batch& batch,
                                                            Vector& grad) const {
  if (batch.empty()) throw std::invalid_argument("MatrixFactorizationProblem: empty batch");
  const Matrix W1 = unpack_w1(w);
  const Matrix W2 = unpack_w2(w);
  Matrix G1 = Matrix::Zero(rank_, kCols);
  Matrix G2 = Matrix::Zero(kRows, rank_);
  double s = 0.0;
  for (int j : batch) {
    const Vector x = samples_.row(j).transpose();
    const Vector h = W1 * x;
    const Vector r = W2 * h - A_ * x;
    s += r.squaredNorm();
    G1.noalias() += 2.0 * (W2.transpose() * r) * x.transpose();
    G2.noalias() += 2.0 * r * h.transpose();
  }
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  grad = pack(G1 * inv_b, G2 * inv_b);
  return s * inv_b;
}

Vector MatrixFactorizationProblem::initial_point(std::uint64_t seed) const {
  Rng rng(seed);
  const Matrix Q = random_orthogonal(rng, kRows);
  const Matrix W2 = Q.leftCols(rank_);
  const Matrix W1 = 0.1 / std::sqrt(double(kCols)) * rng.normal_matrix(rank_, kCols);
  return pack(W1, W2);
}

MatrixFactorizationProblem gen_matrix_factorization(std::uint64_t seed, int m, int rank) {
  if (m < 1) throw std::invalid_argument("gen_matrix_factorization: m must be >= 1");
  Rng target_rng(derive_stream(seed, "mf_target"));
  const Matrix U = random_orthogonal(target_rng, MatrixFactorizationProblem::kRows);
  const Matrix V = random_orthogonal(target_rng, MatrixFactorizationProblem::kCols);
  Vector sigma(MatrixFactorizationProblem::kCols);
  for (int i = 0; i < MatrixFactorizationProblem::kCols; ++i)
    sigma[i] = std::pow(10.0, -2.0 * i);
  const Matrix A =
      U.leftCols(MatrixFactorizationProblem::kCols) * sigma.asDiagonal() * V.transpose();
  Rng sample_rng(derive_stream(seed, "mf_samples"));
  const Matrix samples =
      sample_rng.normal_matrix(m, MatrixFactorizationProblem::kCols);
  return MatrixFactorizationProblem(A, samples, rank);
}

}  // namespace slsopt
