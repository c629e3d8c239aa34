#include "slsopt/problems/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace slsopt {

namespace {

// log(1 + exp(-m)) without overflow on either tail
double logistic_loss(double margin) {
  if (margin >= 0.0) return std::log1p(std::exp(-margin));
  return -margin + std::log1p(std::exp(margin));
}

// d/dm log(1+exp(-m)) = -sigmoid(-m); returns sigmoid(-m) = 1/(1+exp(m))
double sigmoid_neg(double margin) {
  if (margin >= 0.0) {
    const double e = std::exp(-margin);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(margin));
}

}  // namespace

double sparse_squared_distance(const SparseRow& a, const SparseRow& b) {
  double s = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      s += a[i].second * a[i].second;
      ++i;
    } else if (i == a.size() || b[j].first < a[i].first) {
      s += b[j].second * b[j].second;
      ++j;
    } else {
      const double d = a[i].second - b[j].second;
      s += d * d;
      ++i;
      ++j;
    }
  }
  return s;
}

KernelClassificationProblem::KernelClassificationProblem(std::vector<SparseRow> inputs,
                                                         std::vector<double> labels,
                                                         double bandwidth)
    : inputs_(std::move(inputs)), labels_(std::move(labels)), sigma_(bandwidth) {
  if (!(sigma_ > 0.0))
    throw std::invalid_argument("KernelClassificationProblem: bandwidth must be > 0");
  if (inputs_.size() != labels_.size() || inputs_.size() < 2)
    throw std::invalid_argument("KernelClassificationProblem: need >= 2 labelled examples");
  bool pos = false, neg = false;
  for (double y : labels_) {
    if (y == 1.0) pos = true;
    else if (y == -1.0) neg = true;
    else throw std::invalid_argument("KernelClassificationProblem: labels must be +/-1");
  }
  if (!pos || !neg)
    throw std::invalid_argument("KernelClassificationProblem: both labels must be present");

  const int n = static_cast<int>(inputs_.size());
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma_ * sigma_);
  K_.resize(n, n);
  for (int i = 0; i < n; ++i) {
    K_(i, i) = 1.0;
    for (int j = i + 1; j < n; ++j) {
      const double k = std::exp(-sparse_squared_distance(inputs_[i], inputs_[j]) *
                                inv_two_sigma_sq);
      K_(i, j) = k;
      K_(j, i) = k;  // mirrored, so K is symmetric bit-exactly
    }
  }
}

double KernelClassificationProblem::batch_value(const Vector& w, const Batch& batch) const {
  if (batch.empty()) throw std::invalid_argument("KernelClassificationProblem: empty batch");
  double s = 0.0;
  for (int i : batch) s += logistic_loss(labels_[i] * K_.row(i).dot(w));
  return s / static_cast<double>(batch.size());
}

double KernelClassificationProblem::batch_value_and_gradient(const Vector& w,
                                                             const Batch& batch,
                                                             Vector& grad) const {
  if (batch.empty()) throw std::invalid_argument("KernelClassificationProblem: empty batch");
  grad = Vector::Zero(dim());
  double s = 0.0;
  for (int i : batch) {
    const double m = labels_[i] * K_.row(i).dot(w);
    s += logistic_loss(m);
    grad -= labels_[i] * sigmoid_neg(m) * K_.row(i).transpose();
  }
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  grad *= inv_b;
  return s * inv_b;
}

std::optional<Vector> KernelClassificationProblem::lipschitz_constants() const {
  return Vector(0.25 * K_.rowwise().squaredNorm());
}

double KernelClassificationProblem::test_accuracy(const Vector& w,
                                                  const std::vector<SparseRow>& test_inputs,
                                                  const std::vector<double>& test_labels) const {
  if (test_inputs.empty()) return 0.0;
  const double inv_two_sigma_sq = 1.0 / (2.0 * sigma_ * sigma_);
  int correct = 0;
  for (std::size_t t = 0; t < test_inputs.size(); ++t) {
    double score = 0.0;
    for (std::size_t j = 0; j < inputs_.size(); ++j)
      score += w[static_cast<Eigen::Index>(j)] *
               std::exp(-sparse_squared_distance(test_inputs[t], inputs_[j]) * inv_two_sigma_sq);
    const double pred = score >= 0.0 ? 1.0 : -1.0;
    if (pred == test_labels[t]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(test_inputs.size());
}

KernelSplit rbf_kernel_problem(const Dataset& data, double bandwidth, double train_fraction,
                               std::uint64_t split_seed) {
  if (!(train_fraction > 0.0 && train_fraction <= 1.0))
    throw std::invalid_argument("rbf_kernel_problem: train_fraction must be in (0,1]");
  const auto labels = map_binary_labels(data.labels);
  const int n = static_cast<int>(data.rows.size());

  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  Rng rng(derive_stream(split_seed, "train_test_split"));
  std::shuffle(perm.begin(), perm.end(), rng.engine());

  const int n_train = std::max(2, static_cast<int>(std::floor(n * train_fraction)));
  std::vector<SparseRow> train_in, test_in;
  std::vector<double> train_y, test_y;
  for (int p = 0; p < n; ++p) {
    const int i = perm[static_cast<std::size_t>(p)];
    if (p < n_train) {
      train_in.push_back(data.rows[static_cast<std::size_t>(i)]);
      train_y.push_back(labels[static_cast<std::size_t>(i)]);
    } else {
      test_in.push_back(data.rows[static_cast<std::size_t>(i)]);
      test_y.push_back(labels[static_cast<std::size_t>(i)]);
    }
  }
  return KernelSplit{KernelClassificationProblem(std::move(train_in), std::move(train_y),
                                                 bandwidth),
                     std::move(test_in), std::move(test_y)};
}

Dataset gen_margin_dataset_2d(std::uint64_t seed, int count, double margin) {
  if (count < 2) throw std::invalid_argument("gen_margin_dataset_2d: count must be >= 2");
  if (!(margin >= 0.0 && margin < 2.0))
    throw std::invalid_argument("gen_margin_dataset_2d: margin must be in [0, 2)");
  Rng rng(derive_stream(seed, "margin_dataset"));
  Dataset data;
  data.num_features = 2;
  while (static_cast<int>(data.rows.size()) < count) {
    const double x1 = 2.0 * rng.uniform() - 1.0;
    const double x2 = 2.0 * rng.uniform() - 1.0;
    if (std::abs(x2) < 0.5 * margin) continue;
    data.rows.push_back({{0, x1}, {1, x2}});
    data.labels.push_back(x2 > 0.0 ? 1.0 : -1.0);
  }
  return data;
}

}  // namespace slsopt
