#pragma once

#include "slsopt/core/types.hpp"

#include <cstdint>
#include <random>
#include <string_view>

namespace slsopt {

/// splitmix64 mixing step; used to derive decorrelated substream seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Derives an independent stream seed from a base seed and a stream tag.
/// Runs derive separate streams for problem generation, batch sampling,
/// iterate initialization and the independent line-search batch.
inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view tag) {
  std::uint64_t h = splitmix64(seed);
  for (char ch : tag) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<unsigned char>(ch)));
  return h;
}

/// Deterministic generator wrapper used everywhere randomness is needed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  int uniform_int(int lo, int hi) {  // inclusive bounds
    return std::uniform_int_distribution<int>(lo, hi)(engine_);
  }
  std::mt19937_64& engine() { return engine_; }

  Vector normal_vector(Eigen::Index n) {
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = normal();
    return v;
  }
  Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = normal();
    return m;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Uniform-with-replacement mini-batch sampler over {0..n-1}.
/// Two samplers constructed with equal (n, b, seed) yield identical streams.
class MiniBatchSampler {
 public:
  MiniBatchSampler(int n, int b, std::uint64_t seed) : n_(n), b_(b), engine_(seed) {
    if (n < 1) throw std::invalid_argument("MiniBatchSampler: n must be >= 1");
    if (b < 1 || b > n) throw std::invalid_argument("MiniBatchSampler: need 1 <= b <= n");
  }

  int population() const { return n_; }
  int batch_size() const { return b_; }

  Batch sample() {
    Batch idx(static_cast<std::size_t>(b_));
    std::uniform_int_distribution<int> dist(0, n_ - 1);
    for (auto& i : idx) i = dist(engine_);
    return idx;
  }

 private:
  int n_, b_;
  std::mt19937_64 engine_;
};

/// The full index set {0..n-1}, for full-batch evaluations.
inline Batch full_batch(int n) {
  Batch idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
  return idx;
}

}  // namespace slsopt
