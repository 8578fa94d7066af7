// speclab/rng.hpp
//
// Deterministic randomness. Every trial in the verification suites draws
// from a SplitMix64 stream seeded by trial_seed(seed, index), so trial k is
// reproducible in isolation and independent of execution order.

#pragma once

#include <cstdint>

#include "speclab/matrix.hpp"
#include "speclab/scalar.hpp"

namespace speclab {

// SplitMix64 (Steele/Lea/Flood); constants are the published ones.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1).
  double next_unit() { return double(next() >> 11) * 0x1.0p-53; }

  // Uniform in [-1, 1].
  double next_symmetric() { return 2.0 * next_unit() - 1.0; }

  // Uniform integer in [lo, hi].
  long next_int(long lo, long hi) {
    return lo + long(next() % std::uint64_t(hi - lo + 1));
  }
};

// Per-trial seed: SplitMix64 finalizer applied to seed + (index+1)*golden.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Floating backend: coordinates uniform in [-1,1]. Exact backend: small
// rationals, numerators in [-9,9], denominators in [1,4].
template <class S>
S random_scalar(SplitMix64& rng);

template <>
inline Complex random_scalar<Complex>(SplitMix64& rng) {
  double re = rng.next_symmetric();
  double im = rng.next_symmetric();
  return Complex(re, im);
}

template <>
inline GaussQ random_scalar<GaussQ>(SplitMix64& rng) {
  auto q = [&rng]() {
    Rational v(rng.next_int(-9, 9), rng.next_int(1, 4));
    v.canonicalize();
    return v;
  };
  Rational re = q();
  Rational im = q();
  return GaussQ(re, im);
}

template <class S>
Matrix<S> random_matrix(Eigen::Index rows, Eigen::Index cols, SplitMix64& rng) {
  Matrix<S> m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = random_scalar<S>(rng);
  return m;
}

template <class S>
Matrix<S> random_skew(Eigen::Index n, SplitMix64& rng) {
  Matrix<S> m = Matrix<S>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = i + 1; j < n; ++j) {
      S v = random_scalar<S>(rng);
      m(i, j) = v;
      m(j, i) = -v;
    }
  return m;
}

template <class S>
Matrix<S> random_symmetric(Eigen::Index n, SplitMix64& rng) {
  Matrix<S> m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    m(i, i) = random_scalar<S>(rng);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      S v = random_scalar<S>(rng);
      m(i, j) = v;
      m(j, i) = v;
    }
  }
  return m;
}

}  // namespace speclab
