#pragma once

// Independent reference implementations used only by tests. They share no
// code paths with the library routines they check.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "bhlab/tensor.hpp"

namespace bhlab::oracle {

// Direct recursion over the nested sums with plain pow, no scaling and no
// compensated accumulation.
inline double nested_norm(const CoefTensor& t, const std::vector<double>& q, std::size_t level,
                          std::size_t offset) {
  const std::size_t n = t.side();
  const std::size_t k = t.arity();
  std::size_t stride = 1;
  for (std::size_t a = level + 1; a < k; ++a) stride *= n;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double inner =
        level + 1 == k ? std::abs(t.at(offset + i)) : nested_norm(t, q, level + 1, offset + i * stride);
    sum += std::pow(inner, q[level]);
  }
  return std::pow(sum, 1.0 / q[level]);
}

inline double mixed_norm(const CoefTensor& t, const std::vector<double>& q) {
  return nested_norm(t, q, 0, 0);
}

// max |T(x^(1), ..., x^(m))| over all m sign vectors, evaluated entry by
// entry. Feasible for m*n up to about 16.
inline double vertex_norm(const CoefTensor& t) {
  const std::size_t m = t.arity();
  const std::size_t n = t.side();
  const std::size_t bits = m * n;
  double best = 0.0;
  std::vector<std::size_t> idx(m);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << bits); ++mask) {
    std::complex<double> acc = 0.0;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
      std::size_t rem = flat;
      double sign = 1.0;
      for (std::size_t a = m; a-- > 0;) {
        const std::size_t i = rem % n;
        rem /= n;
        if (mask >> (a * n + i) & 1u) sign = -sign;
      }
      acc += sign * t.at(flat);
    }
    best = std::max(best, std::abs(acc));
  }
  return best;
}

inline CoefTensor random_real(std::size_t m, std::size_t n, std::mt19937_64& rng,
                              double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> re(static_cast<std::size_t>(std::pow(n, m) + 0.5));
  for (double& v : re) v = u(rng);
  return CoefTensor(m, n, Field::real, std::move(re));
}

inline CoefTensor random_complex(std::size_t m, std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  const std::size_t vol = static_cast<std::size_t>(std::pow(n, m) + 0.5);
  std::vector<double> re(vol), im(vol);
  for (std::size_t i = 0; i < vol; ++i) {
    re[i] = g(rng);
    im[i] = g(rng);
  }
  return CoefTensor(m, n, Field::complex, std::move(re), std::move(im));
}

}  // namespace bhlab::oracle
