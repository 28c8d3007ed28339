#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "bhlab/tensor.hpp"

namespace bhlab {

/// Default cap on (m-1)*n, the number of sign bits exact_real enumerates.
inline constexpr std::size_t kDefaultVertexBitBudget = 26;

using FormArgument = std::vector<std::complex<double>>;

struct NormEstimate {
  double lower = 0.0;
  std::optional<double> upper;
  bool exact = false;
  Field field = Field::real;
  /// One vector per argument; |T(certificate)| reproduces `lower`.
  std::vector<FormArgument> certificate;
};

struct ExactOptions {
  std::size_t bit_budget = kDefaultVertexBitBudget;
  unsigned threads = 1;
};

/// T(x^(1), ..., x^(m)) for explicit argument vectors.
std::complex<double> evaluate_form(const CoefTensor& t, const std::vector<FormArgument>& args);

/// Exact sup-norm over the product of l_inf^n unit balls, real field only.
///
/// The form attains its maximum at sign vectors, and for fixed
/// x^(1..m-1) the last argument contributes sum_i |T(x^(1), ..., e_i)|.
/// The first m-1 arguments are enumerated in Gray-code order so each step
/// flips one sign and updates the partial contraction tables incrementally.
/// Throws CapacityError when (m-1)*n exceeds options.bit_budget.
NormEstimate exact_real(const CoefTensor& t, const ExactOptions& options = {});

/// Alternating maximization from `restarts` random starts. Each argument in
/// turn is replaced by the sign (real) or conjugate phase (complex) of its
/// partial contraction. A lower bound only; deterministic for a given seed.
NormEstimate ascent_lower(const CoefTensor& t, std::size_t restarts, std::uint64_t seed);

/// n * sigma_max(A) for a real bilinear form with matrix A.
double bilinear_upper(const CoefTensor& t);

/// ascent_lower bracketed by bilinear_upper (m = 2, real field).
NormEstimate sandwich(const CoefTensor& t, std::size_t restarts, std::uint64_t seed);

}  // namespace bhlab
