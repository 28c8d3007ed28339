#pragma once

#include <cstddef>
#include <cstdint>

#include "bhlab/tensor.hpp"

namespace bhlab {

/// Parameters of a random-sign (Kahane-Salem-Zygmund type) k-linear form.
struct KszSpec {
  std::size_t k = 2;
  std::size_t n = 2;
  std::uint64_t seed = 0;
  Field field = Field::real;
};

/// Independent uniform +-1 entries. Entry i is a pure function of
/// (seed, k, n, i), so the fill order (and thread count) never matters.
/// Complex-field tensors carry the same real signs.
CoefTensor sample_sign_tensor(const KszSpec& spec, std::size_t budget = kDefaultScalarBudget,
                              unsigned threads = 1);

/// T_m(x^(1..m)) = T_k(x^(1..k)) * x^(k+1)_1 * ... * x^(m)_1.
CoefTensor lift(const CoefTensor& t, std::size_t m, std::size_t budget = kDefaultScalarBudget);

/// ((1, 1), (1, -1)).
CoefTensor littlewood();

/// Sylvester-Hadamard matrix of order n (a power of two), the Kronecker
/// powers of the Littlewood matrix.
CoefTensor sylvester_hadamard(std::size_t n);

CoefTensor ones(std::size_t m, std::size_t n, Field field = Field::real);

/// Delta tensor: 1 where all indices agree, 0 elsewhere.
CoefTensor diagonal(std::size_t m, std::size_t n, Field field = Field::real);

}  // namespace bhlab
