#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "bhlab/exponents.hpp"

namespace bhlab {

enum class Field { real, complex };

std::string_view to_string(Field f);
Field parse_field(std::string_view name);

/// Default cap on the number of stored scalars per tensor.
inline constexpr std::size_t kDefaultScalarBudget = std::size_t{1} << 28;

/// n^m, throwing CapacityError when it exceeds `budget` (or overflows).
std::size_t checked_volume(std::size_t n, std::size_t m, std::size_t budget = kDefaultScalarBudget);

/// Dense coefficients T(e_{i_1}, ..., e_{i_m}) of an m-linear form on
/// (K^n)^m. Row-major, i_m fastest. Immutable once built.
class CoefTensor {
 public:
  using Complex = std::complex<double>;

  /// `imag` must be empty for the real field; for the complex field it is
  /// either empty (all-real entries) or of the same length as `real`.
  CoefTensor(std::size_t m, std::size_t n, Field field, std::vector<double> real,
             std::vector<double> imag = {}, std::size_t budget = kDefaultScalarBudget);

  static CoefTensor zeros(std::size_t m, std::size_t n, Field field = Field::real,
                          std::size_t budget = kDefaultScalarBudget);

  std::size_t arity() const { return m_; }
  std::size_t side() const { return n_; }
  Field field() const { return field_; }
  std::size_t size() const { return re_.size(); }

  std::span<const double> real() const { return re_; }
  /// Empty for the real field.
  std::span<const double> imag() const { return im_; }

  Complex at(std::size_t flat) const { return {re_[flat], im_.empty() ? 0.0 : im_[flat]}; }
  double abs_at(std::size_t flat) const {
    return im_.empty() ? std::abs(re_[flat]) : std::hypot(re_[flat], im_[flat]);
  }
  std::size_t flat_index(std::span<const std::size_t> index) const;

  /// c * T. A real tensor scaled by a non-real c becomes complex.
  CoefTensor scaled(Complex c) const;

  friend bool operator==(const CoefTensor&, const CoefTensor&) = default;

 private:
  std::size_t m_;
  std::size_t n_;
  Field field_;
  std::vector<double> re_;
  std::vector<double> im_;
};

/// Block sizes (n_1, ..., n_k), each >= 1.
class Partition {
 public:
  explicit Partition(std::vector<std::size_t> blocks);
  static Partition trivial(std::size_t m) { return Partition(std::vector<std::size_t>(m, 1)); }

  std::span<const std::size_t> blocks() const { return blocks_; }
  std::size_t size() const { return blocks_.size(); }
  std::size_t total() const;

 private:
  std::vector<std::size_t> blocks_;
};

/// Nested l_{q_1,...,q_k} norm of a k-index array: l_{q_k} over the last
/// index first, then outward. Exponents below 1 use the same power-sum
/// formula (quasi-norm). Throws NumericError if the value overflows.
/// Independent groups of the innermost reductions are spread over `threads`
/// workers; the result does not depend on the worker count.
double mixed_norm(const CoefTensor& t, const ExponentTuple& q, unsigned threads = 1);

/// (sum |entry|^q)^{1/q}.
double flat_qnorm(const CoefTensor& t, double q);

/// S(i_1..i_k) = T(i_1 repeated n_1 times, ..., i_k repeated n_k times).
CoefTensor block_restrict(const CoefTensor& t, const Partition& p);

/// Reorders index roles: result(i_0..i_{m-1}) = T(j) with j[perm[a]] = i_a.
CoefTensor permute_axes(const CoefTensor& t, std::span<const std::size_t> perm);

}  // namespace bhlab
