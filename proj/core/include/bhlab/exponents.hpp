#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bhlab/rational.hpp"

namespace bhlab {

/// Comparison slack for the admissibility boundary when exponents are only
/// known as doubles. A max deficit within this distance of zero counts as zero.
inline constexpr double kBoundaryTolerance = 1e-12;

/// Largest tuple length the subset-enumeration oracle accepts.
inline constexpr std::size_t kMaxBruteForceArity = 24;

/// Ordered exponents q_1..q_k, each positive and finite.
///
/// A tuple optionally carries exact rational values alongside the doubles.
/// When present, admissibility is decided in exact arithmetic.
class ExponentTuple {
 public:
  explicit ExponentTuple(std::vector<double> values);
  explicit ExponentTuple(std::vector<Rational> exact);
  ExponentTuple(std::initializer_list<double> values)
      : ExponentTuple(std::vector<double>(values)) {}

  /// Each token is "a/b", a decimal, or any strtod-parsable number.
  /// Exactness is kept only if every token is rational.
  static ExponentTuple parse(std::span<const std::string> tokens);

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t j) const { return values_[j]; }
  std::span<const double> values() const { return values_; }
  bool is_exact() const { return exact_.has_value(); }
  const std::optional<std::vector<Rational>>& exact() const { return exact_; }

  /// "(1,9/5,3)" for exact tuples, shortest round-trip doubles otherwise.
  std::string str() const;

 private:
  std::vector<double> values_;
  std::optional<std::vector<Rational>> exact_;
};

struct AdmissibilityReport {
  bool admissible = true;
  /// 0-based indices; empty iff admissible.
  std::vector<std::size_t> witness;
  double max_deficit = 0.0;
  /// Sum over j of 1/min{q_j, 2}.
  double reduced_sum = 0.0;
  /// Sum over j of 1/q_j (the full-set left-hand side).
  double full_sum = 0.0;
  /// (k+1)/2, the bound the reduced sum is compared against.
  double bound = 0.0;

  std::optional<Rational> exact_max_deficit;
  std::optional<Rational> exact_reduced_sum;
  std::optional<Rational> exact_full_sum;
};

/// Signed slack of the subset condition: sum_{j in A} 1/q_j - (|A|+1)/2.
/// `subset` holds distinct 0-based indices and must be nonempty.
double deficit(const ExponentTuple& q, std::span<const std::size_t> subset);

/// Exact counterpart of deficit(); nullopt for inexact tuples or on overflow.
std::optional<Rational> exact_deficit(const ExponentTuple& q, std::span<const std::size_t> subset);

/// Enumerates every nonempty subset. Throws CapacityError above
/// kMaxBruteForceArity.
AdmissibilityReport is_admissible_bruteforce(const ExponentTuple& q);

/// O(k) decision through the min{q,2} reduction.
AdmissibilityReport is_admissible_fast(const ExponentTuple& q);

ExponentTuple reduce_min2(const ExponentTuple& q);

/// m copies of 2m/(m+1), exact.
ExponentTuple classical_bh_tuple(std::size_t m);

}  // namespace bhlab
