#include "bhlab/exponents.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "bhlab/errors.hpp"

namespace bhlab {
namespace {

void validate(std::span<const double> values) {
  if (values.empty()) throw ValidationError("exponent tuple must be nonempty");
  for (double v : values) {
    if (!std::isfinite(v) || v <= 0.0)
      throw ValidationError("exponents must be positive and finite, got " + std::to_string(v));
  }
}

std::string shortest(double v) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

// Sum of 1/q_j over `subset` in exact arithmetic; nullopt on overflow.
std::optional<Rational> exact_reciprocal_sum(const std::vector<Rational>& q,
                                             std::span<const std::size_t> subset) {
  try {
    Rational sum;
    for (std::size_t j : subset) sum += q[j].reciprocal();
    return sum;
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

void check_subset(const ExponentTuple& q, std::span<const std::size_t> subset) {
  if (subset.empty()) throw ValidationError("deficit of the empty subset is not defined");
  std::vector<bool> seen(q.size(), false);
  for (std::size_t j : subset) {
    if (j >= q.size())
      throw ValidationError("subset index " + std::to_string(j) + " out of range for k=" +
                            std::to_string(q.size()));
    if (seen[j]) throw ValidationError("subset index " + std::to_string(j) + " repeated");
    seen[j] = true;
  }
}

// Fills verdict and snaps tiny double deficits to the boundary.
void settle(AdmissibilityReport& r) {
  if (r.exact_max_deficit) {
    r.admissible = *r.exact_max_deficit <= Rational(0);
    r.max_deficit = r.exact_max_deficit->to_double();
  } else {
    if (std::abs(r.max_deficit) <= kBoundaryTolerance) r.max_deficit = 0.0;
    r.admissible = r.max_deficit <= 0.0;
  }
  if (r.admissible) r.witness.clear();
}

void fill_sums(const ExponentTuple& q, AdmissibilityReport& r) {
  const std::size_t k = q.size();
  r.bound = (static_cast<double>(k) + 1.0) / 2.0;
  r.full_sum = 0.0;
  r.reduced_sum = 0.0;
  for (double v : q.values()) {
    r.full_sum += 1.0 / v;
    r.reduced_sum += 1.0 / std::min(v, 2.0);
  }
  if (q.is_exact()) {
    try {
      Rational full, reduced;
      const Rational two(2);
      for (const Rational& v : *q.exact()) {
        full += v.reciprocal();
        reduced += std::min(v, two).reciprocal();
      }
      r.exact_full_sum = full;
      r.exact_reduced_sum = reduced;
    } catch (const std::overflow_error&) {
    }
  }
}

}  // namespace

ExponentTuple::ExponentTuple(std::vector<double> values) : values_(std::move(values)) {
  validate(values_);
}

ExponentTuple::ExponentTuple(std::vector<Rational> exact) {
  values_.reserve(exact.size());
  for (const Rational& r : exact) values_.push_back(r.to_double());
  validate(values_);
  exact_ = std::move(exact);
}

ExponentTuple ExponentTuple::parse(std::span<const std::string> tokens) {
  std::vector<Rational> exact;
  std::vector<double> values;
  bool all_exact = true;
  for (const std::string& tok : tokens) {
    if (auto r = Rational::parse(tok)) {
      exact.push_back(*r);
      values.push_back(r->to_double());
      continue;
    }
    all_exact = false;
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (tok.empty() || end != tok.c_str() + tok.size())
      throw ValidationError("cannot parse exponent '" + tok + "'");
    values.push_back(v);
  }
  if (all_exact) {
    for (const Rational& r : exact)
      if (r <= Rational(0)) throw ValidationError("exponents must be positive, got " + r.str());
    return ExponentTuple(std::move(exact));
  }
  return ExponentTuple(std::move(values));
}

std::string ExponentTuple::str() const {
  std::string out = "(";
  for (std::size_t j = 0; j < size(); ++j) {
    if (j) out += ',';
    out += exact_ ? (*exact_)[j].str() : shortest(values_[j]);
  }
  return out + ")";
}

double deficit(const ExponentTuple& q, std::span<const std::size_t> subset) {
  check_subset(q, subset);
  double sum = 0.0;
  for (std::size_t j : subset) sum += 1.0 / q[j];
  return sum - (static_cast<double>(subset.size()) + 1.0) / 2.0;
}

std::optional<Rational> exact_deficit(const ExponentTuple& q, std::span<const std::size_t> subset) {
  check_subset(q, subset);
  if (!q.is_exact()) return std::nullopt;
  auto sum = exact_reciprocal_sum(*q.exact(), subset);
  if (!sum) return std::nullopt;
  try {
    return *sum - Rational(static_cast<std::int64_t>(subset.size()) + 1, 2);
  } catch (const std::overflow_error&) {
    return std::nullopt;
  }
}

AdmissibilityReport is_admissible_bruteforce(const ExponentTuple& q) {
  const std::size_t k = q.size();
  if (k > kMaxBruteForceArity)
    throw CapacityError("subset enumeration supports k <= " + std::to_string(kMaxBruteForceArity) +
                        ", got k=" + std::to_string(k) + "; use the fast predicate");

  AdmissibilityReport r;
  fill_sums(q, r);

  std::vector<double> recip(k);
  for (std::size_t j = 0; j < k; ++j) recip[j] = 1.0 / q[j];

  auto mask_deficit = [&](std::uint64_t mask) {
    double sum = 0.0;
    int card = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (mask >> j & 1u) {
        sum += recip[j];
        ++card;
      }
    }
    return sum - (card + 1.0) / 2.0;
  };

  const std::uint64_t total = std::uint64_t{1} << k;
  double best = -std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    const double d = mask_deficit(mask);
    // Ties prefer the smaller subset, then the lower mask.
    const bool better = d > best + kBoundaryTolerance ||
                        (std::abs(d - best) <= kBoundaryTolerance &&
                         std::popcount(mask) < std::popcount(best_mask));
    if (better) {
      best = d;
      best_mask = mask;
    }
  }

  auto mask_indices = [k](std::uint64_t mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < k; ++j)
      if (mask >> j & 1u) idx.push_back(j);
    return idx;
  };

  r.max_deficit = best;
  r.witness = mask_indices(best_mask);

  if (q.is_exact()) {
    // Resolve the maximum exactly among all near-maximal candidates.
    std::optional<Rational> exact_best;
    std::uint64_t exact_mask = best_mask;
    bool ok = true;
    for (std::uint64_t mask = 1; mask < total && ok; ++mask) {
      if (mask_deficit(mask) < best - 1e-9) continue;
      const auto idx = mask_indices(mask);
      auto d = exact_deficit(q, idx);
      if (!d) {
        ok = false;
        break;
      }
      if (!exact_best || *d > *exact_best ||
          (*d == *exact_best && std::popcount(mask) < std::popcount(exact_mask))) {
        exact_best = d;
        exact_mask = mask;
      }
    }
    if (ok && exact_best) {
      r.exact_max_deficit = exact_best;
      r.witness = mask_indices(exact_mask);
    }
  }
  settle(r);
  return r;
}

AdmissibilityReport is_admissible_fast(const ExponentTuple& q) {
  const std::size_t k = q.size();
  AdmissibilityReport r;
  fill_sums(q, r);

  std::vector<std::size_t> below_two;
  for (std::size_t j = 0; j < k; ++j)
    if (q[j] < 2.0) below_two.push_back(j);

  if (!below_two.empty()) {
    // Every element outside {q_j < 2} adds 1/q_j - 1/2 <= 0, so this set
    // maximizes the deficit and its deficit equals reduced_sum - (k+1)/2.
    r.witness = below_two;
    r.max_deficit = r.reduced_sum - r.bound;
    if (r.exact_reduced_sum) {
      try {
        r.exact_max_deficit =
            *r.exact_reduced_sum - Rational(static_cast<std::int64_t>(k) + 1, 2);
      } catch (const std::overflow_error&) {
      }
    }
  } else {
    const auto it = std::min_element(q.values().begin(), q.values().end());
    const std::size_t j = static_cast<std::size_t>(it - q.values().begin());
    r.witness = {j};
    r.max_deficit = 1.0 / q[j] - 1.0;
    if (q.is_exact()) r.exact_max_deficit = exact_deficit(q, r.witness);
  }
  // Exact tuples whose exact sums overflowed are decided in doubles.
  if (q.is_exact() && !r.exact_reduced_sum) r.exact_max_deficit.reset();
  settle(r);
  return r;
}

ExponentTuple reduce_min2(const ExponentTuple& q) {
  if (q.is_exact()) {
    std::vector<Rational> out = *q.exact();
    for (Rational& v : out) v = std::min(v, Rational(2));
    return ExponentTuple(std::move(out));
  }
  std::vector<double> out(q.values().begin(), q.values().end());
  for (double& v : out) v = std::min(v, 2.0);
  return ExponentTuple(std::move(out));
}

ExponentTuple classical_bh_tuple(std::size_t m) {
  if (m == 0) throw ValidationError("classical exponent needs m >= 1");
  const auto mm = static_cast<std::int64_t>(m);
  return ExponentTuple(std::vector<Rational>(m, Rational(2 * mm, mm + 1)));
}

}  // namespace bhlab
