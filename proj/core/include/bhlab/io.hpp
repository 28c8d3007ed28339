#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "bhlab/exponents.hpp"
#include "bhlab/opnorm.hpp"
#include "bhlab/scaling.hpp"
#include "bhlab/tensor.hpp"

namespace bhlab {

// Tensor files:
//   {"m": int, "n": int, "field": "real"|"complex", "entries": [...]}
// with n^m entries in row-major order (i_m fastest). Complex entries are
// [re, im] pairs. All writers emit a single line with insertion-ordered keys.

std::string tensor_to_json(const CoefTensor& t);
CoefTensor tensor_from_json(std::string_view text, std::size_t budget = kDefaultScalarBudget);
CoefTensor read_tensor_file(const std::filesystem::path& path,
                            std::size_t budget = kDefaultScalarBudget);

/// Accepts an array whose items are numbers or strings such as "18/10".
ExponentTuple exponents_from_json(std::string_view text);
/// Integers as numbers, proper fractions as "a/b" strings, inexact as numbers.
std::string exponents_to_json(const ExponentTuple& q);

std::string estimate_to_json(const NormEstimate& est, bool with_certificate);

std::string report_to_json(const ExponentTuple& q, const AdmissibilityReport& r,
                           std::string_view method,
                           const std::optional<Partition>& partition = std::nullopt);

/// family,k,m,n,seed,mixed_norm,norm_lower,norm_upper,ratio_lo,ratio_hi
void write_scaling_csv(std::ostream& out, const ScalingResult& r);
std::string scaling_summary_json(const ScalingResult& r, const ExponentTuple& q);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

}  // namespace bhlab
