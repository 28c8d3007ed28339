#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bhlab/exponents.hpp"
#include "bhlab/opnorm.hpp"
#include "bhlab/tensor.hpp"

namespace bhlab {

enum class Family { ksz, ksz_lifted, littlewood, file };
enum class NormMode { exact, sandwich };
enum class Verdict { bounded, growing, inconclusive };

std::string_view to_string(Family f);
std::string_view to_string(NormMode m);
std::string_view to_string(Verdict v);
Family parse_family(std::string_view name);
NormMode parse_norm_mode(std::string_view name);

/// A fitted trend is called growing when slope - 2*stderr exceeds this, and
/// bounded when slope + 2*stderr stays at or below it.
inline constexpr double kTrendThreshold = 0.1;

struct ExperimentSpec {
  ExponentTuple q;
  /// One block per exponent; the family tensors have arity partition.total().
  Partition partition;
  Family family = Family::ksz;
  std::vector<std::size_t> n_grid;
  std::vector<std::uint64_t> seeds;
  NormMode norm_mode = NormMode::exact;
  /// ksz_lifted: arity of the random form before it is lifted to the full
  /// arity. 0 means the number of leading exponents below 2.
  std::size_t base_arity = 0;
  /// family == file: the single tensor to evaluate; n_grid must be its side.
  std::optional<CoefTensor> file_tensor;
  Field field = Field::real;
  std::size_t ascent_restarts = 16;
  ExactOptions exact{};
  unsigned threads = 1;
};

struct ScalingRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  double mixed_norm = 0.0;
  double norm_lower = 0.0;
  std::optional<double> norm_upper;
  double ratio_lo = 0.0;
  double ratio_hi = 0.0;
};

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  double r2 = 0.0;
  double intercept = 0.0;
};

struct ScalingResult {
  Family family = Family::ksz;
  /// Number of exponents (blocks) and arity of the family tensors.
  std::size_t k = 0;
  std::size_t m = 0;
  std::vector<ScalingRow> rows;
  std::optional<SlopeFit> fit;
  double predicted_slope = 0.0;
  double max_deficit = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

/// Ordinary least squares of y on x. Needs >= 3 points and two distinct
/// abscissae; throws ValidationError otherwise.
SlopeFit fit_slope(std::span<const double> x, std::span<const double> y);

/// The family tensor for one (n, seed) cell of an experiment.
CoefTensor build_family_tensor(const ExperimentSpec& spec, std::size_t n, std::uint64_t seed);

/// Sweeps n_grid x seeds, recording mixed_norm(block_restrict(T), q) against
/// the operator norm of T, and fits log(ratio midpoint) against log n.
/// Rows are ordered by (n, seed) regardless of spec.threads.
ScalingResult run_experiment(const ExperimentSpec& spec);

}  // namespace bhlab
