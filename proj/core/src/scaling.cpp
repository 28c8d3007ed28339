#include "bhlab/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "bhlab/errors.hpp"
#include "bhlab/parallel.hpp"
#include "bhlab/randforms.hpp"

namespace bhlab {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::ksz: return "ksz";
    case Family::ksz_lifted: return "ksz_lifted";
    case Family::littlewood: return "littlewood";
    case Family::file: return "file";
  }
  return "?";
}

std::string_view to_string(NormMode m) { return m == NormMode::exact ? "exact" : "sandwich"; }

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::bounded: return "bounded";
    case Verdict::growing: return "growing";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  if (name == "ksz") return Family::ksz;
  if (name == "ksz_lifted" || name == "ksz-lifted") return Family::ksz_lifted;
  if (name == "littlewood") return Family::littlewood;
  if (name == "file") return Family::file;
  throw ValidationError("unknown family '" + std::string(name) + "'");
}

NormMode parse_norm_mode(std::string_view name) {
  if (name == "exact") return NormMode::exact;
  if (name == "sandwich") return NormMode::sandwich;
  throw ValidationError("unknown norm mode '" + std::string(name) + "'");
}

SlopeFit fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw ValidationError("fit needs matching x and y");
  const std::size_t count = x.size();
  if (count < 3) throw ValidationError("fit needs at least 3 points");
  const double nd = static_cast<double>(count);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= nd;
  my /= nd;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0)) throw ValidationError("fit needs at least two distinct abscissae");

  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += r * r;
  }
  fit.std_error = std::sqrt(std::max(0.0, ssr / (nd - 2.0)) / sxx);
  // Flat data (up to rounding) is fitted perfectly by a zero slope.
  const double flat_tol = 1e-24 * nd * std::max(1.0, my * my);
  fit.r2 = syy > flat_tol ? std::clamp(1.0 - ssr / syy, 0.0, 1.0) : 1.0;
  return fit;
}

namespace {

std::size_t resolved_base_arity(const ExperimentSpec& spec) {
  if (spec.base_arity != 0) return spec.base_arity;
  std::size_t k = 0;
  while (k < spec.q.size() && spec.q[k] < 2.0) ++k;
  return std::max<std::size_t>(k, 1);
}

void validate(const ExperimentSpec& spec) {
  if (spec.partition.size() != spec.q.size())
    throw ValidationError("partition has " + std::to_string(spec.partition.size()) +
                          " blocks but there are " + std::to_string(spec.q.size()) + " exponents");
  if (spec.n_grid.empty()) throw ValidationError("n grid must be nonempty");
  for (std::size_t i = 0; i < spec.n_grid.size(); ++i) {
    if (spec.n_grid[i] == 0) throw ValidationError("n grid entries must be positive");
    if (i > 0 && spec.n_grid[i] <= spec.n_grid[i - 1])
      throw ValidationError("n grid must be strictly increasing");
  }
  const bool random = spec.family == Family::ksz || spec.family == Family::ksz_lifted;
  if (random && spec.seeds.empty()) throw ValidationError("random families need at least one seed");

  const std::size_t m = spec.partition.total();
  if (spec.family == Family::ksz_lifted && resolved_base_arity(spec) > m)
    throw ValidationError("base arity exceeds the tensor arity");
  if (spec.family == Family::file) {
    if (!spec.file_tensor) throw ValidationError("file family needs a tensor");
    if (spec.file_tensor->arity() != m)
      throw ValidationError("file tensor arity does not match the partition");
    if (spec.n_grid.size() != 1 || spec.n_grid.front() != spec.file_tensor->side())
      throw ValidationError("file family grid must be exactly the tensor side");
  }
  if (spec.norm_mode == NormMode::sandwich && (m != 2 || spec.field != Field::real))
    throw ValidationError("sandwich norms are only available for real bilinear forms");
  if (spec.norm_mode == NormMode::exact) {
    if (spec.field != Field::real) throw ValidationError("exact norms need real scalars");
    for (std::size_t n : spec.n_grid)
      if ((m - 1) * n > spec.exact.bit_budget)
        throw CapacityError("exact norm at n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                            " exceeds the vertex budget of 2^" +
                            std::to_string(spec.exact.bit_budget));
  }
}

}  // namespace

CoefTensor build_family_tensor(const ExperimentSpec& spec, std::size_t n, std::uint64_t seed) {
  const std::size_t m = spec.partition.total();
  switch (spec.family) {
    case Family::ksz:
      return sample_sign_tensor({m, n, seed, spec.field});
    case Family::ksz_lifted:
      return lift(sample_sign_tensor({resolved_base_arity(spec), n, seed, spec.field}), m);
    case Family::littlewood: {
      if (m < 2) throw ValidationError("littlewood family needs arity >= 2");
      return lift(sylvester_hadamard(n), m);
    }
    case Family::file:
      return *spec.file_tensor;
  }
  throw ValidationError("unknown family");
}

ScalingResult run_experiment(const ExperimentSpec& spec) {
  validate(spec);

  ScalingResult result;
  result.family = spec.family;
  result.k = spec.q.size();
  result.m = spec.partition.total();

  const bool random = spec.family == Family::ksz || spec.family == Family::ksz_lifted;
  std::vector<std::uint64_t> seeds = random ? spec.seeds : std::vector<std::uint64_t>{0};

  std::vector<ScalingRow> rows;
  for (std::size_t n : spec.n_grid)
    for (std::uint64_t s : seeds) {
      ScalingRow row;
      row.n = n;
      row.seed = s;
      rows.push_back(row);
    }

  parallel_for(rows.size(), spec.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t c = begin; c < end; ++c) {
      ScalingRow& row = rows[c];
      const CoefTensor t = build_family_tensor(spec, row.n, row.seed);
      row.mixed_norm = mixed_norm(block_restrict(t, spec.partition), spec.q);
      NormEstimate est = spec.norm_mode == NormMode::exact
                             ? exact_real(t, {spec.exact.bit_budget, 1})
                             : sandwich(t, spec.ascent_restarts, row.seed);
      row.norm_lower = est.lower;
      row.norm_upper = est.upper;
      row.ratio_hi = row.mixed_norm / est.lower;
      row.ratio_lo = est.upper ? row.mixed_norm / *est.upper : 0.0;
    }
  });
  result.rows = std::move(rows);

  const AdmissibilityReport report = is_admissible_fast(spec.q);
  result.max_deficit = report.max_deficit;
  result.predicted_slope = std::max(0.0, report.max_deficit);

  std::set<std::size_t> distinct(spec.n_grid.begin(), spec.n_grid.end());
  if (distinct.size() >= 3) {
    std::vector<double> x, y;
    for (const auto& row : result.rows) {
      const double mid = row.norm_upper ? 0.5 * (row.ratio_lo + row.ratio_hi) : row.ratio_hi;
      if (!(mid > 0.0) || !std::isfinite(mid)) continue;
      x.push_back(std::log(static_cast<double>(row.n)));
      y.push_back(std::log(mid));
    }
    if (x.size() >= 3) {
      result.fit = fit_slope(x, y);
      const double lo = result.fit->slope - 2.0 * result.fit->std_error;
      const double hi = result.fit->slope + 2.0 * result.fit->std_error;
      if (lo > kTrendThreshold)
        result.verdict = Verdict::growing;
      else if (hi <= kTrendThreshold)
        result.verdict = Verdict::bounded;
    }
  }
  return result;
}

}  // namespace bhlab
