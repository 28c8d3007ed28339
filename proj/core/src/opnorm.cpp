#include "bhlab/opnorm.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "bhlab/errors.hpp"
#include "bhlab/parallel.hpp"

namespace bhlab {
namespace {

using Complex = std::complex<double>;

// Incremental tables are rebuilt from scratch at every multiple of this
// Gray index, which also aligns worker chunks so results are bit-identical
// for any worker count.
constexpr std::uint64_t kResyncPeriod = 4096;

double sign_of(double v) { return v < 0.0 ? -1.0 : 1.0; }

Complex phase_of(Complex g) {
  const double a = std::abs(g);
  return a == 0.0 ? Complex(1.0, 0.0) : std::conj(g) / a;
}

// Contracts every argument except `skip` into an n-vector.
template <class Scalar>
std::vector<Scalar> contract_except(const std::vector<Scalar>& data, std::size_t m, std::size_t n,
                                    const std::vector<std::vector<Scalar>>& x, std::size_t skip) {
  std::vector<Scalar> cur = data;
  // Leading arguments 0..skip-1.
  for (std::size_t a = 0; a < skip; ++a) {
    const std::size_t rest = cur.size() / n;
    std::vector<Scalar> next(rest, Scalar(0));
    for (std::size_t i = 0; i < n; ++i) {
      const Scalar xi = x[a][i];
      const Scalar* row = cur.data() + i * rest;
      for (std::size_t r = 0; r < rest; ++r) next[r] += xi * row[r];
    }
    cur = std::move(next);
  }
  // Trailing arguments m-1 down to skip+1.
  for (std::size_t a = m; a-- > skip + 1;) {
    const std::size_t rows = cur.size() / n;
    std::vector<Scalar> next(rows, Scalar(0));
    for (std::size_t r = 0; r < rows; ++r) {
      const Scalar* row = cur.data() + r * n;
      Scalar acc(0);
      for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[a][j];
      next[r] = acc;
    }
    cur = std::move(next);
  }
  return cur;
}

std::vector<Complex> complex_data(const CoefTensor& t) {
  std::vector<Complex> d(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) d[i] = t.at(i);
  return d;
}

// Free sign coordinate of the Gray enumeration: argument `arg`, entry `coord`.
struct Coordinate {
  std::size_t arg;
  std::size_t coord;
};

struct Candidate {
  double value = -1.0;
  std::uint64_t index = 0;
};

class VertexWalker {
 public:
  VertexWalker(const CoefTensor& t, std::span<const Coordinate> coords)
      : t_(t), m_(t.arity()), n_(t.side()), coords_(coords) {
    x_.assign(m_ - 1, std::vector<double>(n_, 1.0));
    tables_.resize(m_);
    for (std::size_t level = 1; level < m_; ++level) {
      std::size_t len = 1;
      for (std::size_t a = level; a < m_; ++a) len *= n_;
      tables_[level].assign(len, 0.0);
    }
    delta_.resize(m_);
    for (std::size_t level = 1; level < m_; ++level) delta_[level].resize(tables_[level].size());
  }

  // Sets every free sign from gray code g and rebuilds all tables.
  void reset(std::uint64_t gray) {
    for (auto& v : x_) std::fill(v.begin(), v.end(), 1.0);
    for (std::size_t b = 0; b < coords_.size(); ++b)
      if (gray >> b & 1u) x_[coords_[b].arg][coords_[b].coord] = -1.0;
    for (std::size_t level = 1; level < m_; ++level) {
      const double* src = level == 1 ? t_.real().data() : tables_[level - 1].data();
      auto& dst = tables_[level];
      const std::size_t rest = dst.size();
      std::fill(dst.begin(), dst.end(), 0.0);
      for (std::size_t i = 0; i < n_; ++i) {
        const double xi = x_[level - 1][i];
        const double* row = src + i * rest;
        for (std::size_t r = 0; r < rest; ++r) dst[r] += xi * row[r];
      }
    }
  }

  void flip(std::size_t bit) {
    const auto [arg, c] = coords_[bit];
    const double old = x_[arg][c];
    x_[arg][c] = -old;
    // Table arg+1 changes by -2*old times slice c of table arg.
    const std::size_t level = arg + 1;
    const double* src = level == 1 ? t_.real().data() : tables_[level - 1].data();
    const std::size_t rest = tables_[level].size();
    const double* slice = src + c * rest;
    auto& d0 = delta_[level];
    for (std::size_t r = 0; r < rest; ++r) {
      d0[r] = -2.0 * old * slice[r];
      tables_[level][r] += d0[r];
    }
    for (std::size_t l = level + 1; l < m_; ++l) {
      const auto& prev = delta_[l - 1];
      auto& d = delta_[l];
      const std::size_t len = d.size();
      std::fill(d.begin(), d.end(), 0.0);
      for (std::size_t i = 0; i < n_; ++i) {
        const double xi = x_[l - 1][i];
        const double* row = prev.data() + i * len;
        for (std::size_t r = 0; r < len; ++r) d[r] += xi * row[r];
      }
      for (std::size_t r = 0; r < len; ++r) tables_[l][r] += d[r];
    }
  }

  double objective() const {
    double s = 0.0;
    for (double v : tables_[m_ - 1]) s += std::abs(v);
    return s;
  }

 private:
  const CoefTensor& t_;
  std::size_t m_;
  std::size_t n_;
  std::span<const Coordinate> coords_;
  std::vector<std::vector<double>> x_;
  // tables_[l] = T contracted with x^(0..l-1); length n^{m-l}.
  std::vector<std::vector<double>> tables_;
  std::vector<std::vector<double>> delta_;
};

NormEstimate finish_exact(const CoefTensor& t, std::vector<std::vector<double>> signs) {
  const std::size_t m = t.arity();
  std::vector<double> data(t.real().begin(), t.real().end());
  signs.emplace_back(t.side(), 1.0);
  const auto g = contract_except(data, m, t.side(), signs, m - 1);
  double value = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    signs[m - 1][i] = sign_of(g[i]);
    value += std::abs(g[i]);
  }
  NormEstimate est;
  est.lower = value;
  est.upper = value;
  est.exact = true;
  est.field = Field::real;
  for (const auto& s : signs) est.certificate.emplace_back(s.begin(), s.end());
  return est;
}

}  // namespace

std::complex<double> evaluate_form(const CoefTensor& t, const std::vector<FormArgument>& args) {
  const std::size_t m = t.arity();
  if (args.size() != m) throw ValidationError("form needs " + std::to_string(m) + " arguments");
  for (const auto& a : args)
    if (a.size() != t.side()) throw ValidationError("argument length must equal the side n");
  const auto g = contract_except(complex_data(t), m, t.side(), args, m - 1);
  Complex acc(0.0);
  for (std::size_t i = 0; i < g.size(); ++i) acc += g[i] * args[m - 1][i];
  return acc;
}

NormEstimate exact_real(const CoefTensor& t, const ExactOptions& options) {
  if (t.field() != Field::real)
    throw ValidationError("exact operator norm is only available for real scalars; use ascent");
  const std::size_t m = t.arity();
  const std::size_t n = t.side();
  if (m == 1) return finish_exact(t, {});

  const std::size_t bits = (m - 1) * n;
  if (bits > options.bit_budget || bits > 62)
    throw CapacityError("exact norm needs 2^" + std::to_string(bits) +
                        " vertices, above the budget of 2^" + std::to_string(options.bit_budget) +
                        "; use ascent or sandwich bounds");

  // Lowest Gray bits go to the last enumerated argument, whose flips are the
  // cheapest. x^(1)_1 stays +1: negating x^(1) leaves the objective unchanged.
  std::vector<Coordinate> coords;
  for (std::size_t arg = m - 1; arg-- > 0;)
    for (std::size_t c = (arg == 0 ? 1 : 0); c < n; ++c) coords.push_back({arg, c});

  const std::uint64_t total = std::uint64_t{1} << coords.size();
  const std::uint64_t blocks = (total + kResyncPeriod - 1) / kResyncPeriod;
  const std::size_t workers = std::min<std::uint64_t>(resolve_threads(options.threads), blocks);
  std::vector<Candidate> best(workers);

  const std::uint64_t blocks_per_worker = (blocks + workers - 1) / workers;
  parallel_for(workers, static_cast<unsigned>(workers), [&](std::size_t wb, std::size_t we) {
    for (std::size_t w = wb; w < we; ++w) {
      const std::uint64_t begin = std::min(total, w * blocks_per_worker * kResyncPeriod);
      const std::uint64_t end = std::min(total, (w + 1) * blocks_per_worker * kResyncPeriod);
      VertexWalker walker(t, coords);
      Candidate local;
      for (std::uint64_t i = begin; i < end; ++i) {
        if (i % kResyncPeriod == 0)
          walker.reset(i ^ (i >> 1));
        else
          walker.flip(static_cast<std::size_t>(std::countr_zero(i)));
        const double v = walker.objective();
        if (v > local.value) local = {v, i};
      }
      best[w] = local;
    }
  });

  Candidate winner;
  for (const auto& c : best)
    if (c.value > winner.value) winner = c;  // chunks are ordered, so ties keep the lowest index

  const std::uint64_t gray = winner.index ^ (winner.index >> 1);
  std::vector<std::vector<double>> signs(m - 1, std::vector<double>(n, 1.0));
  for (std::size_t b = 0; b < coords.size(); ++b)
    if (gray >> b & 1u) signs[coords[b].arg][coords[b].coord] = -1.0;
  return finish_exact(t, std::move(signs));
}

NormEstimate ascent_lower(const CoefTensor& t, std::size_t restarts, std::uint64_t seed) {
  if (restarts == 0) throw ValidationError("ascent needs at least one restart");
  const std::size_t m = t.arity();
  const std::size_t n = t.side();
  const bool cplx = t.field() == Field::complex;
  const auto data = complex_data(t);

  constexpr std::size_t kMaxSweeps = 500;
  std::vector<FormArgument> best_args;
  double best = -1.0;

  for (std::size_t r = 0; r < restarts; ++r) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(r)};
    std::mt19937_64 rng(seq);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    std::vector<FormArgument> x(m, FormArgument(n, Complex(1.0, 0.0)));
    for (std::size_t a = 0; a + 1 < m; ++a) {
      for (auto& v : x[a]) {
        if (cplx)
          v = std::polar(1.0, 2.0 * std::numbers::pi * unit(rng));
        else
          v = unit(rng) < 0.5 ? -1.0 : 1.0;
      }
    }

    auto update = [&](std::size_t a) {
      const auto g = contract_except(data, m, n, x, a);
      double value = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        x[a][i] = cplx ? phase_of(g[i]) : Complex(sign_of(g[i].real()), 0.0);
        value += cplx ? std::abs(g[i]) : std::abs(g[i].real());
      }
      return value;
    };

    double value = update(m - 1);
    for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
      const double before = value;
      for (std::size_t a = 0; a < m; ++a) value = update(a);
      if (value <= before * (1.0 + 1e-14) + 1e-300) break;
    }
    if (value > best) {
      best = value;
      best_args = x;
    }
  }

  NormEstimate est;
  est.lower = std::abs(evaluate_form(t, best_args));
  est.exact = false;
  est.field = t.field();
  est.certificate = std::move(best_args);
  return est;
}

double bilinear_upper(const CoefTensor& t) {
  if (t.arity() != 2) throw ValidationError("bilinear upper bound needs m = 2");
  if (t.field() != Field::real) throw ValidationError("bilinear upper bound needs real scalars");
  const auto n = static_cast<Eigen::Index>(t.side());
  using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const Eigen::Map<const RowMatrix> a(t.real().data(), n, n);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  const double sigma = svd.singularValues()(0);
  // Allowance for SVD rounding so the bound stays above the true norm.
  return static_cast<double>(n) * sigma * (1.0 + 64.0 * std::numeric_limits<double>::epsilon());
}

NormEstimate sandwich(const CoefTensor& t, std::size_t restarts, std::uint64_t seed) {
  const double upper = bilinear_upper(t);
  NormEstimate est = ascent_lower(t, restarts, seed);
  est.upper = upper;
  return est;
}

}  // namespace bhlab
