#include "bhlab/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bhlab/errors.hpp"
#include "bhlab/parallel.hpp"

namespace bhlab {
namespace {

// Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// (sum v_i^q)^{1/q} for nonnegative v, scaled by the group maximum so that
// the power sum itself never overflows.
double group_norm(std::span<const double> v, double q) {
  const double peak = *std::max_element(v.begin(), v.end());
  if (peak == 0.0) return 0.0;
  CompensatedSum acc;
  for (double x : v) {
    if (x != 0.0) acc.add(std::pow(x / peak, q));
  }
  return peak * std::pow(acc.value(), 1.0 / q);
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    throw NumericError(std::string(what) + " overflowed the double range");
}

}  // namespace

std::string_view to_string(Field f) { return f == Field::real ? "real" : "complex"; }

Field parse_field(std::string_view name) {
  if (name == "real") return Field::real;
  if (name == "complex") return Field::complex;
  throw ValidationError("unknown scalar field '" + std::string(name) + "'");
}

std::size_t checked_volume(std::size_t n, std::size_t m, std::size_t budget) {
  if (n == 0 || m == 0) throw ValidationError("tensor arity and side must be positive");
  std::size_t v = 1;
  for (std::size_t a = 0; a < m; ++a) {
    if (v > budget / n)
      throw CapacityError("tensor with n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                          " exceeds the scalar budget of " + std::to_string(budget));
    v *= n;
  }
  return v;
}

CoefTensor::CoefTensor(std::size_t m, std::size_t n, Field field, std::vector<double> real,
                       std::vector<double> imag, std::size_t budget)
    : m_(m), n_(n), field_(field), re_(std::move(real)), im_(std::move(imag)) {
  const std::size_t volume = checked_volume(n, m, budget);
  if (re_.size() != volume)
    throw ValidationError("expected " + std::to_string(volume) + " entries, got " +
                          std::to_string(re_.size()));
  if (field_ == Field::real && !im_.empty())
    throw ValidationError("real tensor given imaginary parts");
  if (field_ == Field::complex && im_.empty()) im_.assign(volume, 0.0);
  if (im_.size() != 0 && im_.size() != volume)
    throw ValidationError("imaginary part length mismatch");
  auto finite = [](double x) { return std::isfinite(x); };
  if (!std::all_of(re_.begin(), re_.end(), finite) || !std::all_of(im_.begin(), im_.end(), finite))
    throw ValidationError("tensor entries must be finite");
}

CoefTensor CoefTensor::zeros(std::size_t m, std::size_t n, Field field, std::size_t budget) {
  const std::size_t volume = checked_volume(n, m, budget);
  return CoefTensor(m, n, field, std::vector<double>(volume, 0.0),
                    field == Field::complex ? std::vector<double>(volume, 0.0)
                                            : std::vector<double>{},
                    budget);
}

std::size_t CoefTensor::flat_index(std::span<const std::size_t> index) const {
  if (index.size() != m_) throw ValidationError("index arity mismatch");
  std::size_t flat = 0;
  for (std::size_t i : index) {
    if (i >= n_) throw ValidationError("index out of range");
    flat = flat * n_ + i;
  }
  return flat;
}

CoefTensor CoefTensor::scaled(Complex c) const {
  const bool to_complex = field_ == Field::complex || c.imag() != 0.0;
  std::vector<double> re(size()), im(to_complex ? size() : 0);
  for (std::size_t i = 0; i < size(); ++i) {
    const Complex v = at(i) * c;
    re[i] = v.real();
    if (to_complex) im[i] = v.imag();
  }
  return CoefTensor(m_, n_, to_complex ? Field::complex : Field::real, std::move(re),
                    std::move(im), std::numeric_limits<std::size_t>::max());
}

Partition::Partition(std::vector<std::size_t> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw ValidationError("partition must have at least one block");
  if (std::find(blocks_.begin(), blocks_.end(), std::size_t{0}) != blocks_.end())
    throw ValidationError("partition blocks must be positive");
}

std::size_t Partition::total() const {
  return std::accumulate(blocks_.begin(), blocks_.end(), std::size_t{0});
}

double mixed_norm(const CoefTensor& t, const ExponentTuple& q, unsigned threads) {
  const std::size_t k = t.arity();
  const std::size_t n = t.side();
  if (q.size() != k)
    throw ValidationError("mixed norm needs " + std::to_string(k) + " exponents, got " +
                          std::to_string(q.size()));

  std::vector<double> level(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) level[i] = t.abs_at(i);

  // Collapse the last remaining index with exponent q_{axis}.
  for (std::size_t axis = k; axis-- > 0;) {
    const std::size_t groups = level.size() / n;
    const double qa = q[axis];
    std::vector<double> next(groups);
    parallel_for(groups, threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t g = begin; g < end; ++g)
        next[g] = group_norm(std::span<const double>(level).subspan(g * n, n), qa);
    });
    for (double v : next) require_finite(v, "mixed norm");
    level = std::move(next);
  }
  return level.front();
}

double flat_qnorm(const CoefTensor& t, double q) {
  if (!(q > 0.0) || !std::isfinite(q)) throw ValidationError("flat norm exponent must be positive");
  std::vector<double> a(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) a[i] = t.abs_at(i);
  const double v = group_norm(a, q);
  require_finite(v, "flat norm");
  return v;
}

CoefTensor block_restrict(const CoefTensor& t, const Partition& p) {
  if (p.total() != t.arity())
    throw ValidationError("partition sums to " + std::to_string(p.total()) + " but tensor arity is " +
                          std::to_string(t.arity()));
  const std::size_t n = t.side();
  const std::size_t k = p.size();
  const std::size_t volume = checked_volume(n, k, std::numeric_limits<std::size_t>::max());

  // Stride of block j in the m-index: sum of n^{position} over its slots.
  std::vector<std::size_t> stride(k, 0);
  std::size_t pos_weight = 1;
  for (std::size_t j = k; j-- > 0;) {
    for (std::size_t r = 0; r < p.blocks()[j]; ++r) {
      stride[j] += pos_weight;
      pos_weight *= n;
    }
  }

  const bool cplx = t.field() == Field::complex;
  std::vector<double> re(volume), im(cplx ? volume : 0);
  std::vector<std::size_t> idx(k, 0);
  for (std::size_t flat = 0; flat < volume; ++flat) {
    std::size_t src = 0;
    for (std::size_t j = 0; j < k; ++j) src += idx[j] * stride[j];
    re[flat] = t.real()[src];
    if (cplx) im[flat] = t.imag()[src];
    for (std::size_t j = k; j-- > 0;) {
      if (++idx[j] < n) break;
      idx[j] = 0;
    }
  }
  return CoefTensor(k, n, t.field(), std::move(re), std::move(im),
                    std::numeric_limits<std::size_t>::max());
}

CoefTensor permute_axes(const CoefTensor& t, std::span<const std::size_t> perm) {
  const std::size_t m = t.arity();
  const std::size_t n = t.side();
  if (perm.size() != m) throw ValidationError("permutation length must equal the arity");
  std::vector<bool> seen(m, false);
  for (std::size_t a : perm) {
    if (a >= m || seen[a]) throw ValidationError("not a permutation");
    seen[a] = true;
  }
  std::vector<std::size_t> src_stride(m);
  std::size_t w = 1;
  for (std::size_t a = m; a-- > 0;) {
    src_stride[a] = w;
    w *= n;
  }
  const bool cplx = t.field() == Field::complex;
  std::vector<double> re(t.size()), im(cplx ? t.size() : 0);
  std::vector<std::size_t> idx(m, 0);
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    std::size_t src = 0;
    for (std::size_t a = 0; a < m; ++a) src += idx[a] * src_stride[perm[a]];
    re[flat] = t.real()[src];
    if (cplx) im[flat] = t.imag()[src];
    for (std::size_t a = m; a-- > 0;) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return CoefTensor(m, n, t.field(), std::move(re), std::move(im),
                    std::numeric_limits<std::size_t>::max());
}

}  // namespace bhlab
