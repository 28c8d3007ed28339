#include "bhlab/randforms.hpp"

#include <bit>
#include <limits>
#include <string>

#include "bhlab/errors.hpp"
#include "bhlab/parallel.hpp"

namespace bhlab {
namespace {

constexpr std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t stream_key(std::uint64_t seed, std::uint64_t k, std::uint64_t n) {
  return splitmix64(splitmix64(splitmix64(seed) ^ k) ^ (n * 0xD1B54A32D192ED03ull));
}

}  // namespace

CoefTensor sample_sign_tensor(const KszSpec& spec, std::size_t budget, unsigned threads) {
  if (spec.k == 0 || spec.n == 0) throw ValidationError("random form needs k, n >= 1");
  const std::size_t volume = checked_volume(spec.n, spec.k, budget);
  const std::uint64_t key = stream_key(spec.seed, spec.k, spec.n);
  std::vector<double> re(volume);
  parallel_for(volume, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i)
      re[i] = (splitmix64(key ^ splitmix64(i)) >> 63) ? -1.0 : 1.0;
  });
  return CoefTensor(spec.k, spec.n, spec.field, std::move(re), {}, budget);
}

CoefTensor lift(const CoefTensor& t, std::size_t m, std::size_t budget) {
  const std::size_t k = t.arity();
  if (m < k)
    throw ValidationError("cannot lift a " + std::to_string(k) + "-linear form to arity " +
                          std::to_string(m));
  const std::size_t n = t.side();
  const std::size_t volume = checked_volume(n, m, budget);
  // Padding indices all equal to the first coordinate: flat = flat_k * n^{m-k}.
  const std::size_t pad = volume / t.size();
  const bool cplx = t.field() == Field::complex;
  std::vector<double> re(volume, 0.0), im(cplx ? volume : 0, 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    re[i * pad] = t.real()[i];
    if (cplx) im[i * pad] = t.imag()[i];
  }
  return CoefTensor(m, n, t.field(), std::move(re), std::move(im), budget);
}

CoefTensor littlewood() { return CoefTensor(2, 2, Field::real, {1.0, 1.0, 1.0, -1.0}); }

CoefTensor sylvester_hadamard(std::size_t n) {
  if (n == 0 || !std::has_single_bit(n))
    throw ValidationError("Sylvester-Hadamard order must be a power of two, got " +
                          std::to_string(n));
  checked_volume(n, 2);
  std::vector<double> re(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) re[i * n + j] = (std::popcount(i & j) & 1) ? -1.0 : 1.0;
  return CoefTensor(2, n, Field::real, std::move(re));
}

CoefTensor ones(std::size_t m, std::size_t n, Field field) {
  return CoefTensor(m, n, field, std::vector<double>(checked_volume(n, m), 1.0));
}

CoefTensor diagonal(std::size_t m, std::size_t n, Field field) {
  std::vector<double> re(checked_volume(n, m), 0.0);
  std::size_t step = 0;
  for (std::size_t a = 0, w = 1; a < m; ++a, w *= n) step += w;
  for (std::size_t i = 0; i < n; ++i) re[i * step] = 1.0;
  return CoefTensor(m, n, field, std::move(re));
}

}  // namespace bhlab
