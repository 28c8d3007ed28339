#include "bhlab/tensor.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bhlab/errors.hpp"
#include "bhlab/randforms.hpp"
#include "oracles.hpp"

namespace bhlab {
namespace {

ExponentTuple qs(std::vector<double> v) { return ExponentTuple(std::move(v)); }

TEST(MixedNorm, AllOnesIsSeparable) {
  EXPECT_NEAR(mixed_norm(ones(2, 3), qs({2.0, 1.0})), std::pow(3.0, 1.5), 1e-12);
  EXPECT_NEAR(mixed_norm(ones(2, 3), qs({2.0, 1.0})), 5.196152422706632, 1e-12);
}

TEST(MixedNorm, LittlewoodAtClassicalExponent) {
  const double v = mixed_norm(littlewood(), classical_bh_tuple(2));
  EXPECT_NEAR(v, oracle::mixed_norm(littlewood(), {4.0 / 3.0, 4.0 / 3.0}), 1e-14);
  EXPECT_NEAR(v, std::pow(2.0, 1.5), 1e-12);
}

TEST(MixedNorm, DiagonalDelta) {
  EXPECT_NEAR(mixed_norm(diagonal(2, 3), qs({1.0, 3.0})), 3.0, 1e-12);
}

TEST(MixedNorm, SignTensorsFollowClosedForm) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> qd(0.3, 6.0);
  for (std::size_t k = 1; k <= 4; ++k) {
    for (std::size_t n = 1; n <= 6; ++n) {
      const auto t = sample_sign_tensor({k, n, rng()});
      std::vector<double> q(k);
      double expo = 0.0;
      for (double& v : q) {
        v = qd(rng);
        expo += 1.0 / v;
      }
      const double expect = std::pow(static_cast<double>(n), expo);
      EXPECT_NEAR(mixed_norm(t, qs(q)) / expect, 1.0, 1e-10);
    }
  }
}

TEST(MixedNorm, ZeroOnlyForZeroTensor) {
  EXPECT_EQ(mixed_norm(CoefTensor::zeros(3, 4), qs({1.0, 2.0, 0.5})), 0.0);
  std::vector<double> re(16, 0.0);
  re[5] = 1e-300;
  EXPECT_GT(mixed_norm(CoefTensor(2, 4, Field::real, re), qs({1.0, 2.0})), 0.0);
}

TEST(MixedNorm, ErrorsAreExplicit) {
  EXPECT_THROW(mixed_norm(ones(2, 3), qs({1.0})), ValidationError);
  // 5^{1/0.001} overflows the double range.
  EXPECT_THROW(mixed_norm(ones(1, 5), qs({0.001})), NumericError);
}

TEST(MixedNorm, LargeEntriesDoNotSpuriouslyOverflow) {
  std::vector<double> re(4, 1e300);
  EXPECT_NEAR(mixed_norm(CoefTensor(1, 4, Field::real, re), qs({0.5})) / 1.6e301, 1.0, 1e-12);
}

TEST(MixedNorm, ThreadCountDoesNotChangeResult) {
  std::mt19937_64 rng(11);
  const auto t = oracle::random_real(4, 7, rng);
  const auto q = qs({1.3, 0.7, 2.5, 1.1});
  const double one = mixed_norm(t, q, 1);
  EXPECT_EQ(one, mixed_norm(t, q, 3));
  EXPECT_EQ(one, mixed_norm(t, q, 8));
}

TEST(FlatNorm, Examples) {
  EXPECT_NEAR(flat_qnorm(littlewood(), 2.0), 2.0, 1e-15);
  EXPECT_EQ(flat_qnorm(CoefTensor::zeros(2, 3), 1.5), 0.0);
  EXPECT_NEAR(flat_qnorm(CoefTensor(1, 3, Field::real, {1.0, -2.0, 3.0}), 1.0), 6.0, 1e-15);
  EXPECT_THROW(flat_qnorm(littlewood(), 0.0), ValidationError);
}

TEST(BlockRestrict, Examples) {
  std::mt19937_64 rng(5);
  const auto t2 = oracle::random_real(2, 4, rng);
  const auto diag = block_restrict(t2, Partition({2}));
  ASSERT_EQ(diag.arity(), 1u);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(diag.real()[i], t2.real()[i * 4 + i]);

  const auto t3 = oracle::random_real(3, 3, rng);
  const auto s = block_restrict(t3, Partition({2, 1}));
  ASSERT_EQ(s.arity(), 2u);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(s.real()[i * 3 + j], t3.real()[i * 9 + i * 3 + j]);

  const auto s2 = block_restrict(t3, Partition({1, 2}));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      EXPECT_EQ(s2.real()[i * 3 + j], t3.real()[i * 9 + j * 3 + j]);

  EXPECT_EQ(block_restrict(t3, Partition::trivial(3)), t3);
  EXPECT_THROW(block_restrict(t3, Partition({2, 2})), ValidationError);
  EXPECT_THROW(Partition({1, 0}), ValidationError);
}

TEST(BlockRestrict, KeepsComplexEntries) {
  std::mt19937_64 rng(8);
  const auto t = oracle::random_complex(2, 3, rng);
  const auto d = block_restrict(t, Partition({2}));
  EXPECT_EQ(d.field(), Field::complex);
  EXPECT_EQ(d.at(2), t.at(8));
}

TEST(CoefTensor, ConstructionChecks) {
  EXPECT_THROW(CoefTensor(2, 2, Field::real, {1.0, 2.0, 3.0}), ValidationError);
  EXPECT_THROW(CoefTensor(1, 2, Field::real, {1.0, NAN}), ValidationError);
  EXPECT_THROW(CoefTensor(1, 2, Field::real, {1.0, 1.0}, {0.0, 0.0}), ValidationError);
  EXPECT_THROW(CoefTensor::zeros(8, 16, Field::real, 1u << 20), CapacityError);
  EXPECT_THROW(checked_volume(1000, 40), CapacityError);
  EXPECT_THROW(parse_field("quaternion"), ValidationError);
}

// Property suites over random tensors.

TEST(MixedNormProperty, MatchesNestedLoopOracle) {
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> md(1, 4), nd(1, 5);
  std::uniform_real_distribution<double> qd(0.4, 6.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = md(rng), n = nd(rng);
    const auto t = trial % 3 == 0 ? oracle::random_complex(m, n, rng) : oracle::random_real(m, n, rng);
    std::vector<double> q(m);
    for (double& v : q) v = qd(rng);
    const double expect = oracle::mixed_norm(t, q);
    EXPECT_NEAR(mixed_norm(t, qs(q)), expect, 1e-12 * expect);
  }
}

TEST(MixedNormProperty, Homogeneity) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 100; ++trial) {
    const auto t = oracle::random_real(3, 3, rng);
    const auto q = qs({1.5, 0.8, 3.0});
    const std::complex<double> c(std::uniform_real_distribution<double>(-3, 3)(rng),
                                 trial % 2 ? 0.0 : 1.7);
    EXPECT_NEAR(mixed_norm(t.scaled(c), q), std::abs(c) * mixed_norm(t, q),
                1e-12 * std::abs(c) * mixed_norm(t, q));
  }
}

TEST(MixedNormProperty, LargerExponentsGiveSmallerNorms) {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> qd(0.5, 4.0), bump(0.0, 2.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto t = oracle::random_real(3, 4, rng);
    std::vector<double> q(3), q2(3);
    for (std::size_t j = 0; j < 3; ++j) {
      q[j] = qd(rng);
      q2[j] = q[j] + (trial % 3 == static_cast<int>(j) ? bump(rng) : 0.0);
    }
    EXPECT_LE(mixed_norm(t, qs(q2)), mixed_norm(t, qs(q)) * (1.0 + 1e-12));
  }
}

TEST(MixedNormProperty, EqualExponentsCollapseToFlatNorm) {
  std::mt19937_64 rng(45);
  std::uniform_real_distribution<double> qd(0.5, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t m = 1 + trial % 4;
    const auto t = oracle::random_real(m, 4, rng);
    const double q = qd(rng);
    const double flat = flat_qnorm(t, q);
    EXPECT_NEAR(mixed_norm(t, qs(std::vector<double>(m, q))), flat, 1e-12 * flat);
  }
}

TEST(PermuteAxes, MatchesIndexRelabeling) {
  std::mt19937_64 rng(46);
  const auto t = oracle::random_real(3, 3, rng);
  const std::vector<std::size_t> perm{2, 0, 1};
  const auto p = permute_axes(t, perm);
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = 0; b < 3; ++b)
      for (std::size_t c = 0; c < 3; ++c) {
        std::size_t src[3];
        src[perm[0]] = a;
        src[perm[1]] = b;
        src[perm[2]] = c;
        EXPECT_EQ(p.real()[a * 9 + b * 3 + c], t.real()[src[0] * 9 + src[1] * 3 + src[2]]);
      }
  EXPECT_THROW(permute_axes(t, std::vector<std::size_t>{0, 0, 1}), ValidationError);
}

}  // namespace
}  // namespace bhlab
