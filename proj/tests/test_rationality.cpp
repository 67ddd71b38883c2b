#include <gtest/gtest.h>

#include <vector>

#include "flintlab/errors.hpp"
#include "flintlab/rationality.hpp"
#include "flintlab/transcendental.hpp"
#include "mpfr_oracle.hpp"

using namespace flintlab;

namespace {

std::vector<std::int64_t> as_ints(const std::vector<BigInt>& v) {
  std::vector<std::int64_t> out;
  for (const auto& x : v) out.push_back(x.to_int64());
  return out;
}

std::vector<std::uint64_t> indices(const std::vector<SpikeRecord>& records) {
  std::vector<std::uint64_t> out;
  for (const auto& r : records) out.push_back(r.n);
  return out;
}

const std::vector<std::int64_t> kPiTerms{3, 7, 15, 1, 292, 1, 1, 1, 2, 1, 3, 1, 14,
                                          2, 1, 1, 2, 2, 2, 2, 1, 84, 2, 1, 1};

}  // namespace

TEST(ContinuedFraction, Rationals) {
  EXPECT_EQ(as_ints(cf_terms(Rational{BigInt(355), BigInt(113)}, 10).terms), (std::vector<std::int64_t>{3, 7, 16}));
  EXPECT_EQ(as_ints(cf_terms(Rational{BigInt(415), BigInt(93)}, 10).terms), (std::vector<std::int64_t>{4, 2, 6, 7}));
  EXPECT_FALSE(cf_terms(Rational{BigInt(415), BigInt(93)}, 10).precision_exhausted);
  EXPECT_EQ(as_ints(cf_terms(Rational{BigInt(415), BigInt(93)}, 2).terms), (std::vector<std::int64_t>{4, 2}));
}

TEST(ContinuedFraction, PiKnownPrefix) {
  const CfExpansion cf = pi_cf_terms(256, kPiTerms.size());
  EXPECT_EQ(as_ints(cf.terms), kPiTerms);
  EXPECT_FALSE(cf.precision_exhausted);
}

TEST(ContinuedFraction, LowPrecisionIsMarked) {
  const CfExpansion cf = pi_cf_terms(16, 20);
  EXPECT_TRUE(cf.precision_exhausted);
  EXPECT_LT(cf.terms.size(), 20u);
  for (std::size_t i = 0; i < cf.terms.size(); ++i) EXPECT_EQ(cf.terms[i].to_int64(), kPiTerms[i]);
}

TEST(ContinuedFraction, IntervalKeepsCommonPrefix) {
  const MpReal pi = compute_pi(64);
  const CfExpansion cf = cf_terms(pi, 40);
  EXPECT_TRUE(cf.precision_exhausted);
  for (std::size_t i = 0; i < cf.terms.size(); ++i) EXPECT_EQ(cf.terms[i].to_int64(), kPiTerms[i]);
  EXPECT_GE(cf.terms.size(), 10u);
}

TEST(Convergents, OfPi) {
  const std::vector<BigInt> terms{BigInt(3), BigInt(7), BigInt(15), BigInt(1), BigInt(292)};
  const auto c = convergents(terms);
  ASSERT_EQ(c.size(), 5u);
  const std::vector<std::pair<std::int64_t, std::int64_t>> expected{
      {3, 1}, {22, 7}, {333, 106}, {355, 113}, {103993, 33102}};
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_EQ(c[i].p.to_int64(), expected[i].first);
    EXPECT_EQ(c[i].q.to_int64(), expected[i].second);
    EXPECT_EQ(c[i].index, i);
  }
}

TEST(Spikes, UpTo400) {
  const auto records = spike_indices(400, 64);
  EXPECT_EQ(indices(records), (std::vector<std::uint64_t>{1, 3, 22, 333, 355}));
  EXPECT_FALSE(records.front().lambda.has_value());
  EXPECT_NEAR(records.back().abs_sin.to_double(), 3.0144e-5, 1e-9);
}

TEST(Spikes, SingleElementRange) {
  EXPECT_EQ(indices(spike_indices(1, 64)), (std::vector<std::uint64_t>{1}));
}

TEST(Spikes, MatchExhaustiveMpfrScan) {
  std::vector<std::uint64_t> expected;
  oracle::Mpfr best(200), cur(200), n(200);
  mpfr_set_inf(best.get(), 1);
  for (std::uint64_t i = 1; i <= 5000; ++i) {
    mpfr_set_ui(n.get(), i, MPFR_RNDN);
    mpfr_sin(cur.get(), n.get(), MPFR_RNDN);
    mpfr_abs(cur.get(), cur.get(), MPFR_RNDN);
    if (mpfr_less_p(cur.get(), best.get())) {
      expected.push_back(i);
      mpfr_set(best.get(), cur.get(), MPFR_RNDN);
    }
  }
  EXPECT_EQ(indices(spike_indices(5000, 64)), expected);
}

TEST(Spikes, ThreadsAndChunksDoNotChangeResult) {
  const auto a = spike_indices(20000, 64, 1, 4096);
  const auto b = spike_indices(20000, 64, 4, 333);
  ASSERT_EQ(indices(a), indices(b));
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_TRUE(identical(a[i].abs_sin, b[i].abs_sin));
}

TEST(LocalExponent, KnownValues) {
  EXPECT_NEAR(local_exponent(2, 64), 0.13718, 1e-5);
  EXPECT_NEAR(local_exponent(3, 64), 1.78238, 1e-5);
  EXPECT_NEAR(local_exponent(22, 64), 1.52932, 1e-5);
  EXPECT_NEAR(local_exponent(333, 64), 0.81448, 1e-5);
  EXPECT_NEAR(local_exponent(355, 64), 1.77270, 1e-5);
  EXPECT_THROW(local_exponent(1, 64), DomainError);
}

TEST(AbsSinLess, Ordering) {
  EXPECT_TRUE(abs_sin_less(355, 22, 64));
  EXPECT_FALSE(abs_sin_less(22, 355, 64));
  EXPECT_TRUE(abs_sin_less(333, 22, 16));
}
