#include <gtest/gtest.h>

#include "kalmar/errors.hpp"
#include "kalmar/exact.hpp"
#include "oracles.hpp"

namespace kalmar {
namespace {

TEST(Kalmar, SmallValues) {
  EXPECT_EQ(kalmar_macmahon(PrimeSignature::of(12)), 8);
  EXPECT_EQ(kalmar_macmahon(PrimeSignature{}), 1);
  EXPECT_EQ(kalmar_recursive(PrimeSignature{}), 1);
  EXPECT_EQ(kalmar_macmahon(PrimeSignature{1}), 1);
  EXPECT_EQ(kalmar_macmahon(PrimeSignature{8, 3, 1}), 622592);
}

TEST(Kalmar, PrimePowersAreTwoToTheAMinusOne) {
  for (unsigned a = 1; a <= 60; ++a) {
    BigCount want = BigCount(1) << (a - 1);
    EXPECT_EQ(kalmar_macmahon(PrimeSignature{a}), want) << a;
    EXPECT_EQ(kalmar_recursive(PrimeSignature{a}), want) << a;
  }
}

TEST(Kalmar, SquarefreeGivesFubiniNumbers) {
  for (unsigned n = 1; n < testing::kFubini.size(); ++n) {
    PrimeSignature s = PrimeSignature::canonical(std::vector<unsigned>(n, 1));
    EXPECT_EQ(kalmar_macmahon(s), testing::kFubini[n]) << n;
    EXPECT_EQ(kalmar_recursive(s), testing::kFubini[n]) << n;
  }
}

TEST(Kalmar, AgreesWithDivisorSieveUpTo200k) {
  const std::size_t N = 200'000;
  auto K = testing::brute_kalmar(N);
  KalmarMemo memo;
  for (std::size_t n = 1; n <= N; ++n) {
    auto s = PrimeSignature::of(n);
    ASSERT_EQ(memo.get(s), K[n]) << n;
    if (n % 97 == 0) {
      ASSERT_EQ(kalmar_macmahon(s), K[n]) << n;
    }
  }
}

TEST(Kalmar, SeriesBracketContainsExactValue) {
  for (unsigned r = 1; r <= 10; ++r)
    for (const auto& s : signatures_with_Omega(r)) {
      auto b = kalmar_series_bounds(s, 2 * r + 8);
      EXPECT_TRUE(b.contains(kalmar_macmahon(s))) << s.to_string();
      EXPECT_LE(b.lower, b.upper);
    }
}

TEST(Kalmar, SeriesBracketTightensWithR) {
  PrimeSignature s{4, 2, 1};
  auto loose = kalmar_series_bounds(s, 20);
  auto tight = kalmar_series_bounds(s, 80);
  EXPECT_LE(loose.lower, tight.lower);
  EXPECT_GE(loose.upper, tight.upper);
  EXPECT_LT(tight.upper - tight.lower, BigRational(1, 1000));
}

TEST(Kalmar, SeriesRejectsShortTruncation) {
  EXPECT_THROW(kalmar_series_bounds(PrimeSignature{5, 3}, 7), PreconditionError);
  // R >= Omega but the tail ratio is still >= 1
  EXPECT_THROW(kalmar_series_bounds(PrimeSignature::canonical(std::vector<unsigned>(12, 1)), 12), PreconditionError);
}

TEST(Kalmar, TauR) {
  // tau_2(12) counts ordered pairs (d, 12/d)
  EXPECT_EQ(tau_r(PrimeSignature::of(12), 2), 6);
  EXPECT_EQ(tau_r(PrimeSignature::of(12), 1), 1);
  EXPECT_EQ(tau_r(PrimeSignature::of(12), 0), 0);
  EXPECT_EQ(tau_r(PrimeSignature{}, 0), 1);
  EXPECT_EQ(tau_r(PrimeSignature{}, 5), 1);
}

TEST(Kalmar, KpMultinomial) {
  EXPECT_EQ(kp_multinomial(PrimeSignature{2, 1}), 3);
  EXPECT_EQ(kp_multinomial(PrimeSignature{8, 3, 1}), 1980);
  EXPECT_EQ(kp_multinomial(PrimeSignature{}), 1);
}

TEST(Kalmar, MemoFillsAndRefuses) {
  KalmarMemo memo(5);
  EXPECT_THROW(memo.get(PrimeSignature{6, 4, 2}), ResourceError);
  KalmarMemo roomy;
  EXPECT_EQ(kalmar_recursive(PrimeSignature{6, 4, 2}, &roomy), kalmar_macmahon(PrimeSignature{6, 4, 2}));
  EXPECT_GT(roomy.size(), 5u);
}

TEST(Kalmar, LargeSignatureMethodsAgree) {
  PrimeSignature s{12, 6, 4, 2, 1, 1};
  EXPECT_EQ(kalmar_macmahon(s), kalmar_recursive(s));
}

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(5, 0), 1);
  EXPECT_EQ(binomial(3, 5), 0);
  EXPECT_EQ(binomial(100, 50), BigCount("100891344545564193334812497256"));
}

TEST(Eulerian, RowsAndChecksum) {
  EXPECT_EQ(eulerian_row(1), (std::vector<BigCount>{1}));
  EXPECT_EQ(eulerian_row(4), (std::vector<BigCount>{1, 11, 11, 1}));
  EXPECT_EQ(eulerian_row(5), (std::vector<BigCount>{1, 26, 66, 26, 1}));
  for (unsigned n = 1; n <= 120; ++n) {
    auto row = eulerian_row(n);
    BigCount total = 0;
    for (const auto& v : row) total += v;
    BigCount fact;
    mpz_fac_ui(fact.get_mpz_t(), n);
    ASSERT_EQ(total, fact) << n;
    ASSERT_TRUE(eulerian_checksum(n).agree()) << n;
  }
  EXPECT_THROW(eulerian_checksum(0), PreconditionError);
}

}  // namespace
}  // namespace kalmar
