#include <gtest/gtest.h>

#include <random>
#include <thread>
#include <vector>

#include "collatz_cover/arith.hpp"
#include "collatz_cover/sigma_cache.hpp"
#include "support/oracles.hpp"

using namespace collatz_cover;
using collatz_cover::testing::brute_odd_step;
using collatz_cover::testing::brute_sigma;

TEST(BigInt, ParseDecimalRejectsNonDigits) {
  EXPECT_EQ(parse_decimal("000123"), 123);
  EXPECT_THROW(parse_decimal(""), std::invalid_argument);
  EXPECT_THROW(parse_decimal("-5"), std::invalid_argument);
  EXPECT_THROW(parse_decimal("12a"), std::invalid_argument);
  EXPECT_THROW(parse_decimal(" 7"), std::invalid_argument);
}

TEST(BigInt, U64Conversions) {
  EXPECT_EQ(to_u64(from_u64(UINT64_MAX)), UINT64_MAX);
  EXPECT_FALSE(to_u64(pow2(64)).has_value());
  EXPECT_FALSE(to_u64(BigInt(-1)).has_value());
  EXPECT_EQ(trailing_zeros(pow2(100)), 100U);
}

TEST(OddInt, RejectsEvenAndNonPositive) {
  EXPECT_THROW(OddInt(std::uint64_t{0}), std::invalid_argument);
  EXPECT_THROW(OddInt(std::uint64_t{4}), std::invalid_argument);
  EXPECT_THROW(OddInt(BigInt(-3)), std::invalid_argument);
  EXPECT_THROW(OddInt::parse("12"), std::invalid_argument);
  EXPECT_EQ(OddInt::parse("349525").value(), 349525);
}

TEST(TwoAdicValuation, Examples) {
  auto v = two_adic_valuation(40);
  EXPECT_EQ(v.m, 3U);
  EXPECT_EQ(v.odd_part.value(), 5);

  v = two_adic_valuation(2);
  EXPECT_EQ(v.m, 1U);
  EXPECT_EQ(v.odd_part.value(), 1);

  v = two_adic_valuation(262144);
  EXPECT_EQ(v.m, 18U);
  EXPECT_EQ(v.odd_part.value(), 1);
}

TEST(TwoAdicValuation, RejectsOddAndZero) {
  EXPECT_THROW(two_adic_valuation(0), std::invalid_argument);
  EXPECT_THROW(two_adic_valuation(7), std::invalid_argument);
  EXPECT_THROW(two_adic_valuation(-8), std::invalid_argument);
}

TEST(OddStep, Examples) {
  const OddStep s13 = odd_step(OddInt(13));
  EXPECT_EQ(s13.source.value(), 13);
  EXPECT_EQ(s13.m, 3U);
  EXPECT_EQ(s13.target.value(), 5);

  const OddStep s1 = odd_step(OddInt(1));
  EXPECT_EQ(s1.m, 2U);
  EXPECT_EQ(s1.target.value(), 1);

  const OddStep s85 = odd_step(OddInt(85));
  EXPECT_EQ(s85.m, 8U);
  EXPECT_EQ(s85.target.value(), 1);
}

TEST(OddStep, ReconstructionAndMaximality) {
  for (std::uint64_t d = 1; d < 200'000; d += 2) {
    const OddStep s = odd_step(OddInt(d));
    ASSERT_EQ(BigInt(3 * s.source.value() + 1), s.target.value() * pow2(s.m)) << d;
    ASSERT_TRUE(mpz_odd_p(s.target.value().get_mpz_t())) << d;
    const auto brute = brute_odd_step(d);
    ASSERT_EQ(s.m, brute.m) << d;
    ASSERT_EQ(s.target.value(), from_u64(brute.odd_part)) << d;
  }
}

TEST(OddStep, WorksBeyond128Bits) {
  // 3d + 1 = 2^300 for d = (2^300 - 1) / 3.
  const BigInt d = (pow2(300) - 1) / 3;
  const OddStep s = odd_step(OddInt(d));
  EXPECT_EQ(s.m, 300U);
  EXPECT_EQ(s.target.value(), 1);
}

TEST(FourDPlusOne, Examples) {
  EXPECT_EQ(four_d_plus_one(OddInt(19)).value(), 77);
  EXPECT_EQ(four_d_plus_one(OddInt(1)).value(), 5);
  EXPECT_EQ(four_d_plus_one(OddInt(9)).value(), 37);
}

TEST(SigmaInfinity, Examples) {
  EXPECT_EQ(sigma_infinity(13), 9U);
  EXPECT_EQ(sigma_infinity(5), 5U);
  EXPECT_EQ(sigma_infinity(1), 0U);
  // Brute-force unit-step iteration gives 111.
  EXPECT_EQ(brute_sigma(27), 111U);
  EXPECT_EQ(sigma_infinity(27), 111U);
}

TEST(SigmaInfinity, EvenInputsAddHalvings) {
  EXPECT_EQ(sigma_infinity(8), 3U);
  EXPECT_EQ(sigma_infinity(40), sigma_infinity(5) + 3);
  EXPECT_EQ(sigma_infinity(pow2(200)), 200U);
}

TEST(SigmaInfinity, RejectsZero) {
  EXPECT_THROW(sigma_infinity(0), std::invalid_argument);
  EXPECT_THROW(sigma_infinity(-7), std::invalid_argument);
}

TEST(SigmaInfinity, MatchesBruteForce) {
  for (std::uint64_t d = 1; d <= 20'000; ++d) {
    ASSERT_EQ(sigma_infinity(from_u64(d)), brute_sigma(d)) << d;
  }
}

TEST(SigmaInfinity, LargeInputsCrossTheWideBoundary) {
  // 2^130 - 1 starts above the 128-bit fast path and climbs before falling.
  const BigInt d = pow2(130) - 1;
  std::uint64_t expected = 0;
  BigInt n = d;
  while (n != 1) {
    n = mpz_odd_p(n.get_mpz_t()) ? BigInt(3 * n + 1) : BigInt(n / 2);
    ++expected;
  }
  EXPECT_EQ(sigma_infinity(d), expected);
  SigmaCache cache;
  EXPECT_EQ(sigma_infinity(d, &cache), expected);
  EXPECT_EQ(sigma_infinity(d, &cache), expected);
}

TEST(SigmaInfinity, BudgetExceeded) {
  EXPECT_THROW(sigma_infinity(27, nullptr, 110), BudgetExceeded);
  EXPECT_EQ(sigma_infinity(27, nullptr, 111), 111U);
  try {
    sigma_infinity(27, nullptr, 50);
    FAIL() << "expected BudgetExceeded";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.input(), 27);
    EXPECT_EQ(e.budget(), 50U);
    EXPECT_NE(std::string(e.what()).find("budget exceeded"), std::string::npos);
  }
  EXPECT_THROW(sigma_infinity(pow2(40), nullptr, 39), BudgetExceeded);
}

TEST(SigmaInfinity, BudgetIndependentOfCacheState) {
  SigmaCache cache;
  EXPECT_EQ(sigma_infinity(27, &cache), 111U);
  // A warm cache must not let an over-budget result through.
  EXPECT_THROW(sigma_infinity(27, &cache, 110), BudgetExceeded);
  EXPECT_THROW(sigma_infinity(54, &cache, 111), BudgetExceeded);
}

TEST(SigmaInfinity, RecurrenceHoldsForOddAboveOne) {
  SigmaCache cache;
  for (std::uint64_t d = 3; d <= 100'000; d += 2) {
    const OddStep s = odd_step(OddInt(d));
    ASSERT_EQ(sigma_infinity(from_u64(d), &cache),
              sigma_infinity(s.target.value(), &cache) + s.m + 1)
        << d;
  }
}

TEST(SigmaInfinity, FourDPlusOneShortcut) {
  SigmaCache cache;
  for (std::uint64_t d = 1; d <= 100'000; d += 2) {
    const OddInt odd(d);
    const OddStep base = odd_step(odd);
    const OddStep lifted = odd_step(four_d_plus_one(odd));
    ASSERT_EQ(lifted.target, base.target) << d;
    ASSERT_EQ(lifted.m, base.m + 2) << d;
    if (d > 1) {
      ASSERT_EQ(sigma_infinity(4 * from_u64(d) + 1, &cache),
                sigma_infinity(from_u64(d), &cache) + 2)
          << d;
    }
  }
}

TEST(SigmaInfinity, FourDPlusOneShortcutBreaksAtOne) {
  // sigma(1) is 0 by termination rather than sigma(1) + 2 + 1, so the
  // shortcut identity has its single exception at d = 1.
  EXPECT_EQ(sigma_infinity(1), 0U);
  EXPECT_EQ(sigma_infinity(5), 5U);
}

TEST(SigmaInfinity, CacheTransparency) {
  std::mt19937_64 rng(20140101);
  std::uniform_int_distribution<std::uint64_t> dist(1, std::uint64_t{1} << 40);
  std::vector<std::uint64_t> inputs(2000);
  for (auto& x : inputs) x = dist(rng);

  SigmaCache warm;
  for (std::uint64_t x : inputs) (void)sigma_infinity(from_u64(x), &warm);
  for (std::uint64_t x : inputs) {
    SigmaCache cold;
    const auto disabled = sigma_infinity(from_u64(x));
    ASSERT_EQ(sigma_infinity(from_u64(x), &cold), disabled) << x;
    ASSERT_EQ(sigma_infinity(from_u64(x), &warm), disabled) << x;
  }
}

TEST(SigmaInfinity, CachedEntriesAreExact) {
  SigmaCache cache;
  for (std::uint64_t d = 1; d <= 3001; d += 2) (void)sigma_infinity(from_u64(d), &cache);
  ASSERT_GT(cache.size(), 1000U);
  for (const auto& [key, value] : cache.snapshot()) {
    ASSERT_EQ(value, brute_sigma(key)) << key;
  }
}

TEST(SigmaInfinity, ConcurrentCallersAgree) {
  SigmaCache cache;
  std::vector<std::vector<std::uint64_t>> results(4);
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < results.size(); ++t) {
      pool.emplace_back([&, t] {
        for (std::uint64_t d = 1; d <= 20'001; d += 2) {
          results[t].push_back(sigma_infinity(from_u64(d), &cache));
        }
      });
    }
  }
  for (std::size_t t = 1; t < results.size(); ++t) EXPECT_EQ(results[t], results[0]);
  for (std::size_t k = 0; k < results[0].size(); k += 97) {
    EXPECT_EQ(results[0][k], brute_sigma(2 * k + 1));
  }
}

TEST(Trace, Examples) {
  const CollatzTrace t13 = trace(OddInt(13));
  ASSERT_EQ(t13.steps.size(), 2U);
  EXPECT_EQ(t13.steps[0], (OddStep{OddInt(13), 3, OddInt(5)}));
  EXPECT_EQ(t13.steps[1], (OddStep{OddInt(5), 4, OddInt(1)}));
  EXPECT_EQ(t13.sigma, 9U);

  const CollatzTrace t1 = trace(OddInt(1));
  EXPECT_TRUE(t1.steps.empty());
  EXPECT_EQ(t1.sigma, 0U);

  EXPECT_EQ(brute_sigma(19), 20U);
  EXPECT_EQ(trace(OddInt(19)).sigma, 20U);
}

TEST(Trace, StepsChainAndSumToSigma) {
  SigmaCache cache;
  for (std::uint64_t d = 1; d <= 5001; d += 2) {
    const CollatzTrace t = trace(OddInt(d), &cache);
    std::uint64_t sum = 0;
    for (std::size_t k = 0; k < t.steps.size(); ++k) {
      sum += t.steps[k].m + 1;
      if (k + 1 < t.steps.size()) {
        ASSERT_EQ(t.steps[k].target, t.steps[k + 1].source);
      }
    }
    if (!t.steps.empty()) {
      ASSERT_EQ(t.steps.front().source.value(), from_u64(d));
      ASSERT_EQ(t.steps.back().target.value(), 1);
    }
    ASSERT_EQ(t.sigma, sum) << d;
    ASSERT_EQ(t.sigma, sigma_infinity(from_u64(d))) << d;
  }
  EXPECT_EQ(cache.find(27), 111U);
}

TEST(Trace, BudgetExceeded) { EXPECT_THROW(trace(OddInt(27), nullptr, 100), BudgetExceeded); }
