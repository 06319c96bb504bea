#include <gtest/gtest.h>

#include <cmath>

#include "ffhyper/curves.hpp"
#include "ffhyper/error.hpp"
#include "oracles.hpp"

using namespace ffhyper;

TEST(Curves, Examples) {
  const auto f5 = PrimeField::make(5);
  const auto l = legendre_trace(f5, 2);
  EXPECT_EQ(l.trace, -2);
  EXPECT_EQ(l.count, 8);
  const auto c = clausen_trace(f5, 1);
  EXPECT_EQ(c.trace, -2);
  EXPECT_EQ(c.count, 8);
  EXPECT_THROW(legendre_trace(f5, 0), SingularParameter);
  EXPECT_THROW(legendre_trace(f5, 1), SingularParameter);
  EXPECT_THROW(clausen_trace(f5, 4), SingularParameter);
  EXPECT_THROW(clausen_trace(f5, 0), SingularParameter);
}

TEST(Curves, HasseBound) {
  EXPECT_EQ(hasse_bound(7), 5);
  EXPECT_EQ(hasse_bound(5), 4);
  for (std::uint32_t q : oracle::odd_primes(3, 500)) {
    const auto b = hasse_bound(q);
    EXPECT_LE(b * b, 4 * std::int64_t{q});
    EXPECT_GT((b + 1) * (b + 1), 4 * std::int64_t{q});
  }
}

class CurveSweep : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(CurveSweep, CharacterSumCountMatchesEnumeration) {
  const auto q = GetParam();
  const auto f = PrimeField::make(q);
  for (Elem l = 2; l < q; ++l) {
    const auto r = legendre_trace(f, l);
    EXPECT_EQ(r.count, oracle::legendre_count(q, l)) << "lambda=" << l;
    EXPECT_EQ(r.count, std::int64_t{q} + 1 - r.trace);
  }
  for (Elem l = 1; l + 1 < q; ++l) {
    EXPECT_EQ(clausen_trace(f, l).count, oracle::clausen_count(q, l)) << "lambda=" << l;
  }
}

TEST_P(CurveSweep, TracesRespectHasseAndFirstTraceSum) {
  const auto q = GetParam();
  const auto f = PrimeField::make(q);
  const auto a = legendre_traces(f);
  const auto ap = clausen_traces(f);
  std::int64_t s = 0;
  for (Elem l = 0; l < q; ++l) {
    EXPECT_LE(std::abs(a[l]), hasse_bound(q));
    EXPECT_LE(std::abs(ap[l]), hasse_bound(q));
    s += a[l];
  }
  EXPECT_EQ(a[0], 0);
  EXPECT_EQ(a[1], 0);
  EXPECT_EQ(ap[0], 0);
  EXPECT_EQ(ap[q - 1], 0);
  EXPECT_EQ(s + f.legendre(q - 1), -1);
}

INSTANTIATE_TEST_SUITE_P(PrimesUpTo31, CurveSweep, ::testing::ValuesIn(oracle::odd_primes(3, 31)));
