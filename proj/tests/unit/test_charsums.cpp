#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "ffhyper/charsums.hpp"
#include "oracles.hpp"

using namespace ffhyper;

namespace {

double dist(CValue a, CValue b) { return std::abs(a - b); }

}  // namespace

TEST(Charsums, GaussOfTrivialIsExactlyMinusOne) {
  for (std::uint32_t q : {3U, 5U, 7U, 97U}) EXPECT_EQ(SumTables::make(q)->gauss_at(0), CValue(-1.0, 0.0));
}

TEST(Charsums, JacobiExamples) {
  const auto t = SumTables::make(5);
  const auto& g = t->group();
  EXPECT_NEAR(dist(t->jacobi(g.quadratic(), g.quadratic()), -1.0), 0.0, 1e-12);
  EXPECT_NEAR(dist(t->jacobi(g.trivial(), g.trivial()), 3.0), 0.0, 1e-12);
}

TEST(Charsums, BinomialSpecialValues) {
  for (std::uint32_t q : {5U, 7U, 11U, 13U}) {
    const auto t = SumTables::make(q);
    const auto& g = t->group();
    const double dq = q;
    const double pm1 = g.field().legendre(q - 1);
    for (std::int64_t j = 0; j < g.size(); ++j) {
      const auto chi = g.character(j);
      const CValue expect = -1.0 / dq + (dq - 1.0) / dq * delta_char(chi);
      EXPECT_NEAR(dist(t->binomial(chi, chi), expect), 0.0, 1e-12);
      EXPECT_NEAR(dist(t->binomial(chi, g.trivial()), expect), 0.0, 1e-12);
    }
    EXPECT_NEAR(dist(t->binomial(g.trivial(), g.quadratic()), -pm1 / dq), 0.0, 1e-12);
    EXPECT_NEAR(dist(t->binomial(g.trivial(), g.trivial()), (dq - 2.0) / dq), 0.0, 1e-12);
  }
}

class SumSweep : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(SumSweep, GaussMatchesDirectSumAndNorm) {
  const auto q = GetParam();
  const auto t = SumTables::make(q);
  const auto& g = t->group();
  const oracle::Field ref(q);
  const double pm1 = g.field().legendre(q - 1);
  for (std::int64_t j = 1; j < g.size(); ++j) {
    const CValue v = t->gauss_at(j);
    EXPECT_NEAR(dist(v, ref.gauss(j)), 0.0, 1e-9 * q);
    EXPECT_NEAR(std::norm(v), q, 1e-8 * q);
    // g(conj chi) = chi(-1) conj(g(chi))
    EXPECT_NEAR(dist(t->gauss_at(-j), (j % 2 ? -1.0 : 1.0) * std::conj(v)), 0.0, 1e-8 * q);
  }
  const CValue gp = t->gauss(g.quadratic());
  EXPECT_NEAR(dist(gp * gp, pm1 * q), 0.0, 1e-8 * q);
}

TEST_P(SumSweep, JacobiSymmetricAndMatchesGaussFactorization) {
  const auto q = GetParam();
  const auto t = SumTables::make(q);
  const auto& g = t->group();
  const oracle::Field ref(q);
  std::mt19937 rng(q);
  std::uniform_int_distribution<std::int64_t> pick(0, g.size() - 1);
  for (int i = 0; i < 50; ++i) {
    const auto a = pick(rng), b = pick(rng);
    const CValue j = t->jacobi_at(a, b);
    EXPECT_EQ(j, t->jacobi_at(b, a));
    EXPECT_NEAR(dist(j, ref.jacobi(a, b)), 0.0, 1e-9 * q);
    if (a != 0 && b != 0 && (a + b) % g.size() != 0) {
      EXPECT_NEAR(std::norm(j), q, 1e-7 * q);
      EXPECT_NEAR(dist(j, t->gauss_at(a) * t->gauss_at(b) / t->gauss_at(a + b)), 0.0, 1e-8 * q);
    }
    EXPECT_NEAR(dist(t->binomial_at(a, b), ref.binomial(a, b)), 0.0, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(Primes, SumSweep, ::testing::Values(5U, 7U, 11U, 13U, 31U, 61U, 97U));

TEST(Charsums, MemoizedValuesAreBitIdentical) {
  const auto t = SumTables::make(61);
  const auto first = t->jacobi_at(7, 19);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(t->jacobi_at(7, 19), first);
  EXPECT_EQ(t->jacobi_at(19, 7), first);
  EXPECT_EQ(t->jacobi_at(7 + 60, 19 - 60), first);
}

TEST(Charsums, ConcurrentReadersSeeIdenticalValues) {
  const auto t = SumTables::make(97);
  const auto fresh = SumTables::make(97);
  std::vector<std::vector<CValue>> seen(8);
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < 8; ++w) {
      pool.emplace_back([&, w] {
        for (std::int64_t a = 0; a < 96; ++a) seen[w].push_back(t->jacobi_at(a, (a * 5 + w) % 96));
      });
    }
  }
  for (int w = 0; w < 8; ++w) {
    for (std::int64_t a = 0; a < 96; ++a) EXPECT_EQ(seen[w][a], fresh->jacobi_at(a, (a * 5 + w) % 96));
  }
}

TEST(Charsums, GaussCacheRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "ffhyper_cache_test";
  std::filesystem::create_directories(dir);
  const auto file = SumTables::cache_file(dir, 31);
  EXPECT_EQ(file.filename(), "gauss_31.bin");
  const auto src = SumTables::make(31);
  src->save_gauss(file);

  SumTables warm(CharacterGroup::make(31));
  EXPECT_TRUE(warm.load_gauss(file));
  for (std::int64_t j = 0; j < 30; ++j) EXPECT_EQ(warm.gauss_at(j), src->gauss_at(j));

  SumTables other(CharacterGroup::make(37));
  EXPECT_FALSE(other.load_gauss(file));
  EXPECT_EQ(other.gauss_at(0), CValue(-1.0, 0.0));

  std::ofstream(dir / "gauss_41.bin", std::ios::binary) << "garbage";
  SumTables bad(CharacterGroup::make(41));
  EXPECT_FALSE(bad.load_gauss(dir / "gauss_41.bin"));
  EXPECT_FALSE(bad.load_gauss(dir / "missing.bin"));
  std::filesystem::remove_all(dir);
}

TEST(Charsums, ApproxEqualIsScaleAware) {
  EXPECT_TRUE(approx_equal({1.0, 0.0}, {1.0 + 5e-13, 0.0}));
  EXPECT_FALSE(approx_equal({1.0, 0.0}, {1.0 + 1e-8, 0.0}));
  EXPECT_TRUE(approx_equal({100.0, 0.0}, {100.0 + 5e-8, 0.0}, 100.0));
}
