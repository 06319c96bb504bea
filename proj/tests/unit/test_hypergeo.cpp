#include <gtest/gtest.h>

#include <random>

#include "ffhyper/curves.hpp"
#include "ffhyper/error.hpp"
#include "ffhyper/hypergeo.hpp"
#include "oracles.hpp"

using namespace ffhyper;

namespace {

double dist(CValue a, CValue b) { return std::abs(a - b); }

HyperParams random_params(const CharacterGroup& g, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> pick(0, g.size() - 1);
  HyperParams p;
  for (std::size_t i = 0; i <= n; ++i) p.uppers.push_back(g.character(pick(rng)));
  for (std::size_t i = 0; i < n; ++i) p.lowers.push_back(g.character(pick(rng)));
  return p;
}

}  // namespace

TEST(Hypergeo, ParamsValidateAndDescribe) {
  const auto t = SumTables::make(7);
  const auto& g = t->group();
  const auto p = HyperParams::phi_eps(g, 1);
  EXPECT_EQ(p.describe(), "[3,3;0]");
  EXPECT_TRUE(p.is_phi_eps());
  EXPECT_EQ(p.drop_last().describe(), "[3;]");
  EXPECT_THROW(p.drop_last().drop_last(), InvalidInput);
  HyperParams bad{{g.quadratic()}, {g.trivial()}};
  EXPECT_THROW(bad.validate(g), InvalidInput);
  HyperParams foreign{{CharacterGroup::make(11)->omega()}, {}};
  EXPECT_THROW(hyper_char(foreign, 2, *t), FieldMismatch);
}

TEST(Hypergeo, TwoFOneAtOne) {
  for (std::uint32_t q : {5U, 7U, 11U, 13U, 97U}) {
    const auto t = SumTables::make(q);
    const auto& g = t->group();
    const double pm1 = g.field().legendre(q - 1);
    const auto p = HyperParams::phi_eps(g, 1);
    EXPECT_NEAR(dist(hyper_char(p, 1, *t), -pm1 / q), 0.0, 1e-12);
    EXPECT_NEAR(dist(hyper_all_x(p, *t)[1], -pm1 / q), 0.0, 1e-12);
    EXPECT_EQ(hyper_exact_phi(1, 1, g.field()), QPowerRational(static_cast<int>(-pm1), 1, q));
    EXPECT_EQ(reconstruct(CValue(-pm1 / q, 0.0), 1, q), QPowerRational(static_cast<int>(-pm1), 1, q));
  }
}

TEST(Hypergeo, ZeroArgumentVanishes) {
  const auto t = SumTables::make(11);
  const auto& g = t->group();
  std::mt19937_64 rng(1);
  for (std::size_t n = 0; n < 4; ++n) {
    const auto p = random_params(g, n, rng);
    EXPECT_EQ(hyper_char(p, 0, *t), CValue(0.0, 0.0));
    EXPECT_EQ(hyper_all_x(p, *t)[0], CValue(0.0, 0.0));
  }
  EXPECT_TRUE(hyper_exact_phi(1, 0, g.field()).is_zero());
  EXPECT_EQ(hyper_inductive_step(HyperParams::phi_eps(g, 2), 0, *t), CValue(0.0, 0.0));
  EXPECT_EQ(appell_f4(g.omega(), g.omega(), g.trivial(), g.trivial(), 0, 3, *t), CValue(0.0, 0.0));
}

TEST(Hypergeo, TwoFOneAgreesWithPointCount) {
  const auto t = SumTables::make(5);
  const auto& g = t->group();
  const auto v = hyper_char(HyperParams::phi_eps(g, 1), 2, *t);
  // a_2(5) = -2 and phi(-1) = 1 over F_5.
  EXPECT_NEAR(dist(v, 2.0 / 5.0), 0.0, 1e-12);
  EXPECT_EQ(legendre_trace(g.field(), 2).trace, -2);
}

TEST(Hypergeo, TwoFOneMatchesIntegralRepresentation) {
  for (std::uint32_t q : {7U, 11U, 13U}) {
    const auto t = SumTables::make(q);
    const auto& g = t->group();
    const oracle::Field ref(q);
    for (std::int64_t a = 0; a < g.size(); a += 2) {
      for (std::int64_t b = 1; b < g.size(); b += 3) {
        for (std::int64_t c = 0; c < g.size(); c += 5) {
          const HyperParams p{{g.character(a), g.character(b)}, {g.character(c)}};
          const auto all = hyper_all_x(p, *t);
          for (Elem x = 0; x < q; ++x) {
            EXPECT_NEAR(dist(all[x], ref.f21(a, b, c, x)), 0.0, 1e-9) << q << ' ' << a << b << c << ' ' << x;
          }
        }
      }
    }
  }
}

TEST(Hypergeo, OneFZeroClosedForm) {
  const auto t = SumTables::make(13);
  const auto& g = t->group();
  for (std::int64_t j = 0; j < 12; ++j) {
    const HyperParams p{{g.character(j)}, {}};
    for (Elem x = 1; x < 13; ++x) {
      EXPECT_NEAR(dist(hyper_char(p, x, *t), g.eval(g.character(-j), g.field().sub(1, x))), 0.0, 1e-12);
    }
  }
}

class BackendSweep : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(BackendSweep, CharacterAndExactBackendsAgree) {
  const auto q = GetParam();
  const auto t = SumTables::make(q);
  const auto& g = t->group();
  for (unsigned n = 1; n <= 3; ++n) {
    const auto p = HyperParams::phi_eps(g, n);
    const auto all = hyper_all_x(p, *t);
    for (Elem x = 0; x < q; ++x) {
      const auto exact = hyper_exact_phi(n, x, g.field());
      EXPECT_NEAR(dist(all[x], exact.to_double()), 0.0, 1e-8) << "n=" << n << " x=" << x;
      EXPECT_NEAR(all[x].imag(), 0.0, 1e-9 * q);
      EXPECT_EQ(reconstruct(all[x], n, q), exact);
    }
  }
}

TEST_P(BackendSweep, AllXMatchesPointwise) {
  const auto q = GetParam();
  const auto t = SumTables::make(q);
  std::mt19937_64 rng(q);
  for (std::size_t n = 0; n < 4; ++n) {
    const auto p = random_params(t->group(), n, rng);
    const auto all = hyper_all_x(p, *t);
    for (Elem x = 0; x < q; ++x) EXPECT_NEAR(dist(all[x], hyper_char(p, x, *t)), 0.0, 1e-10 * q);
  }
}

TEST_P(BackendSweep, InductiveStepMatchesDefinition) {
  const auto q = GetParam();
  const auto t = SumTables::make(q);
  std::mt19937_64 rng(7 * q);
  for (int i = 0; i < 20; ++i) {
    const auto p = random_params(t->group(), 1 + i % 3, rng);
    const Elem x = 1 + rng() % (q - 1);
    EXPECT_NEAR(dist(hyper_inductive_step(p, x, *t), hyper_char(p, x, *t)), 0.0, 1e-8);
  }
  const auto p = HyperParams::phi_eps(t->group(), 1);
  for (Elem x = 1; x < q; ++x) {
    EXPECT_NEAR(dist(hyper_inductive_step(p, x, *t), hyper_exact_phi(1, x, t->field()).to_double()), 0.0, 1e-8);
  }
}

TEST_P(BackendSweep, AppellSymmetry) {
  const auto q = GetParam();
  const auto t = SumTables::make(q);
  const auto& g = t->group();
  std::mt19937_64 rng(11 * q);
  for (int i = 0; i < 20; ++i) {
    const auto a = g.character(rng() % g.size()), b = g.character(rng() % g.size());
    const auto c = g.character(rng() % g.size()), cp = g.character(rng() % g.size());
    const Elem x = rng() % q, y = rng() % q;
    EXPECT_NEAR(dist(appell_f4(a, b, c, cp, x, y, *t), appell_f4(a, b, cp, c, y, x, *t)), 0.0, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(SmallPrimes, BackendSweep, ::testing::Values(3U, 5U, 7U, 11U, 13U));

TEST(Hypergeo, ExactBackendRespectsBudget) {
  const auto f = PrimeField::make(101);
  EXPECT_THROW(hyper_exact_phi(5, 2, f, WorkBudget{1000}), Infeasible);
  EXPECT_NO_THROW(hyper_exact_phi(1, 2, f, WorkBudget{1000}));
}

TEST(Hypergeo, ReconstructRejectsNonRational) {
  EXPECT_THROW(reconstruct({0.5, 0.0}, 0, 7), NotRational);
  EXPECT_THROW(reconstruct({1.0, 0.3}, 0, 7), NotRational);
  try {
    reconstruct({2.25, 0.0}, 0, 7);
    FAIL();
  } catch (const NotRational& e) {
    EXPECT_NEAR(e.residual(), 0.25, 1e-12);
  }
  EXPECT_EQ(reconstruct({3.0 / 49.0 + 1e-9, 1e-9}, 2, 7), QPowerRational(3, 2, 7));
}
