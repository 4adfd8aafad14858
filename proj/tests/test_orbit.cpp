#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "dyngcd/orbit.hpp"
#include "oracle.hpp"

using namespace dyngcd;

namespace {

const IntPolynomial kF = parse_polynomial("x^2+1");

std::vector<IntPolynomial> test_polys() {
  return {parse_polynomial("x^2+1"), parse_polynomial("x^2+x+1"), parse_polynomial("x^3+x^2+1")};
}

oracle::Coeffs coeffs(const IntPolynomial& F) { return {F.coeffs().begin(), F.coeffs().end()}; }

/// Wandering polynomials from the generator, with their coefficients.
std::vector<IntPolynomial> random_wandering(std::uint64_t seed, int count) {
  gen::Rng rng(seed);
  std::vector<IntPolynomial> out;
  while (static_cast<int>(out.size()) < count) {
    const auto c = gen::polynomial(rng);
    IntPolynomial F(std::vector<i64>(c.begin(), c.end()));
    if (classify_orbit(F).wandering()) out.push_back(F);
  }
  return out;
}

}  // namespace

TEST(AMod, Examples) {
  EXPECT_EQ(a_mod(kF, 4, 100), 26u);
  EXPECT_EQ(a_mod(kF, 0, 7), 0u);
  EXPECT_EQ(a_mod(kF, 15, 15), 5u);
  EXPECT_THROW(a_mod(kF, 3, kMaxModulus + 1), ModulusTooLarge);
}

TEST(AMod, MatchesExactOrbit) {
  for (const auto& F : test_polys()) {
    const auto exact = exact_orbit(F, 12);
    for (u64 m : std::vector<u64>{2, 3, 7, 100, 65537, 1'000'000'007, (u64{1} << 61) - 1, kMaxModulus})
      for (unsigned n = 0; n <= 12; ++n) {
        BigInt r = exact[n] % BigInt(m);
        if (r < 0) r += m;
        ASSERT_EQ(a_mod(F, n, m), r.convert_to<u64>()) << F.to_string() << " n=" << n << " m=" << m;
      }
  }
}

TEST(AMod, MatchesOracleOnRandomPolys) {
  gen::Rng rng(77);
  for (const auto& F : random_wandering(1, 60)) {
    const auto c = coeffs(F);
    for (int i = 0; i < 20; ++i) {
      const u64 m = rng.between(2, 1'000'000);
      const u64 n = rng.between(0, 200);
      ASSERT_EQ(a_mod(F, n, m), oracle::a_mod(c, n, m));
    }
  }
}

TEST(OrdDirect, Examples) {
  EXPECT_EQ(ord_direct(kF, 2), Rank::finite(2));
  EXPECT_FALSE(ord_direct(kF, 3).is_finite());
  EXPECT_EQ(ord_direct(kF, 13), Rank::finite(4));
}

TEST(OrdDirectCapped, Examples) {
  EXPECT_EQ(ord_direct_capped(kF, 13, 4).state, CappedRank::State::Finite);
  EXPECT_EQ(ord_direct_capped(kF, 13, 4).value, 4u);
  EXPECT_EQ(ord_direct_capped(kF, 13, 3).state, CappedRank::State::Unknown);
  EXPECT_EQ(ord_direct_capped(kF, 3, 3).state, CappedRank::State::Infinite);
}

TEST(OrdDirect, MatchesOracleAndCycleDetection) {
  std::vector<IntPolynomial> polys = test_polys();
  for (auto& F : random_wandering(2, 20)) polys.push_back(F);
  for (const auto& F : polys) {
    const auto c = coeffs(F);
    for (u64 n = 2; n <= 400; ++n) {
      const auto expect = oracle::ord(c, n);
      const Rank direct = ord_direct(F, n);
      ASSERT_EQ(direct.is_finite(), expect.has_value()) << F.to_string() << " n=" << n;
      if (expect) {
        ASSERT_EQ(direct.value(), *expect);
        ASSERT_LE(*expect, n);  // rank cap
      }
      ASSERT_EQ(ord_cycle(F, n), direct) << F.to_string() << " n=" << n;
    }
  }
}

TEST(OrdCrt, Examples) {
  OrdCache cache(kF);
  EXPECT_EQ(ord_crt(kF, 10, cache), Rank::finite(6));
  EXPECT_FALSE(ord_crt(kF, 12, cache).is_finite());
  EXPECT_EQ(ord_crt(kF, 2, cache), Rank::finite(2));
}

TEST(OrdCrt, AgreesWithDirect) {
  for (const auto& F : test_polys()) {
    OrdCache cache(F);
    for (u64 n = 2; n <= 3000; ++n) ASSERT_EQ(ord_crt(F, n, cache), ord_direct(F, n)) << n;
  }
}

TEST(Ell, Examples) {
  OrdCache cache(kF);
  EXPECT_EQ(ell(kF, 5, cache), EllValue::finite(15));
  EXPECT_EQ(ell(kF, 13, cache), EllValue::finite(52));
  EXPECT_FALSE(ell(kF, 3, cache).is_finite());
  EXPECT_EQ(ell(kF, 2, cache), EllValue::finite(2));
  EXPECT_EQ(ell(kF, 10, cache), EllValue::finite(30));
  EXPECT_EQ(ell(kF, 26, cache), EllValue::finite(52));
  EXPECT_EQ(ell(kF, 65, cache), EllValue::finite(780));
  EXPECT_EQ(ell(kF, 130, cache), EllValue::finite(780));
  EXPECT_FALSE(ell(kF, 4, cache).is_finite());
  EXPECT_FALSE(ell(kF, 25, cache).is_finite());
}

TEST(Ell, MatchesDefinitionBySearch) {
  for (const auto& F : test_polys()) {
    OrdCache cache(F);
    const auto c = coeffs(F);
    for (u64 n = 2; n <= 120; ++n) {
      const auto expect = oracle::ell(c, n);
      const EllValue got = ell(F, n, cache);
      ASSERT_EQ(got.is_finite(), expect.has_value()) << F.to_string() << " n=" << n;
      if (expect) ASSERT_EQ(got.value(), *expect);
    }
  }
}

TEST(Ell, OverflowIsInfinite) {
  EXPECT_FALSE(ell_from_rank(u64{1} << 62, Rank::finite(3)).is_finite());
  EXPECT_TRUE(ell_from_rank(u64{1} << 62, Rank::finite(3)).overflowed());
  EXPECT_FALSE(ell_from_rank(7, Rank::infinite()).overflowed());
}

TEST(GcdIndexTerm, Examples) {
  EXPECT_EQ(gcd_index_term(kF, 2), 2u);
  EXPECT_EQ(gcd_index_term(kF, 9), 1u);
  EXPECT_EQ(gcd_index_term(kF, 15), 5u);
  for (u64 n = 1; n <= 500; ++n) ASSERT_EQ(gcd_index_term(kF, n), oracle::index_gcd(oracle::kXSquaredPlusOne, n));
}

TEST(NuP, Examples) {
  EXPECT_EQ(nu_p_of_a(kF, 6, 5, 3), (Valuation{1, false}));
  EXPECT_EQ(nu_p_of_a(kF, 4, 2, 3), (Valuation{1, false}));
  EXPECT_EQ(nu_p_of_a(kF, 3, 7, 2), (Valuation{0, false}));
}

TEST(NuP, MatchesExactValuations) {
  for (const auto& F : test_polys()) {
    const auto exact = exact_orbit(F, 10);
    for (unsigned n = 1; n <= 10; ++n)
      for (u64 p : {2ull, 3ull, 5ull, 7ull, 13ull, 37ull}) {
        unsigned v = 0;
        BigInt z = abs(exact[n]);
        while (z != 0 && z % p == 0 && v < 5) {
          z /= p;
          ++v;
        }
        const Valuation got = nu_p_of_a(F, n, p, 5);
        if (v == 5 || exact[n] == 0)
          ASSERT_TRUE(got.saturated);
        else
          ASSERT_EQ(got, (Valuation{v, false})) << F.to_string() << " n=" << n << " p=" << p;
      }
  }
}

TEST(GrowthConstant, Examples) {
  EXPECT_NEAR(growth_constant_estimate(kF, 5), std::log(677.0) / 32.0, 1e-12);
  EXPECT_THROW(growth_constant_estimate(parse_polynomial("x^2-2"), 5), PreperiodicOrbit);
  EXPECT_THROW(growth_constant_estimate(kF, 0), std::domain_error);
}

namespace {
double big_log(const BigInt& v) {
  const BigInt a = abs(v);
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(a));
  if (bits < 60) return std::log(a.convert_to<double>());
  const BigInt top = a >> (bits - 60);
  return std::log(top.convert_to<double>()) + double(bits - 60) * std::log(2.0);
}
}  // namespace

TEST(GrowthConstant, MatchesExactLogsAndConverges) {
  for (const auto& F : test_polys()) {
    const auto exact = exact_orbit(F, 9);
    const double d = F.degree();
    for (unsigned n = 3; n <= 9; ++n) {
      const double direct = big_log(exact[n]) / std::pow(d, double(n));
      EXPECT_NEAR(growth_constant_estimate(F, n), direct, 1e-9) << F.to_string() << " n=" << n;
    }
    EXPECT_NEAR(growth_constant_estimate(F, 40), growth_constant_estimate(F, 60), 1e-12);
  }
}

TEST(DivisibilitySequence, ExactSmallIndices) {
  for (const auto& F : test_polys()) {
    const auto a = exact_orbit(F, 10);
    for (unsigned n = 1; n <= 10; ++n)
      for (unsigned m = n; m <= 10; m += n) ASSERT_EQ(a[m] % a[n], 0) << F.to_string();
  }
}

TEST(DivisibilitySequence, RandomModuli) {
  gen::Rng rng(4);
  for (const auto& F : random_wandering(3, 25)) {
    for (int trial = 0; trial < 30; ++trial) {
      const u64 D = rng.between(2, 5000);
      const auto res = residue_orbit(F, 300, D);
      for (u64 n = 1; n <= 300; ++n) {
        if (res[n] != 0) continue;
        for (u64 m = 2 * n; m <= 300; m += n) ASSERT_EQ(res[m], 0u) << F.to_string() << " D=" << D;
      }
    }
  }
}

TEST(LemmaProperties, RankDividesAndEllDivides) {
  for (const auto& F : test_polys()) {
    OrdCache cache(F);
    for (u64 n = 2; n <= 100; ++n) {
      const Rank o = ord_direct(F, n);
      if (!o.is_finite()) continue;
      const auto res = residue_orbit(F, 600, n);
      const u64 l = ell(F, n, cache).value();
      for (u64 r = 1; r <= 600; ++r) {
        ASSERT_EQ(res[r] == 0, r % o.value() == 0);
        ASSERT_EQ(r % n == 0 && res[r] == 0, r % l == 0);
      }
    }
  }
}

TEST(LemmaProperties, EllOfLcmIsLcmOfElls) {
  for (const auto& F : test_polys()) {
    OrdCache cache(F);
    std::vector<u64> pretty;
    for (u64 n = 1; n <= 80; ++n)
      if (ord_direct(F, n).is_finite()) pretty.push_back(n);
    for (u64 n : pretty)
      for (u64 m : pretty) {
        const u64 l = std::lcm(n, m);
        ASSERT_EQ(ord_direct(F, l).value(), std::lcm(ord_direct(F, n).value(), ord_direct(F, m).value()));
        ASSERT_EQ(ell(F, l, cache).value(), std::lcm(ell(F, n, cache).value(), ell(F, m, cache).value()));
      }
  }
}

TEST(RigidDivisibility, ZeroLinearTerm) {
  for (u64 p : {2ull, 5ull, 13ull})
    for (u64 n = 1; n <= 60; ++n) {
      const Valuation base = nu_p_of_a(kF, n, p, 4);
      if (base.value == 0) continue;
      for (u64 t = 1; t <= 5; ++t) ASSERT_EQ(nu_p_of_a(kF, n * t, p, 4), base) << p << ' ' << n << ' ' << t;
    }
}
