#include <gtest/gtest.h>

#include "dyngcd/orbit.hpp"
#include "dyngcd/polynomial.hpp"
#include "oracle.hpp"

using namespace dyngcd;

TEST(ParsePolynomial, Examples) {
  EXPECT_EQ(parse_polynomial("x^2+1").coeffs(), (std::vector<i64>{1, 0, 1}));
  EXPECT_EQ(parse_polynomial("1,0,1").coeffs(), (std::vector<i64>{1, 0, 1}));
  EXPECT_THROW(parse_polynomial("x+3"), PolynomialError);
}

TEST(ParsePolynomial, Forms) {
  EXPECT_EQ(parse_polynomial("x^3 + x^2 + 1").coeffs(), (std::vector<i64>{1, 0, 1, 1}));
  EXPECT_EQ(parse_polynomial("2*x^3-x+5").coeffs(), (std::vector<i64>{5, -1, 0, 2}));
  EXPECT_EQ(parse_polynomial("x^2-2").coeffs(), (std::vector<i64>{-2, 0, 1}));
  EXPECT_EQ(parse_polynomial("X^2+X+1").coeffs(), (std::vector<i64>{1, 1, 1}));
  EXPECT_EQ(parse_polynomial("x^2+x^2+1").coeffs(), (std::vector<i64>{1, 0, 2}));
  EXPECT_EQ(parse_polynomial("-1,0,0,1").coeffs(), (std::vector<i64>{-1, 0, 0, 1}));
}

TEST(ParsePolynomial, Rejects) {
  for (const char* bad : {"", "x^", "x^2+", "y^2+1", "1,0", "1,0,-1", "-x^2+1", "x^2+1,", "3", "1,,1", "x^2*2"})
    EXPECT_THROW(parse_polynomial(bad), PolynomialError) << bad;
}

TEST(IntPolynomial, TrimsAndStores) {
  const IntPolynomial F({1, 0, 1, 0, 0});
  EXPECT_EQ(F.degree(), 2u);
  EXPECT_EQ(F.escape_radius(), 2u);
  EXPECT_TRUE(F.zero_linear_term());
  EXPECT_EQ(F.canonical(), "1,0,1");
  EXPECT_FALSE(IntPolynomial({1, 1, 1}).zero_linear_term());
}

TEST(IntPolynomial, ToStringRoundTrips) {
  gen::Rng rng(5);
  for (int i = 0; i < 500; ++i) {
    const auto c = gen::polynomial(rng, 5, 9);
    const IntPolynomial F(std::vector<i64>(c.begin(), c.end()));
    EXPECT_EQ(parse_polynomial(F.to_string()), F) << F.to_string();
    EXPECT_EQ(parse_polynomial(F.canonical()), F) << F.canonical();
  }
  EXPECT_EQ(IntPolynomial({5, -1, 0, 2}).to_string(), "2*x^3-x+5");
  EXPECT_EQ(IntPolynomial({-2, 0, 1}).to_string(), "x^2-2");
}

TEST(IntPolynomial, EscapeRadiusProperty) {
  gen::Rng rng(9);
  for (int i = 0; i < 300; ++i) {
    const auto c = gen::polynomial(rng);
    const IntPolynomial F(std::vector<i64>(c.begin(), c.end()));
    const i64 R = static_cast<i64>(F.escape_radius());
    for (i64 z : {R + 1, -(R + 1), R + 7, -(R + 13), 3 * R}) {
      const BigInt v = F(BigInt(z));
      EXPECT_GT(abs(v), BigInt(z < 0 ? -z : z)) << F.to_string() << " at " << z;
    }
  }
}

TEST(ClassifyOrbit, Examples) {
  const auto w = classify_orbit(parse_polynomial("x^2+1"));
  EXPECT_TRUE(w.wandering());
  EXPECT_EQ(w.orbit.back(), BigInt(5));

  const auto p = classify_orbit(parse_polynomial("x^2-2"));
  EXPECT_FALSE(p.wandering());
  EXPECT_EQ(p.preperiod, 2u);  // a_2 is the first periodic term
  EXPECT_EQ(p.period, 1u);
  EXPECT_EQ(p.describe(), "0 → -2 → 2 → 2");

  const auto q = classify_orbit(parse_polynomial("x^2-1"));
  EXPECT_FALSE(q.wandering());
  EXPECT_EQ(q.preperiod, 0u);
  EXPECT_EQ(q.period, 2u);
}

TEST(ClassifyOrbit, AgreesWithLongIteration) {
  // 0 wanders iff the exact orbit grows past any fixed threshold
  gen::Rng rng(21);
  for (int i = 0; i < 400; ++i) {
    const auto c = gen::polynomial(rng, 3, 3);
    const IntPolynomial F(std::vector<i64>(c.begin(), c.end()));
    BigInt z = 0;
    bool big = false;
    for (int step = 0; step < 40 && !big; ++step) {
      z = F(z);
      big = abs(z) > BigInt(1) << 200;
    }
    EXPECT_EQ(classify_orbit(F).wandering(), big) << F.to_string();
  }
}

TEST(ClassifyOrbit, PreperiodicIsRejected) {
  EXPECT_THROW(require_wandering(parse_polynomial("x^2-2")), PreperiodicOrbit);
  EXPECT_THROW(require_wandering(parse_polynomial("x^2-1")), PreperiodicOrbit);
  EXPECT_THROW(require_wandering(parse_polynomial("x^2")), PreperiodicOrbit);
  EXPECT_NO_THROW(require_wandering(parse_polynomial("x^2+1")));
}
