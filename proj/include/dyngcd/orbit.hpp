#pragma once

// The orbit of 0 under F: classification, residues a_n mod m, ranks of
// apparition, l-values and p-adic valuations of a_n.

#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyngcd/arith.hpp"
#include "dyngcd/ord_cache.hpp"
#include "dyngcd/polynomial.hpp"
#include "dyngcd/rank.hpp"

namespace dyngcd {

struct OrbitClass {
  enum class Kind { Wandering, Preperiodic };

  Kind kind = Kind::Wandering;
  u64 preperiod = 0;  // Preperiodic only: a_m = a_{m+period}
  u64 period = 0;
  std::vector<BigInt> orbit;  // a_0, a_1, ... up to the first repeat or escape

  bool wandering() const noexcept { return kind == Kind::Wandering; }

  /// "0 → -2 → 2 → 2" for a cycle, "0 → 1 → 2 → 5 → ..." for an escape.
  std::string describe() const {
    std::string out;
    for (std::size_t i = 0; i < orbit.size(); ++i) {
      if (i) out += " → ";
      out += orbit[i].str();
    }
    if (wandering()) out += " → ...";
    return out;
  }
};

/// Thrown wherever an operation needs an unbounded orbit.
class PreperiodicOrbit : public std::domain_error {
 public:
  explicit PreperiodicOrbit(const OrbitClass& c)
      : std::domain_error("0 is preperiodic (" + c.describe() + ")"), orbit_class(c) {}
  OrbitClass orbit_class;
};

/// Exact integer iteration from 0 until the orbit leaves [-R, R] or repeats.
/// Bounded by 2R + 2 steps.
inline OrbitClass classify_orbit(const IntPolynomial& F) {
  const BigInt radius = F.escape_radius();
  OrbitClass out;
  std::map<BigInt, u64> seen;
  BigInt z = 0;
  for (u64 i = 0;; ++i) {
    out.orbit.push_back(z);
    if (abs(z) > radius) {
      out.kind = OrbitClass::Kind::Wandering;
      return out;
    }
    auto [it, fresh] = seen.emplace(z, i);
    if (!fresh) {
      out.kind = OrbitClass::Kind::Preperiodic;
      out.preperiod = it->second;
      out.period = i - it->second;
      return out;
    }
    z = F(z);
  }
}

inline void require_wandering(const IntPolynomial& F) {
  const auto c = classify_orbit(F);
  if (!c.wandering()) throw PreperiodicOrbit(c);
}

/// a_0, ..., a_n as exact integers. Sizes grow like d^n digits; keep n small.
inline std::vector<BigInt> exact_orbit(const IntPolynomial& F, unsigned n) {
  std::vector<BigInt> out{0};
  for (unsigned i = 0; i < n; ++i) out.push_back(F(out.back()));
  return out;
}

/// F reduced modulo m, evaluated by Horner's rule.
class ModularMap {
 public:
  ModularMap(const IntPolynomial& F, u64 m) : m_(m), narrow_(m <= (u64{1} << 32)) {
    require_modulus(m);
    if (m == 0) throw std::domain_error("modulus must be positive");
    const auto& c = F.coeffs();
    desc_.reserve(c.size());
    for (auto it = c.rbegin(); it != c.rend(); ++it) desc_.push_back(reduce_signed(*it, m));
  }

  u64 modulus() const noexcept { return m_; }

  u64 operator()(u64 z) const noexcept {
    u64 acc = desc_[0];
    if (narrow_) {
      for (std::size_t i = 1; i < desc_.size(); ++i) acc = (acc * z + desc_[i]) % m_;
    } else {
      for (std::size_t i = 1; i < desc_.size(); ++i) acc = addmod(mulmod(acc, z, m_), desc_[i], m_);
    }
    return acc;
  }

 private:
  u64 m_;
  bool narrow_;
  std::vector<u64> desc_;  // coefficients, leading first, reduced into [0, m)
};

/// a_n mod m.
inline u64 a_mod(const IntPolynomial& F, u64 n, u64 m) {
  require_modulus(m);
  if (m == 1) return 0;
  const ModularMap f(F, m);
  u64 z = 0;
  for (u64 i = 0; i < n; ++i) z = f(z);
  return z;
}

/// Residues a_0 mod m, ..., a_n mod m.
inline std::vector<u64> residue_orbit(const IntPolynomial& F, u64 n, u64 m) {
  require_modulus(m);
  std::vector<u64> out(n + 1, 0);
  if (m == 1) return out;
  const ModularMap f(F, m);
  for (u64 i = 1; i <= n; ++i) out[i] = f(out[i - 1]);
  return out;
}

/// Search r = 1..cap for n | a_r. A miss with cap >= n is conclusive: the
/// orbit starts at 0, so if 0 recurs it does so on a cycle of length <= n.
inline CappedRank ord_direct_capped(const IntPolynomial& F, u64 n, u64 cap) {
  require_modulus(n);
  if (n == 1) return CappedRank::finite(1);
  const ModularMap f(F, n);
  u64 z = 0;
  const u64 steps = std::min(cap, n);
  for (u64 r = 1; r <= steps; ++r) {
    z = f(z);
    if (z == 0) return CappedRank::finite(r);
  }
  return cap >= n ? CappedRank::infinite() : CappedRank::unknown();
}

/// ord(n) by direct iteration, at most n steps.
inline Rank ord_direct(const IntPolynomial& F, u64 n) {
  return ord_direct_capped(F, n, n).to_rank();
}

/// ord(n) by Brent cycle detection on the orbit of 0 mod n: 0 is periodic
/// iff a_lambda == 0 mod n for the eventual period lambda, and then
/// ord(n) = lambda. Runs in O(preperiod + period) steps, typically about
/// sqrt(n) when 0 is not periodic.
inline Rank ord_cycle(const IntPolynomial& F, u64 n) {
  require_modulus(n);
  if (n == 1) return Rank::finite(1);
  const ModularMap f(F, n);
  u64 power = 1, lambda = 1;
  u64 tortoise = 0, hare = f(0);
  while (tortoise != hare) {
    if (power == lambda) {
      tortoise = hare;
      power *= 2;
      lambda = 0;
    }
    hare = f(hare);
    ++lambda;
  }
  u64 z = 0;
  for (u64 i = 0; i < lambda; ++i) z = f(z);
  return z == 0 ? Rank::finite(lambda) : Rank::infinite();
}

/// ord(n) for a prime power, memoized.
inline Rank ord_prime_power(const IntPolynomial& F, u64 q, OrdCache& cache) {
  if (auto hit = cache.find(q)) return *hit;
  const Rank r = ord_direct(F, q);
  cache.insert(q, r);
  return r;
}

/// ord(n) = lcm of ord(p^e) over the prime powers of n. Infinite when any
/// component is; overflowed-infinite when the lcm exceeds 64 bits.
inline Rank ord_crt(const IntPolynomial& F, u64 n, OrdCache& cache) {
  cache.require_polynomial(F);
  require_modulus(n);
  if (n <= 1) return Rank::finite(1);
  u64 acc = 1;
  for (const auto& [p, e] : factorize(n).factors) {
    const Rank r = ord_prime_power(F, *pow_checked(p, e), cache);
    if (!r.is_finite()) return Rank::infinite();
    const auto l = lcm_checked(acc, r.value());
    if (!l) return Rank::infinite(true);
    acc = *l;
  }
  return Rank::finite(acc);
}

/// l-values above this are treated as infinite for analysis.
inline constexpr u64 kEllLimit = u64{1} << 63;

/// lcm(n, r) as an l-value, applying the overflow policy.
inline EllValue ell_from_rank(u64 n, Rank r) {
  if (!r.is_finite()) return EllValue::infinite(r.overflowed());
  const auto l = lcm_checked(n, r.value());
  if (!l || *l > kEllLimit) return EllValue::infinite(true);
  return EllValue::finite(*l);
}

inline EllValue ell(const IntPolynomial& F, u64 n, OrdCache& cache) {
  return ell_from_rank(n, ord_crt(F, n, cache));
}

/// gcd(n, a_n), via a_n mod n.
inline u64 gcd_index_term(const IntPolynomial& F, u64 n) {
  if (n == 0) throw std::domain_error("gcd_index_term: n must be >= 1");
  const u64 r = a_mod(F, n, n);
  return r == 0 ? n : std::gcd(n, r);
}

struct Valuation {
  unsigned value = 0;
  bool saturated = false;  // true: nu_p(a_n) >= value, exact value not computed

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// min(nu_p(a_n), e_max), reading the valuation off a_n mod p^e_max.
inline Valuation nu_p_of_a(const IntPolynomial& F, u64 n, u64 p, unsigned e_max) {
  if (e_max == 0) throw std::domain_error("nu_p_of_a: e_max must be >= 1");
  const auto q = pow_checked(p, e_max);
  if (!q || *q > kMaxModulus) throw ModulusTooLarge(q.value_or(~u64{0}));
  const u64 r = a_mod(F, n, *q);
  if (r == 0) return {e_max, true};
  return {valuation(r, p), false};
}

/// log|a_n| / d^n. Exact iteration until |a_n| > 2R, then the increment
/// log|F(a)| - d log|a| = log c_d + log|1 + sum_{i<d} (c_i/c_d) a^{i-d}| is
/// added in scaled form so the estimate never materializes a_n.
inline double growth_constant_estimate(const IntPolynomial& F, unsigned n_iters) {
  require_wandering(F);
  if (n_iters == 0) throw std::domain_error("growth_constant_estimate: n_iters must be >= 1");
  const BigInt threshold = BigInt(2) * F.escape_radius();
  const unsigned d = F.degree();
  const auto& c = F.coeffs();
  BigInt z = 0;
  unsigned n = 0;
  while (n < n_iters && abs(z) <= threshold) {
    z = F(z);
    ++n;
  }
  if (z == 0) throw std::logic_error("wandering orbit returned to 0");
  const double log_abs = std::log(abs(z).convert_to<double>());
  const int sign = z < 0 ? -1 : 1;
  if (n == n_iters) return log_abs / std::pow(double(d), double(n));

  // scaled = log|a_n| / d^n ; carry |a_n| as log and its sign
  double scaled = log_abs / std::pow(double(d), double(n));
  double log_a = log_abs;
  int s = sign;
  const double lead = double(c.back());
  for (; n < n_iters; ++n) {
    double corr = 0;
    for (unsigned i = 0; i < d; ++i) {
      const unsigned gap = d - i;
      const double mag = std::exp(-double(gap) * log_a);
      const double sgn = (gap % 2 == 1 && s < 0) ? -1.0 : 1.0;
      corr += double(c[i]) / lead * sgn * mag;
    }
    const double inc = std::log(lead) + std::log1p(corr);
    scaled += inc / std::pow(double(d), double(n + 1));
    log_a = double(d) * log_a + inc;
    s = (d % 2 == 0) ? 1 : s;
  }
  return scaled;
}

}  // namespace dyngcd
