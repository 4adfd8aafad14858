#pragma once

// Integer utilities shared by every module: sieves, Mobius, factorization,
// valuations, checked lcm and double-width modular arithmetic.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyngcd {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

/// Largest modulus accepted by any residue computation.
inline constexpr u64 kMaxModulus = u64{1} << 62;

/// Raised when a modulus above kMaxModulus reaches a residue routine.
class ModulusTooLarge : public std::domain_error {
 public:
  explicit ModulusTooLarge(u64 m)
      : std::domain_error("modulus " + std::to_string(m) + " exceeds 2^62") {}
};

inline void require_modulus(u64 m) {
  if (m > kMaxModulus) throw ModulusTooLarge(m);
}

struct PrimePower {
  u64 prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n together with its prime-power decomposition, primes ascending.
struct FactoredInteger {
  u64 n = 1;
  std::vector<PrimePower> factors;

  bool squarefree() const noexcept {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& f) { return f.exponent == 1; });
  }
  u64 radical() const noexcept {
    u64 r = 1;
    for (const auto& f : factors) r *= f.prime;
    return r;
  }
};

// ---------------------------------------------------------------------------
// sieves

/// Primes in [2, limit], ascending. Odd-only Eratosthenes.
inline std::vector<u64> sieve_primes(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  out.push_back(2);
  // index i stands for 2i+1
  const u64 half = (limit - 1) / 2;
  std::vector<bool> composite(half + 1, false);
  for (u64 i = 1; i <= half; ++i) {
    if (composite[i]) continue;
    const u64 p = 2 * i + 1;
    out.push_back(p);
    for (u64 j = (p * p - 1) / 2; j <= half; j += p) composite[j] = true;
  }
  return out;
}

/// mu[n] for 0 <= n <= limit (mu[0] is 0 by convention). Linear sieve.
inline std::vector<int> mobius_sieve(u64 limit) {
  std::vector<int> mu(limit + 1, 0);
  if (limit >= 1) mu[1] = 1;
  std::vector<u64> primes;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (!composite[i]) {
      primes.push_back(i);
      mu[i] = -1;
    }
    for (u64 p : primes) {
      const u64 ip = i * p;
      if (ip > limit) break;
      composite[ip] = true;
      if (i % p == 0) {
        mu[ip] = 0;
        break;
      }
      mu[ip] = -mu[i];
    }
  }
  return mu;
}

// ---------------------------------------------------------------------------
// factorization

/// Trial division on a 2,3 wheel. Intended for n up to about 10^12.
inline FactoredInteger factorize(u64 n) {
  if (n == 0) throw std::domain_error("factorize: n must be positive");
  FactoredInteger out{n, {}};
  auto strip = [&](u64 p) {
    if (n % p != 0) return;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.factors.push_back({p, e});
  };
  strip(2);
  strip(3);
  for (u64 p = 5; p <= n / p; p += 6) {
    strip(p);
    strip(p + 2);
  }
  if (n > 1) out.factors.push_back({n, 1});
  return out;
}

inline u64 largest_prime_factor(u64 n) {
  if (n < 2) throw std::domain_error("largest_prime_factor: n must be >= 2");
  return factorize(n).factors.back().prime;
}

inline unsigned valuation(u64 n, u64 p) {
  if (n == 0) throw std::domain_error("valuation: n must be positive");
  unsigned e = 0;
  while (n % p == 0) {
    n /= p;
    ++e;
  }
  return e;
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  const auto f = factorize(n);
  return f.factors.size() == 1 && f.factors[0].exponent == 1;
}

// ---------------------------------------------------------------------------
// checked arithmetic

/// lcm(a, b), or nullopt when it does not fit in 64 bits.
inline std::optional<u64> lcm_checked(u64 a, u64 b) {
  if (a == 0 || b == 0) return u64{0};
  const u64 q = a / std::gcd(a, b);
  u64 out = 0;
  if (__builtin_mul_overflow(q, b, &out)) return std::nullopt;
  return out;
}

inline std::optional<u64> mul_checked(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) return std::nullopt;
  return out;
}

/// p^e, or nullopt past 64 bits.
inline std::optional<u64> pow_checked(u64 p, unsigned e) {
  u64 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    auto next = mul_checked(r, p);
    if (!next) return std::nullopt;
    r = *next;
  }
  return r;
}

// ---------------------------------------------------------------------------
// modular arithmetic (moduli <= 2^62)

inline u64 mulmod(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) noexcept {
  const u64 s = a + b;  // a, b < m <= 2^62, no wrap
  return s >= m ? s - m : s;
}

/// Reduce a signed integer into [0, m).
inline u64 reduce_signed(i64 c, u64 m) noexcept {
  if (c >= 0) return static_cast<u64>(c) % m;
  const u64 mag = static_cast<u64>(-(c + 1)) + 1;  // |c| without overflow on INT64_MIN
  const u64 r = mag % m;
  return r == 0 ? 0 : m - r;
}

/// Inverse of a modulo m when gcd(a, m) = 1.
inline std::optional<u64> inverse_mod(u64 a, u64 m) {
  if (m == 1) return u64{0};
  __int128 t = 0, new_t = 1;
  __int128 r = m, new_r = a % m;
  while (new_r != 0) {
    const __int128 q = r / new_r;
    t -= q * new_t;
    std::swap(t, new_t);
    r -= q * new_r;
    std::swap(r, new_r);
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += m;
  return static_cast<u64>(t);
}

/// Residue class n = residue (mod modulus).
struct Congruence {
  u64 residue;
  u64 modulus;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Combine two congruences. nullopt if incompatible or the combined modulus
/// does not fit in 64 bits.
inline std::optional<Congruence> crt_combine(Congruence x, Congruence y) {
  const u64 g = std::gcd(x.modulus, y.modulus);
  const u64 rx = x.residue % g;
  const u64 ry = y.residue % g;
  if (rx != ry) return std::nullopt;
  const auto l = lcm_checked(x.modulus, y.modulus);
  if (!l) return std::nullopt;
  // x.residue + x.modulus * t == y.residue (mod y.modulus)
  const u64 m2 = y.modulus / g;
  const u64 diff = (y.residue >= x.residue) ? (y.residue - x.residue) / g % m2
                                            : (m2 - (x.residue - y.residue) / g % m2) % m2;
  const auto inv = inverse_mod((x.modulus / g) % m2, m2);
  const u64 t = m2 == 1 ? 0 : static_cast<u64>(static_cast<u128>(diff) * *inv % m2);
  const u128 sol = static_cast<u128>(x.residue) + static_cast<u128>(x.modulus) * t;
  return Congruence{static_cast<u64>(sol % *l), *l};
}

}  // namespace dyngcd
