#pragma once

// Brute-force reference implementations. Nothing here calls into the
// library: polynomials are plain ascending coefficient vectors and every
// quantity is computed straight from its definition.

#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

namespace oracle {

using u64 = std::uint64_t;
using Coeffs = std::vector<long long>;  // c_0, c_1, ..., c_d

inline const Coeffs kXSquaredPlusOne{1, 0, 1};
inline const Coeffs kXSquaredPlusXPlusOne{1, 1, 1};
inline const Coeffs kCubic{1, 0, 1, 1};  // x^3 + x^2 + 1

inline u64 reduce(long long c, u64 m) {
  const long long r = c % static_cast<long long>(m);
  return static_cast<u64>(r < 0 ? r + static_cast<long long>(m) : r);
}

/// sum c_i z^i mod m, power by power.
inline u64 eval_mod(const Coeffs& c, u64 z, u64 m) {
  unsigned __int128 acc = 0, power = 1 % m;
  for (long long ci : c) {
    acc = (acc + static_cast<unsigned __int128>(reduce(ci, m)) * power) % m;
    power = power * z % m;
  }
  return static_cast<u64>(acc);
}

inline u64 a_mod(const Coeffs& c, u64 n, u64 m) {
  u64 z = 0;
  for (u64 i = 0; i < n; ++i) z = eval_mod(c, z, m);
  return z % m;
}

/// First r in [1, 2m] with a_r = 0 mod m. More than m steps means the orbit
/// has cycled without meeting 0, so the search is complete.
inline std::optional<u64> ord(const Coeffs& c, u64 m) {
  u64 z = 0;
  for (u64 r = 1; r <= 2 * m; ++r) {
    z = eval_mod(c, z, m);
    if (z == 0) return r;
  }
  return std::nullopt;
}

/// Smallest r with m | r and m | a_r, found by walking r = m, 2m, ...
/// up to 2m^2.
inline std::optional<u64> ell(const Coeffs& c, u64 m) {
  u64 z = 0;
  for (u64 r = 1; r <= 2 * m * m; ++r) {
    z = eval_mod(c, z, m);
    if (r % m == 0 && z == 0) return r;
  }
  return std::nullopt;
}

/// lcm(m, ord(m)), for loops too long for the definitional search.
inline std::optional<u64> ell_via_ord(const Coeffs& c, u64 m) {
  const auto r = ord(c, m);
  if (!r) return std::nullopt;
  return std::lcm(m, *r);
}

inline bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<u64> primes_up_to(u64 x) {
  std::vector<u64> out;
  for (u64 n = 2; n <= x; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline int mobius(u64 n) {
  int mu = 1;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    n /= d;
    if (n % d == 0) return 0;
    mu = -mu;
  }
  return n > 1 ? -mu : mu;
}

inline bool every_prime_divides(u64 g, u64 k) {
  for (u64 p = 2; p <= g; ++p)
    if (g % p == 0 && is_prime(p) && k % p != 0) return false;
  return true;
}

/// gcd(a n + b, a_n), via a_n mod (a n + b).
inline u64 index_gcd(const Coeffs& c, u64 n, u64 a = 1, u64 b = 0) {
  const u64 m = a * n + b;
  if (m == 1) return 1;
  return std::gcd(m, a_mod(c, n, m));
}

inline bool in_A(u64 g, u64 k) { return g == k; }
inline bool in_B(u64 g, u64 k) { return g % k == 0 && every_prime_divides(g, k); }

inline std::pair<u64, u64> counts(const Coeffs& c, u64 k, u64 x) {
  u64 A = 0, B = 0;
  for (u64 n = 1; n <= x; ++n) {
    const u64 g = index_gcd(c, n);
    A += in_A(g, k);
    B += in_B(g, k);
  }
  return {A, B};
}

inline bool injective_mod_p(const Coeffs& c, u64 p) {
  std::vector<bool> seen(p, false);
  for (u64 z = 0; z < p; ++z) {
    const u64 v = eval_mod(c, z, p);
    if (seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

/// n <= x such that no element of L divides n.
inline u64 non_multiples(const std::vector<u64>& L, u64 x) {
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) {
    bool hit = false;
    for (u64 s : L) hit = hit || n % s == 0;
    count += !hit;
  }
  return count;
}

}  // namespace oracle

namespace gen {

/// splitmix64 with a fixed seed per test.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  /// Uniform-ish in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + next() % (hi - lo + 1); }
  long long signed_between(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<std::uint64_t>(hi - lo + 1));
  }

 private:
  std::uint64_t state_;
};

/// Random polynomial of degree 2..max_degree with small coefficients and a
/// positive leading term.
inline oracle::Coeffs polynomial(Rng& rng, unsigned max_degree = 4, long long span = 5) {
  const unsigned d = static_cast<unsigned>(rng.between(2, max_degree));
  oracle::Coeffs c(d + 1);
  for (unsigned i = 0; i < d; ++i) c[i] = rng.signed_between(-span, span);
  c[d] = static_cast<long long>(rng.between(1, 3));
  return c;
}

}  // namespace gen
