#pragma once

// The index sets A_k = {n : gcd(G(n), a_n) = k} and
// B_k = {n : k | gcd(G(n), a_n), every prime of the gcd divides k}:
// brute-force membership, sieve counters, the exact floor identity,
// truncated Mobius series, nonemptiness criteria, the L_k / N(L) / Y_k lower
// bound and the linear-form progression machinery.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyngcd/arith.hpp"
#include "dyngcd/orbit.hpp"
#include "dyngcd/parallel.hpp"
#include "dyngcd/prime_lab.hpp"

namespace dyngcd {

using Rational = boost::multiprecision::cpp_rational;

/// A mismatch between two routes that must agree. Always a bug.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// G(x) = x or G(x) = a*x + b with gcd(a, b) = 1.
class GForm {
 public:
  static GForm identity() { return GForm(1, 0, true); }
  static GForm linear(u64 a, u64 b) {
    if (a == 0 || b == 0) throw std::domain_error("linear form needs positive a and b");
    if (std::gcd(a, b) != 1)
      throw std::domain_error("linear form needs gcd(a, b) = 1, got a=" + std::to_string(a) +
                              " b=" + std::to_string(b));
    return GForm(a, b, false);
  }

  bool is_identity() const noexcept { return identity_; }
  u64 a() const noexcept { return a_; }
  u64 b() const noexcept { return b_; }

  u64 operator()(u64 n) const {
    const auto an = mul_checked(a_, n);
    u64 v = 0;
    if (!an || __builtin_add_overflow(*an, b_, &v) || v > kMaxModulus)
      throw ModulusTooLarge(~u64{0});
    return v;
  }

  std::string describe() const {
    return identity_ ? "x" : std::to_string(a_) + "*x+" + std::to_string(b_);
  }

 private:
  GForm(u64 a, u64 b, bool id) : a_(a), b_(b), identity_(id) {}
  u64 a_;
  u64 b_;
  bool identity_;
};

/// (F, G, k). F must have a wandering orbit of 0.
class GcdQuery {
 public:
  GcdQuery(IntPolynomial F, u64 k, GForm G = GForm::identity())
      : F_(std::move(F)), k_(k), G_(G), k_factors_(k == 0 ? FactoredInteger{} : factorize(k)) {
    if (k == 0) throw std::domain_error("k must be >= 1");
    require_wandering(F_);
  }

  const IntPolynomial& F() const noexcept { return F_; }
  u64 k() const noexcept { return k_; }
  const GForm& G() const noexcept { return G_; }
  const FactoredInteger& k_factors() const noexcept { return k_factors_; }

  void require_identity(const char* op) const {
    if (!G_.is_identity())
      throw std::domain_error(std::string(op) + " is defined for G(x) = x only");
  }
  void require_linear(const char* op) const {
    if (G_.is_identity()) throw std::domain_error(std::string(op) + " needs G(x) = a*x + b");
  }

  /// Same F and G, different k.
  GcdQuery with_k(u64 k) const { return GcdQuery(F_, k, G_, /*checked=*/true); }

 private:
  GcdQuery(IntPolynomial F, u64 k, GForm G, bool)
      : F_(std::move(F)), k_(k), G_(G), k_factors_(factorize(k)) {}

  IntPolynomial F_;
  u64 k_;
  GForm G_;
  FactoredInteger k_factors_;
};

struct MembershipVerdict {
  u64 n = 0;
  u64 g = 0;
  bool in_B = false;
  bool in_A = false;
};

/// Classify a gcd value g = gcd(G(n), a_n) against k.
inline MembershipVerdict classify_gcd(u64 n, u64 g, const GcdQuery& q) {
  MembershipVerdict v{n, g, false, false};
  v.in_A = g == q.k();
  if (g % q.k() == 0) {
    u64 rest = g;
    for (const auto& f : q.k_factors().factors)
      while (rest % f.prime == 0) rest /= f.prime;
    v.in_B = rest == 1;
  }
  return v;
}

/// gcd(G(n), a_n), reading a_n modulo the finite modulus G(n).
inline u64 index_gcd(const IntPolynomial& F, const GForm& G, u64 n) {
  const u64 m = G(n);
  if (m == 1) return 1;
  const u64 r = a_mod(F, n, m);
  return r == 0 ? m : std::gcd(m, r);
}

inline MembershipVerdict membership(const GcdQuery& q, u64 n) {
  if (n == 0) throw std::domain_error("membership: n must be >= 1");
  return classify_gcd(n, index_gcd(q.F(), q.G(), n), q);
}

/// g[n] = gcd(G(n), a_n) for 1 <= n <= x (g[0] unused). Theta(x^2) steps.
inline std::vector<u64> index_gcd_table(const IntPolynomial& F, const GForm& G, u64 x,
                                        unsigned threads = 1) {
  std::vector<u64> g(x + 1, 0);
  for_each_shard(x, threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) g[i + 1] = index_gcd(F, G, i + 1);
  });
  return g;
}

struct Counts {
  u64 A = 0;
  u64 B = 0;

  friend bool operator==(const Counts&, const Counts&) = default;
};

inline Counts counts_from_gcds(std::span<const u64> g, const GcdQuery& q, u64 x) {
  Counts c;
  for (u64 n = 1; n <= x && n < g.size(); ++n) {
    const auto v = classify_gcd(n, g[n], q);
    c.A += v.in_A;
    c.B += v.in_B;
  }
  return c;
}

/// Brute force: membership of every n <= x.
inline Counts count_oracle(const GcdQuery& q, u64 x, unsigned threads = 1) {
  const auto g = index_gcd_table(q.F(), q.G(), x, threads);
  return counts_from_gcds(g, q, x);
}

// ---------------------------------------------------------------------------
// sieve

/// Membership flags for 1..x from the rank characterization:
///   n in B  iff  l(k) | n and l(p) does not divide n for every prime p not dividing k;
///   n in A  iff  n in B and, for each p^e || k, not (p^{e+1} | n and ord(p^{e+1}) | n).
struct IndexSieve {
  static constexpr std::uint8_t kB = 1;
  static constexpr std::uint8_t kA = 2;

  u64 x = 0;
  std::vector<std::uint8_t> flags;  // index n, 0 unused

  Counts counts_up_to(u64 y) const {
    Counts c;
    for (u64 n = 1; n <= std::min(x, y); ++n) {
      c.B += (flags[n] & kB) != 0;
      c.A += (flags[n] & kA) != 0;
    }
    return c;
  }
};

inline IndexSieve sieve_indices(const GcdQuery& q, u64 x, OrdCache& cache, unsigned threads = 1) {
  q.require_identity("count_sieve");
  IndexSieve s{x, std::vector<std::uint8_t>(x + 1, 0)};
  const IntPolynomial& F = q.F();
  const EllValue lk = ell(F, q.k(), cache);
  if (!lk.is_finite() || lk.value() > x) return s;

  for (u64 n = lk.value(); n <= x; n += lk.value()) s.flags[n] = IndexSieve::kB;
  for (const auto& pe : small_ell_primes(F, x, threads)) {
    if (q.k() % pe.p == 0) continue;
    for (u64 n = pe.ell; n <= x; n += pe.ell) s.flags[n] = 0;
  }

  struct Guard {
    u64 next_power;  // p^{e+1}
    u64 next_ord;    // ord(p^{e+1}), 0 if infinite
  };
  std::vector<Guard> guards;
  for (const auto& [p, e] : q.k_factors().factors) {
    const auto pp = pow_checked(p, e + 1);
    if (!pp || *pp > x) continue;  // p^{e+1} cannot divide any n <= x
    const Rank r = ord_prime_power(F, *pp, cache);
    guards.push_back({*pp, r.encode()});
  }
  for (u64 n = lk.value(); n <= x; n += lk.value()) {
    if (!(s.flags[n] & IndexSieve::kB)) continue;
    const bool exact = std::all_of(guards.begin(), guards.end(), [n](const Guard& g) {
      return n % g.next_power != 0 || g.next_ord == 0 || n % g.next_ord != 0;
    });
    if (exact) s.flags[n] |= IndexSieve::kA;
  }
  return s;
}

inline Counts count_sieve(const GcdQuery& q, u64 x, OrdCache& cache, unsigned threads = 1) {
  return sieve_indices(q, x, cache, threads).counts_up_to(x);
}

// ---------------------------------------------------------------------------
// exact floor identity and truncated series

struct FloorIdentity {
  i64 value = 0;
  bool k_pretty = false;
  std::size_t terms = 0;  // nonzero terms
};

/// sum over squarefree d coprime to k of mu(d) floor(x / l(dk)). Terms with
/// l(dk) > x vanish, and l(dk) = lcm(l(k), l(p) : p | d) only grows along
/// the search, so the enumeration visits exactly the nonzero terms.
inline FloorIdentity floor_identity_B(const GcdQuery& q, u64 x, OrdCache& cache,
                                      unsigned threads = 1) {
  q.require_identity("floor_identity_B");
  FloorIdentity out;
  const EllValue lk = ell(q.F(), q.k(), cache);
  if (!lk.is_finite()) return out;
  out.k_pretty = true;
  if (lk.value() > x) return out;
  std::vector<u64> ells;
  for (const auto& pe : small_ell_primes(q.F(), x, threads))
    if (q.k() % pe.p != 0) ells.push_back(pe.ell);

  std::function<void(std::size_t, u64, int)> walk = [&](std::size_t from, u64 l, int mu) {
    out.value += mu * static_cast<i64>(x / l);
    ++out.terms;
    for (std::size_t j = from; j < ells.size(); ++j) {
      const auto next = lcm_checked(l, ells[j]);
      if (next && *next <= x) walk(j + 1, *next, -mu);
    }
  };
  walk(0, lk.value(), 1);
  return out;
}

struct SeriesTruncation {
  u64 T = 0;
  double value = 0;
  double last_block = 0;     // sum over T/2 < t <= T of |mu(t)| / l(tk)
  std::size_t dropped = 0;   // terms whose l-value overflowed
};

namespace detail {

struct PrettyPrime {
  u64 p;
  u64 ord;
  u64 ell;
};

/// Pretty primes p <= T with their l-values (ascending p), seeding the cache.
inline std::vector<PrettyPrime> pretty_primes_up_to(const IntPolynomial& F, u64 T,
                                                    OrdCache& cache, unsigned threads) {
  const auto records = scan_primes(F, 2, T, ScanPolicy::sieve_bound(T), threads);
  seed_cache(cache, records);
  std::vector<PrettyPrime> out;
  for (const auto& r : records)
    if (r.ell.is_finite()) out.push_back({r.p, r.ord.value(), r.ell.value()});
  return out;
}

/// Accumulate sign * mu(d) / lcm(base_ell, l(p) : p | d) over squarefree d
/// built from `primes` with scale * d <= T.
inline void series_walk(std::span<const PrettyPrime> primes, u64 T, u64 scale, u64 base_ell,
                        int sign, long double& value, long double& block, std::size_t& dropped) {
  std::function<void(std::size_t, u64, u64, int)> walk = [&](std::size_t from, u64 d, u64 l,
                                                             int mu) {
    value += mu / static_cast<long double>(l);
    if (scale * d > T / 2) block += 1.0L / static_cast<long double>(l);
    for (std::size_t j = from; j < primes.size(); ++j) {
      const u64 p = primes[j].p;
      if (scale * d > T / p) break;
      const auto next = lcm_checked(l, primes[j].ell);
      if (!next || *next > kEllLimit) {
        ++dropped;
        continue;
      }
      walk(j + 1, d * p, *next, -mu);
    }
  };
  walk(0, 1, base_ell, sign);
}

}  // namespace detail

/// Partial sum of sum_{(d,k)=1} mu(d) / l(dk) over squarefree d <= T.
inline SeriesTruncation series_density_B(const GcdQuery& q, u64 T, OrdCache& cache,
                                         unsigned threads = 1) {
  q.require_identity("series_density_B");
  SeriesTruncation out;
  out.T = T;
  const EllValue lk = ell(q.F(), q.k(), cache);
  if (!lk.is_finite() || T == 0) return out;
  auto primes = detail::pretty_primes_up_to(q.F(), T, cache, threads);
  std::erase_if(primes, [&](const detail::PrettyPrime& pp) { return q.k() % pp.p == 0; });
  long double value = 0, block = 0;
  detail::series_walk(primes, T, 1, lk.value(), 1, value, block, out.dropped);
  out.value = static_cast<double>(value);
  out.last_block = static_cast<double>(block);
  return out;
}

/// Partial sum of sum_t mu(t) / l(tk) over squarefree t <= T, split as
/// t = c * d with c | rad(k) and gcd(d, k) = 1, so l(tk) = lcm(l(ck), l(d)).
inline SeriesTruncation series_density_A(const GcdQuery& q, u64 T, OrdCache& cache,
                                         unsigned threads = 1) {
  q.require_identity("series_density_A");
  SeriesTruncation out;
  out.T = T;
  if (T == 0) return out;
  auto primes = detail::pretty_primes_up_to(q.F(), T, cache, threads);
  std::erase_if(primes, [&](const detail::PrettyPrime& pp) { return q.k() % pp.p == 0; });

  const auto& kf = q.k_factors().factors;
  long double value = 0, block = 0;
  for (u64 mask = 0; mask < (u64{1} << kf.size()); ++mask) {
    u64 c = 1;
    int mu = 1;
    bool fits = true;
    for (std::size_t i = 0; i < kf.size(); ++i) {
      if (!(mask >> i & 1)) continue;
      c *= kf[i].prime;
      mu = -mu;
      if (c > T) fits = false;
    }
    if (!fits) continue;
    const auto kc = mul_checked(q.k(), c);
    if (!kc || *kc > kMaxModulus) {
      ++out.dropped;
      continue;
    }
    const EllValue lkc = ell(q.F(), *kc, cache);
    if (!lkc.is_finite()) {
      out.dropped += lkc.overflowed();
      continue;
    }
    detail::series_walk(primes, T, c, lkc.value(), mu, value, block, out.dropped);
  }
  out.value = static_cast<double>(value);
  out.last_block = static_cast<double>(block);
  return out;
}

/// sum over squarefree d | k of mu(d) * #B_{dk}(x), by the sieve.
inline i64 inclusion_exclusion_A(const GcdQuery& q, u64 x, OrdCache& cache, unsigned threads = 1) {
  const auto& kf = q.k_factors().factors;
  i64 total = 0;
  for (u64 mask = 0; mask < (u64{1} << kf.size()); ++mask) {
    u64 d = 1;
    int mu = 1;
    for (std::size_t i = 0; i < kf.size(); ++i)
      if (mask >> i & 1) {
        d *= kf[i].prime;
        mu = -mu;
      }
    total += mu * static_cast<i64>(count_sieve(q.with_k(q.k() * d), x, cache, threads).B);
  }
  return total;
}

// ---------------------------------------------------------------------------
// nonemptiness

struct NonemptyVerdict {
  enum class State { True, False, Unknown };
  State state = State::Unknown;
  std::optional<u64> witness;  // an n in the set, when known
  std::string explanation;

  bool holds() const noexcept { return state == State::True; }
};

/// B_k is nonempty iff k is pretty and no prime p not dividing k has
/// l(p) | l(k). Only primes dividing l(k) can qualify, so the check is finite.
inline NonemptyVerdict b_nonempty(const GcdQuery& q, OrdCache& cache) {
  q.require_identity("b_nonempty");
  NonemptyVerdict v;
  const EllValue lk = ell(q.F(), q.k(), cache);
  if (!lk.is_finite()) {
    v.state = lk.overflowed() ? NonemptyVerdict::State::Unknown : NonemptyVerdict::State::False;
    v.explanation = lk.overflowed() ? "l(k) exceeds 2^63" : "k is not pretty";
    return v;
  }
  for (const auto& [p, e] : factorize(lk.value()).factors) {
    if (q.k() % p == 0) continue;
    const EllValue lp = ell(q.F(), p, cache);
    if (lp.is_finite() && lk.value() % lp.value() == 0) {
      v.state = NonemptyVerdict::State::False;
      v.explanation = "l(" + std::to_string(p) + ")=" + lp.to_string() + " divides l(k)=" +
                      lk.to_string() + " with p not dividing k";
      return v;
    }
  }
  v.state = NonemptyVerdict::State::True;
  v.witness = lk.value();
  v.explanation = "k is pretty; no prime outside k has l(p) | l(k)=" + lk.to_string();
  return v;
}

/// A_k is nonempty iff gcd(l(k), a_{l(k)}) = k; then n = l(k) is a witness.
inline NonemptyVerdict a_nonempty(const GcdQuery& q, OrdCache& cache) {
  q.require_identity("a_nonempty");
  NonemptyVerdict v;
  const EllValue lk = ell(q.F(), q.k(), cache);
  if (!lk.is_finite() || lk.value() > kMaxModulus) {
    const bool big = lk.overflowed() || lk.is_finite();
    v.state = big ? NonemptyVerdict::State::Unknown : NonemptyVerdict::State::False;
    v.explanation = big ? "l(k) exceeds the modulus limit" : "k is not pretty";
    return v;
  }
  const u64 g = gcd_index_term(q.F(), lk.value());
  if (g == q.k()) {
    v.state = NonemptyVerdict::State::True;
    v.witness = lk.value();
    v.explanation = "gcd(l(k), a_l(k)) = k at l(k)=" + lk.to_string();
  } else {
    v.state = NonemptyVerdict::State::False;
    v.explanation = "gcd(l(k), a_l(k)) = " + std::to_string(g) + " != k";
  }
  return v;
}

// ---------------------------------------------------------------------------
// L_k, N(L), Y_k

struct LkSet {
  struct Element {
    u64 value;
    u64 prime;          // the prime that produced it
    bool prime_divisor; // p | k, as opposed to a ratio l(kp)/l(k)
  };

  u64 k = 0;
  u64 ell_k = 0;
  u64 bound = 0;
  std::vector<Element> elements;  // distinct values <= bound, ascending
  double reciprocal_sum = 0;

  bool contains_one() const { return !elements.empty() && elements.front().value == 1; }
  std::vector<u64> values() const {
    std::vector<u64> out;
    for (const auto& e : elements) out.push_back(e.value);
    return out;
  }
};

/// Elements of L_k = {p : p | k} u {l(kp)/l(k) : p pretty, p not dividing k}
/// that are <= bound. A ratio is a multiple of p unless p | l(k), so the
/// candidates are the primes <= bound together with the primes of l(k).
inline LkSet build_Lk(const GcdQuery& q, u64 bound, OrdCache& cache, unsigned threads = 1) {
  q.require_identity("build_Lk");
  const EllValue lk = ell(q.F(), q.k(), cache);
  if (!lk.is_finite()) throw std::domain_error("build_Lk: k is not pretty");
  LkSet out;
  out.k = q.k();
  out.ell_k = lk.value();
  out.bound = bound;

  std::vector<LkSet::Element> raw;
  for (const auto& [p, e] : q.k_factors().factors)
    if (p <= bound) raw.push_back({p, p, true});

  std::vector<u64> candidates;
  for (const auto& pp : detail::pretty_primes_up_to(q.F(), bound, cache, threads))
    candidates.push_back(pp.p);
  for (const auto& [p, e] : factorize(lk.value()).factors) candidates.push_back(p);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  for (u64 p : candidates) {
    if (q.k() % p == 0) continue;
    const auto kp = mul_checked(q.k(), p);
    if (!kp || *kp > kMaxModulus) continue;
    const EllValue lkp = ell(q.F(), *kp, cache);
    if (!lkp.is_finite()) continue;
    const u64 ratio = lkp.value() / lk.value();
    if (ratio <= bound) raw.push_back({ratio, p, false});
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const auto& a, const auto& b) { return a.value < b.value; });
  long double sum = 0;
  for (const auto& e : raw) {
    if (!out.elements.empty() && out.elements.back().value == e.value) continue;
    out.elements.push_back(e);
    sum += 1.0L / static_cast<long double>(e.value);
  }
  out.reciprocal_sum = static_cast<double>(sum);
  return out;
}

/// #{n <= x : no s in L divides n}.
inline u64 non_multiples_count(std::span<const u64> L, u64 x) {
  std::vector<bool> hit(x + 1, false);
  for (u64 s : L) {
    if (s < 2) throw std::domain_error("non_multiples_count: elements must be >= 2");
    for (u64 n = s; n <= x; n += s) hit[n] = true;
  }
  u64 count = 0;
  for (u64 n = 1; n <= x; ++n) count += !hit[n];
  return count;
}

/// #Y_k(x) = #{m <= x / l(k) : m in N(L_k)}, a lower bound for #B_k(x).
inline u64 y_k_lower_bound(const GcdQuery& q, u64 x, OrdCache& cache, unsigned threads = 1) {
  q.require_identity("y_k_lower_bound");
  const EllValue lk = ell(q.F(), q.k(), cache);
  if (!lk.is_finite() || lk.value() > x) return 0;
  const u64 m = x / lk.value();
  const LkSet L = build_Lk(q, m, cache, threads);
  if (L.contains_one()) return 0;
  const auto values = L.values();
  return non_multiples_count(values, m);
}

// ---------------------------------------------------------------------------
// progressions for G(x) = a*x + b

/// For a pretty prime p not dividing a: p | gcd(a n + b, a_n) iff
/// n = -b/a (mod p) and n = 0 (mod ord(p)).
inline std::optional<Congruence> linear_form_progression(u64 a, u64 b, u64 p, u64 ord) {
  if (a % p == 0) return std::nullopt;
  const u64 inv = *inverse_mod(a % p, p);
  const u64 r = (p - mulmod(b % p, inv, p)) % p;
  return crt_combine({r, p}, {0, ord});
}

namespace detail {

inline BigInt big_gcd(const BigInt& a, const BigInt& b) { return boost::multiprecision::gcd(a, b); }

/// x with a*x = 1 (mod m), gcd(a, m) = 1.
inline BigInt big_inverse(BigInt a, const BigInt& m) {
  BigInt t = 0, nt = 1, r = m, nr = a % m;
  while (nr != 0) {
    const BigInt q = r / nr;
    t -= q * nt;
    std::swap(t, nt);
    r -= q * nr;
    std::swap(r, nr);
  }
  if (t < 0) t += m;
  return t;
}

struct BigCongruence {
  BigInt residue;
  BigInt modulus;
};

inline std::optional<BigCongruence> big_crt(const BigCongruence& x, const BigCongruence& y) {
  const BigInt g = big_gcd(x.modulus, y.modulus);
  if ((y.residue - x.residue) % g != 0) return std::nullopt;
  const BigInt m2 = y.modulus / g;
  BigInt diff = ((y.residue - x.residue) / g) % m2;
  if (diff < 0) diff += m2;
  const BigInt t = m2 == 1 ? BigInt(0) : diff * big_inverse((x.modulus / g) % m2, m2) % m2;
  const BigInt l = x.modulus / g * y.modulus;
  return BigCongruence{(x.residue + x.modulus * t) % l, l};
}

}  // namespace detail

/// Exact density of a union of residue classes, by inclusion-exclusion over
/// compatible intersections. nullopt if more than node_limit intersections
/// would be visited.
inline std::optional<Rational> progression_union_density(std::span<const Congruence> progs,
                                                          std::size_t node_limit = 1u << 22) {
  Rational total = 0;
  std::size_t nodes = 0;
  bool exhausted = false;
  std::function<void(std::size_t, const detail::BigCongruence&, int)> walk =
      [&](std::size_t from, const detail::BigCongruence& cur, int sign) {
        for (std::size_t j = from; j < progs.size() && !exhausted; ++j) {
          const auto next = detail::big_crt(cur, {BigInt(progs[j].residue), BigInt(progs[j].modulus)});
          if (!next) continue;
          if (++nodes > node_limit) {
            exhausted = true;
            return;
          }
          total += Rational(sign, next->modulus);
          walk(j + 1, *next, -sign);
        }
      };
  walk(0, {BigInt(0), BigInt(1)}, 1);
  if (exhausted) return std::nullopt;
  return total;
}

/// Period over which a set of progressions repeats.
inline BigInt progression_period(std::span<const Congruence> progs) {
  BigInt l = 1;
  for (const auto& c : progs) l = l / detail::big_gcd(l, BigInt(c.modulus)) * c.modulus;
  return l;
}

struct DeltaZ {
  u64 z = 0;
  u64 x = 0;
  std::vector<u64> primes;               // pretty primes <= z that contribute
  std::vector<Congruence> progressions;  // parallel to primes
  u64 marked = 0;
  double marked_density = 0;             // marked / x
  BigInt period = 1;
  std::optional<Rational> exact;         // only when period <= 10^9
};

inline constexpr u64 kExactPeriodLimit = 1'000'000'000;

/// Density of n <= x with some pretty p <= z dividing gcd(a n + b, a_n).
inline DeltaZ delta_z_empirical(const GcdQuery& q, u64 z, u64 x, OrdCache& cache,
                                unsigned threads = 1) {
  q.require_linear("delta_z_empirical");
  if (z > x) throw std::domain_error("delta_z_empirical: need z <= x");
  DeltaZ out;
  out.z = z;
  out.x = x;
  for (const auto& pp : detail::pretty_primes_up_to(q.F(), z, cache, threads)) {
    const auto prog = linear_form_progression(q.G().a(), q.G().b(), pp.p, pp.ord);
    if (!prog) continue;
    out.primes.push_back(pp.p);
    out.progressions.push_back(*prog);
  }
  std::vector<bool> bad(x + 1, false);
  for (const auto& c : out.progressions)
    for (u64 n = c.residue == 0 ? c.modulus : c.residue; n <= x; n += c.modulus) bad[n] = true;
  for (u64 n = 1; n <= x; ++n) out.marked += bad[n];
  out.marked_density = x == 0 ? 0.0 : double(out.marked) / double(x);
  out.period = progression_period(out.progressions);
  if (out.period <= kExactPeriodLimit) out.exact = progression_union_density(out.progressions);
  return out;
}

struct Theorem3Row {
  u64 z = 0;
  double delta_marked = 0;
  std::optional<Rational> delta_exact;
  double residual = 0;     // sum over pretty z < p <= x*max(a,b) of 1/(p ord(p))
  double lower_bound = 0;  // 1 - delta_marked - residual
  bool holds = false;
};

struct Theorem3Report {
  std::string poly;
  u64 a = 0, b = 0, x = 0;
  u64 coprime_count = 0;
  double empirical_density = 0;
  std::vector<Theorem3Row> rows;
  bool all_hold = true;
};

/// Empirical density of gcd(a n + b, a_n) = 1 against 1 - delta_z - residual.
inline Theorem3Report theorem3_report(const GcdQuery& q, u64 x, std::span<const u64> z_schedule,
                                      OrdCache& cache, unsigned threads = 1) {
  q.require_linear("theorem3_report");
  Theorem3Report out;
  out.poly = q.F().to_string();
  out.a = q.G().a();
  out.b = q.G().b();
  out.x = x;
  const auto g = index_gcd_table(q.F(), q.G(), x, threads);
  for (u64 n = 1; n <= x; ++n) out.coprime_count += g[n] == 1;
  out.empirical_density = x == 0 ? 0.0 : double(out.coprime_count) / double(x);

  const u64 reach = x * std::max(out.a, out.b);
  const auto records = scan_primes(q.F(), 2, reach, ScanPolicy::sieve_bound(reach), threads);
  seed_cache(cache, records);
  for (u64 z : z_schedule) {
    Theorem3Row row;
    row.z = z;
    const DeltaZ dz = delta_z_empirical(q, std::min(z, x), x, cache, threads);
    row.delta_marked = dz.marked_density;
    row.delta_exact = dz.exact;
    long double res = 0;
    for (const auto& r : records)
      if (r.p > z && r.pretty) res += 1.0L / ((long double)r.p * (long double)r.ord.value());
    row.residual = static_cast<double>(res);
    row.lower_bound = 1.0 - row.delta_marked - row.residual;
    row.holds = out.empirical_density >= row.lower_bound;
    out.all_hold = out.all_hold && row.holds;
    out.rows.push_back(row);
  }
  return out;
}

}  // namespace dyngcd
