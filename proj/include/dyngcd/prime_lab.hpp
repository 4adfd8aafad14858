#pragma once

// Per-prime classification relative to F and the diagnostics built on it.

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dyngcd/arith.hpp"
#include "dyngcd/orbit.hpp"
#include "dyngcd/parallel.hpp"

namespace dyngcd {

struct PrimeRecord {
  u64 p = 0;
  Rank ord;
  bool pretty = false;
  bool anomalous = false;  // ord(p) == p
  bool injective = false;  // F permutes Z/pZ
  EllValue ell;

  friend bool operator==(const PrimeRecord&, const PrimeRecord&) = default;
};

inline PrimeRecord make_prime_record(u64 p, Rank ord, bool injective) {
  PrimeRecord r;
  r.p = p;
  r.ord = ord;
  r.pretty = ord.is_finite();
  r.anomalous = r.pretty && ord.value() == p;
  r.injective = injective;
  r.ell = ell_from_rank(p, ord);
  return r;
}

/// Cheap certificates that F does not permute Z/pZ. False means "no
/// certificate", not "injective".
inline bool provably_not_injective(const IntPolynomial& F, u64 p) {
  const unsigned d = F.degree();
  if (reduce_signed(F.coefficient(d), p) == 0) return false;
  // a quadratic satisfies F(x) = F(-c1/c2 - x), so it is 2-to-1 for odd p
  if (d == 2 && p > 2) return true;
  // Hermite: no permutation polynomial of F_p has degree d > 1 with d | p - 1
  return d < p && (p - 1) % d == 0;
}

/// True iff F(0), ..., F(p-1) are distinct mod p.
inline bool is_injective_mod_p(const IntPolynomial& F, u64 p) {
  if (p > (u64{1} << 31)) throw std::domain_error("is_injective_mod_p: p must be <= 2^31");
  if (provably_not_injective(F, p)) return false;
  const ModularMap f(F, p);
  std::vector<bool> hit(p, false);
  for (u64 z = 0; z < p; ++z) {
    const u64 v = f(z);
    if (hit[v]) return false;
    hit[v] = true;
  }
  return true;
}

/// How far scan_primes searches for ord(p).
struct ScanPolicy {
  enum class Kind { Exact, SieveBound };
  Kind kind = Kind::Exact;
  u64 x = 0;

  static ScanPolicy exact() { return {Kind::Exact, 0}; }
  /// Enough to decide l(p) <= x. The direct search stops at min(p, x/p + 1);
  /// primes still undecided fall back to cycle detection so anomalous primes
  /// above sqrt(x), whose l(p) = p is within range, are not missed.
  static ScanPolicy sieve_bound(u64 x) { return {Kind::SieveBound, x}; }

  u64 cap_for(u64 p) const { return kind == Kind::Exact ? p : std::min(p, x / p + 1); }
};

inline Rank scan_rank(const IntPolynomial& F, u64 p, const ScanPolicy& policy) {
  if (policy.kind == ScanPolicy::Kind::Exact) return ord_direct(F, p);
  const CappedRank capped = ord_direct_capped(F, p, policy.cap_for(p));
  if (capped.known()) return capped.to_rank();
  return ord_cycle(F, p);
}

inline constexpr u64 kMaxScanPrime = 100'000'000;

/// One record per prime in [p_min, p_max], ascending. Shards are independent
/// and the output does not depend on `threads`.
inline std::vector<PrimeRecord> scan_primes(const IntPolynomial& F, u64 p_min, u64 p_max,
                                            ScanPolicy policy = ScanPolicy::exact(),
                                            unsigned threads = 1) {
  if (p_max > kMaxScanPrime) throw std::domain_error("scan_primes: p_max must be <= 10^8");
  std::vector<u64> primes = sieve_primes(p_max);
  primes.erase(primes.begin(), std::lower_bound(primes.begin(), primes.end(), p_min));
  std::vector<PrimeRecord> out(primes.size());
  for_each_shard(primes.size(), threads, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = primes[i];
      out[i] = make_prime_record(p, scan_rank(F, p, policy), is_injective_mod_p(F, p));
    }
  });
  return out;
}

struct PrimeEll {
  u64 p;
  u64 ord;
  u64 ell;

  friend bool operator==(const PrimeEll&, const PrimeEll&) = default;
};

/// Every prime p <= x with l(p) <= x, ascending. This is all a sieve over
/// [1, x] needs. If the search up to min(p, x/p + 1) misses, l(p) <= x is
/// still possible through ord(p) = p; that needs F injective mod p, so only
/// primes without a non-injectivity certificate pay for cycle detection.
inline std::vector<PrimeEll> small_ell_primes(const IntPolynomial& F, u64 x,
                                              unsigned threads = 1) {
  if (x > kMaxScanPrime) throw std::domain_error("small_ell_primes: x must be <= 10^8");
  const std::vector<u64> primes = sieve_primes(x);
  std::vector<std::vector<PrimeEll>> parts(std::max(1u, threads));
  for_each_shard(primes.size(), threads, [&](std::size_t shard, std::size_t begin, std::size_t end) {
    auto& out = parts[shard];
    for (std::size_t i = begin; i < end; ++i) {
      const u64 p = primes[i];
      const u64 cap = std::min(p, x / p + 1);
      const CappedRank r = ord_direct_capped(F, p, cap);
      u64 ord = 0;
      if (r.state == CappedRank::State::Finite) {
        ord = r.value;
      } else if (r.state == CappedRank::State::Unknown && !provably_not_injective(F, p)) {
        const Rank full = ord_cycle(F, p);
        if (full.is_finite() && full.value() == p) ord = p;
      }
      if (ord == 0) continue;
      const u64 l = ord == p ? p : p * ord;
      if (l <= x) out.push_back({p, ord, l});
    }
  });
  std::vector<PrimeEll> out;
  for (auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

/// Pre-populate an ord cache with scanned prime ranks.
inline void seed_cache(OrdCache& cache, std::span<const PrimeRecord> records) {
  for (const auto& r : records) cache.insert(r.p, r.ord);
}

/// Primes p <= x with ord(p) <= beta * log p / log d. Only a bounded rank
/// search is needed, so this does not depend on a full scan.
inline std::vector<u64> q_beta(const IntPolynomial& F, double beta, u64 x) {
  if (!(beta > 0)) throw std::domain_error("q_beta: beta must be positive");
  std::vector<u64> out;
  const double log_d = std::log(double(F.degree()));
  for (u64 p : sieve_primes(x)) {
    const double bound = beta * std::log(double(p)) / log_d;
    if (bound < 1) continue;
    const auto cap = static_cast<u64>(std::floor(bound + 1e-12));
    const CappedRank r = ord_direct_capped(F, p, cap);
    if (r.state == CappedRank::State::Finite) out.push_back(p);
  }
  return out;
}

struct QBetaRow {
  u64 x = 0;
  std::size_t count = 0;
  double envelope = 0;  // C * x^beta, C calibrated on the first row
  bool flagged = false;
};

/// |Q_beta(x)| against C * x^beta. Violations are flagged, never fatal: the
/// bound is asymptotic.
inline std::vector<QBetaRow> q_beta_table(const IntPolynomial& F, double beta,
                                          std::span<const u64> xs) {
  std::vector<QBetaRow> rows;
  if (xs.empty()) return rows;
  const u64 x_max = *std::max_element(xs.begin(), xs.end());
  const auto members = q_beta(F, beta, x_max);
  double c = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    QBetaRow row;
    row.x = xs[i];
    row.count = static_cast<std::size_t>(
        std::upper_bound(members.begin(), members.end(), xs[i]) - members.begin());
    if (i == 0) c = std::max<double>(double(row.count), 1.0) / std::pow(double(xs[0]), beta);
    row.envelope = c * std::pow(double(xs[i]), beta);
    row.flagged = double(row.count) > row.envelope + 1e-9;
    rows.push_back(row);
  }
  return rows;
}

struct MertensProduct {
  double value = 1;
  std::size_t pretty_count = 0;
};

/// prod (1 - 1/q) over pretty primes q <= bound.
inline MertensProduct mertens_pretty_product(std::span<const PrimeRecord> records, u64 bound) {
  MertensProduct out;
  long double acc = 1;
  for (const auto& r : records) {
    if (r.p > bound || !r.pretty) continue;
    acc *= 1.0L - 1.0L / static_cast<long double>(r.p);
    ++out.pretty_count;
  }
  out.value = static_cast<double>(acc);
  return out;
}

/// (#pretty p <= x) / pi(x).
inline double pretty_prime_density(std::span<const PrimeRecord> records, u64 x) {
  std::size_t total = 0, pretty = 0;
  for (const auto& r : records) {
    if (r.p > x) continue;
    ++total;
    pretty += r.pretty;
  }
  return total == 0 ? 0.0 : double(pretty) / double(total);
}

struct AnomalousReport {
  std::string poly;
  u64 x = 0;
  std::vector<u64> anomalous_primes;  // ord(p) = p
  std::vector<u64> f0_divisors;       // ord(p) = 1, i.e. p | F(0)
  double partial_sum = 0;             // sum of 1/p over both lists
  bool plausibly_nice = false;
  std::string verdict;
};

/// Primes p <= x with p | a_p, split by cause. The niceness verdict is a
/// heuristic: no anomalous prime p > deg F in (sqrt(x), x].
inline AnomalousReport anomalous_report(const IntPolynomial& F,
                                        std::span<const PrimeRecord> records, u64 x) {
  AnomalousReport out;
  out.poly = F.to_string();
  out.x = x;
  long double sum = 0;
  const double root = std::sqrt(double(x));
  bool late = false;
  for (const auto& r : records) {
    if (r.p > x || !r.pretty) continue;
    if (r.anomalous) {
      out.anomalous_primes.push_back(r.p);
      late |= double(r.p) > root && r.p > F.degree();
    } else if (r.ord.value() == 1) {
      out.f0_divisors.push_back(r.p);
    } else {
      continue;
    }
    sum += 1.0L / static_cast<long double>(r.p);
  }
  out.partial_sum = static_cast<double>(sum);
  out.plausibly_nice = !late;
  out.verdict = late ? "inconclusive (heuristic: anomalous prime p > deg F in (sqrt(x), x])"
                     : "plausibly nice (heuristic: no anomalous prime p > deg F in (sqrt(x), x])";
  return out;
}

struct TailSum {
  double sum = 0;
  double comparator = 0;  // 1 / (log z)^(veps - eps)
};

/// sum over pretty z < p <= x of (log p)^eps / (p * ord(p)^veps).
inline TailSum tail_partial_sum(std::span<const PrimeRecord> records, u64 z, u64 x, double eps,
                                double veps) {
  if (!(eps >= 0) || !(veps > eps))
    throw std::domain_error("tail_partial_sum: need 0 <= eps < veps");
  TailSum out;
  long double acc = 0;
  for (const auto& r : records) {
    if (r.p <= z || r.p > x || !r.pretty) continue;
    acc += std::pow(std::log((long double)r.p), (long double)eps) /
           ((long double)r.p * std::pow((long double)r.ord.value(), (long double)veps));
  }
  out.sum = static_cast<double>(acc);
  out.comparator = z >= 2 ? 1.0 / std::pow(std::log(double(z)), veps - eps) : 0.0;
  return out;
}

/// Primes where F is injective but ord(p) != p: small-p failures of the
/// converse direction, reported as data.
inline std::vector<u64> injective_not_anomalous(std::span<const PrimeRecord> records) {
  std::vector<u64> out;
  for (const auto& r : records)
    if (r.injective && !r.anomalous) out.push_back(r.p);
  return out;
}

}  // namespace dyngcd
