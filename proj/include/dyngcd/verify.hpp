#pragma once

// Property suites over the orbit, prime and density modules. Each suite
// checks one structural identity over a range scaled by `bound`.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "dyngcd/density.hpp"
#include "dyngcd/orbit.hpp"
#include "dyngcd/prime_lab.hpp"

namespace dyngcd {

struct SuiteResult {
  std::string name;
  std::string poly;
  bool passed = true;
  u64 checks = 0;
  std::string detail;  // first failure, or informational data

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

struct VerifyConfig {
  u64 bound = 300;
  unsigned threads = 1;

  u64 prime_limit() const { return std::min<u64>(10'000, bound * 34); }
  u64 density_x() const { return std::min<u64>(5'000, bound * 17); }
  u64 crt_limit() const { return std::min<u64>(10'000, bound * bound); }
};

namespace detail {

inline std::vector<u64> pretty_moduli(const IntPolynomial& F, u64 limit) {
  std::vector<u64> out;
  for (u64 n = 1; n <= limit; ++n)
    if (ord_direct(F, n).is_finite()) out.push_back(n);
  return out;
}

inline std::string str(u64 v) { return std::to_string(v); }

}  // namespace detail

/// n | m implies a_n | a_m: exactly for n, m <= 8 and modulo every D <= bound.
inline SuiteResult suite_divisibility(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult r{"orbit.divisibility_sequence", F.to_string(), true, 0, {}};
  const unsigned small = static_cast<unsigned>(std::min<u64>(8, cfg.bound));
  const auto exact = exact_orbit(F, small);
  for (unsigned n = 1; n <= small; ++n)
    for (unsigned m = n; m <= small; m += n) {
      ++r.checks;
      if (exact[m] % exact[n] != 0) r.fail("a_" + detail::str(n) + " does not divide a_" + detail::str(m));
    }
  for (u64 D = 2; D <= cfg.bound; ++D) {
    const auto res = residue_orbit(F, cfg.bound, D);
    for (u64 n = 1; n <= cfg.bound; ++n) {
      if (res[n] != 0) continue;
      for (u64 m = 2 * n; m <= cfg.bound; m += n) {
        ++r.checks;
        if (res[m] != 0) r.fail("mod " + detail::str(D) + ": a_" + detail::str(n) + "=0 but a_" + detail::str(m) + "!=0");
      }
    }
  }
  return r;
}

/// n | a_r iff ord(n) | r, moduli n <= bound, r <= 2 bound.
inline SuiteResult suite_part1(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult r{"orbit.lemma_part1_rank_divides", F.to_string(), true, 0, {}};
  for (u64 n = 2; n <= cfg.bound; ++n) {
    const Rank o = ord_direct(F, n);
    if (!o.is_finite()) continue;
    const auto res = residue_orbit(F, 2 * cfg.bound, n);
    for (u64 t = 1; t <= 2 * cfg.bound; ++t) {
      ++r.checks;
      if ((res[t] == 0) != (t % o.value() == 0))
        r.fail("n=" + detail::str(n) + " r=" + detail::str(t) + " ord=" + o.to_string());
    }
  }
  return r;
}

/// ord(lcm(n, r)) = lcm(ord n, ord r) for pretty n, r <= min(bound, 200);
/// ord_crt agrees with ord_direct for n <= min(10^4, bound^2).
inline SuiteResult suite_part2(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult r{"orbit.lemma_part2_ord_lcm", F.to_string(), true, 0, {}};
  const auto pretty = detail::pretty_moduli(F, std::min<u64>(cfg.bound, 200));
  for (std::size_t i = 0; i < pretty.size(); ++i)
    for (std::size_t j = i; j < pretty.size(); ++j) {
      const u64 n = pretty[i], m = pretty[j];
      const u64 l = std::lcm(n, m);
      const Rank lhs = ord_direct(F, l);
      const u64 rhs = std::lcm(ord_direct(F, n).value(), ord_direct(F, m).value());
      ++r.checks;
      if (!lhs.is_finite() || lhs.value() != rhs)
        r.fail("ord(lcm(" + detail::str(n) + "," + detail::str(m) + "))=" + lhs.to_string() + " vs " + detail::str(rhs));
    }
  OrdCache cache(F);
  for (u64 n = 2; n <= cfg.crt_limit(); ++n) {
    ++r.checks;
    const Rank direct = ord_direct(F, n);
    const Rank crt = ord_crt(F, n, cache);
    if (!(direct == crt)) r.fail("ord_crt(" + detail::str(n) + ")=" + crt.to_string() + " vs direct " + direct.to_string());
    if (direct.is_finite() && direct.value() > n) r.fail("rank cap violated at n=" + detail::str(n));
  }
  return r;
}

/// n | gcd(r, a_r) iff l(n) | r, pretty n <= min(bound, 100), r <= min(2000, 20 bound).
inline SuiteResult suite_part3(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult r{"orbit.lemma_part3_ell_divides", F.to_string(), true, 0, {}};
  const u64 r_max = std::min<u64>(2000, 20 * cfg.bound);
  OrdCache cache(F);
  for (u64 n : detail::pretty_moduli(F, std::min<u64>(cfg.bound, 100))) {
    if (n < 2) continue;
    const EllValue l = ell(F, n, cache);
    const auto res = residue_orbit(F, r_max, n);
    for (u64 t = 1; t <= r_max; ++t) {
      ++r.checks;
      const bool divides = t % n == 0 && res[t] == 0;
      if (divides != (t % l.value() == 0))
        r.fail("n=" + detail::str(n) + " r=" + detail::str(t) + " ell=" + l.to_string());
    }
  }
  return r;
}

/// l(lcm(n, r)) = lcm(l n, l r) for pretty n, r <= min(bound, 100).
inline SuiteResult suite_part4(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult r{"orbit.lemma_part4_ell_lcm", F.to_string(), true, 0, {}};
  OrdCache cache(F);
  const auto pretty = detail::pretty_moduli(F, std::min<u64>(cfg.bound, 100));
  for (std::size_t i = 0; i < pretty.size(); ++i)
    for (std::size_t j = i; j < pretty.size(); ++j) {
      const u64 n = pretty[i], m = pretty[j];
      const EllValue lhs = ell(F, std::lcm(n, m), cache);
      const u64 rhs = std::lcm(ell(F, n, cache).value(), ell(F, m, cache).value());
      ++r.checks;
      if (!lhs.is_finite() || lhs.value() != rhs)
        r.fail("ell(lcm(" + detail::str(n) + "," + detail::str(m) + "))=" + lhs.to_string() + " vs " + detail::str(rhs));
    }
  return r;
}

/// l(p) = p ord(p) when ord(p) < p, l(p) = p when ord(p) = p.
inline SuiteResult suite_part5(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult r{"orbit.lemma_part5_prime_ell", F.to_string(), true, 0, {}};
  const auto records = scan_primes(F, 2, cfg.prime_limit(), ScanPolicy::exact(), cfg.threads);
  for (const auto& rec : records) {
    if (!rec.pretty) continue;
    ++r.checks;
    const u64 o = rec.ord.value();
    const u64 expect = o < rec.p ? rec.p * o : rec.p;
    if (o > rec.p) r.fail("rank cap violated at p=" + detail::str(rec.p));
    if (!rec.ell.is_finite() || rec.ell.value() != expect)
      r.fail("p=" + detail::str(rec.p) + " ord=" + detail::str(o) + " ell=" + rec.ell.to_string());
  }
  return r;
}

/// nu_p(a_{nt}) = nu_p(a_n) whenever nu_p(a_n) > 0; only for F with zero
/// linear coefficient.
inline SuiteResult suite_rigid(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult r{"orbit.rigid_divisibility", F.to_string(), true, 0, {}};
  if (!F.zero_linear_term()) {
    r.detail = "skipped: linear coefficient is nonzero";
    return r;
  }
  const u64 n_max = std::min<u64>(60, cfg.bound);
  for (u64 p : sieve_primes(50)) {
    if (!ord_direct(F, p).is_finite()) continue;
    for (u64 n = 1; n <= n_max; ++n) {
      const Valuation base = nu_p_of_a(F, n, p, 4);
      if (base.value == 0) continue;
      for (u64 t = 2; t <= 5; ++t) {
        ++r.checks;
        const Valuation v = nu_p_of_a(F, n * t, p, 4);
        if (!(v == base))
          r.fail("p=" + detail::str(p) + " n=" + detail::str(n) + " t=" + detail::str(t) + ": " +
                 detail::str(v.value) + " vs " + detail::str(base.value));
      }
    }
  }
  return r;
}

/// ord(p) = p implies F injective mod p; record consistency; SieveBound and
/// Exact scans agree on every record with l(p) <= x.
inline std::vector<SuiteResult> prime_suites(const IntPolynomial& F, const VerifyConfig& cfg) {
  SuiteResult inj{"prime.anomalous_implies_injective", F.to_string(), true, 0, {}};
  SuiteResult cons{"prime.record_consistency", F.to_string(), true, 0, {}};
  SuiteResult pol{"prime.sieve_bound_matches_exact", F.to_string(), true, 0, {}};
  const auto exact = scan_primes(F, 2, cfg.prime_limit(), ScanPolicy::exact(), cfg.threads);
  for (const auto& rec : exact) {
    ++inj.checks;
    ++cons.checks;
    if (rec.anomalous && !rec.injective) inj.fail("p=" + detail::str(rec.p) + " anomalous but not injective");
    if (rec.anomalous && !rec.pretty) cons.fail("p=" + detail::str(rec.p) + " anomalous but not pretty");
    if (rec.pretty != rec.ord.is_finite()) cons.fail("p=" + detail::str(rec.p) + " pretty flag");
  }
  const auto converse = injective_not_anomalous(exact);
  inj.detail = "converse failures (injective, ord != p): " + detail::str(converse.size());
  const u64 x = cfg.density_x();
  const auto capped = scan_primes(F, 2, x, ScanPolicy::sieve_bound(x), cfg.threads);
  const auto small = small_ell_primes(F, x, cfg.threads);
  std::size_t si = 0;
  for (std::size_t i = 0; i < capped.size(); ++i) {
    const auto& e = exact[i];
    const auto& c = capped[i];
    if (e.ell.is_finite() && e.ell.value() <= x) {
      ++pol.checks;
      if (!(e == c)) pol.fail("records differ at p=" + detail::str(e.p));
      if (si >= small.size() || small[si].p != e.p || small[si].ell != e.ell.value())
        pol.fail("small_ell_primes misses p=" + detail::str(e.p));
      ++si;
    }
  }
  if (si != small.size()) pol.fail("small_ell_primes has extra entries");
  return {inj, cons, pol};
}

inline std::vector<SuiteResult> density_suites(const IntPolynomial& F, const VerifyConfig& cfg) {
  const u64 x = cfg.density_x();
  SuiteResult eq{"density.oracle_sieve_equivalence", F.to_string(), true, 0, {}};
  SuiteResult fl{"density.floor_identity", F.to_string(), true, 0, {}};
  SuiteResult ie{"density.inclusion_exclusion", F.to_string(), true, 0, {}};
  SuiteResult ne{"density.nonemptiness_consistency", F.to_string(), true, 0, {}};
  SuiteResult mono{"density.series_truncation_gauge", F.to_string(), true, 0, {}};
  SuiteResult sub{"density.A_subset_B", F.to_string(), true, 0, {}};
  SuiteResult one{"density.k1_collapse", F.to_string(), true, 0, {}};
  SuiteResult yk{"density.Yk_lower_bound", F.to_string(), true, 0, {}};

  OrdCache cache(F);
  const auto gcds = index_gcd_table(F, GForm::identity(), x, cfg.threads);
  for (u64 k = 1; k <= 6; ++k) {
    const GcdQuery q(F, k);
    const Counts oracle = counts_from_gcds(gcds, q, x);
    const Counts sieve = count_sieve(q, x, cache, cfg.threads);
    ++eq.checks;
    if (!(oracle == sieve))
      eq.fail("k=" + detail::str(k) + " oracle " + detail::str(oracle.A) + "/" + detail::str(oracle.B) +
              " sieve " + detail::str(sieve.A) + "/" + detail::str(sieve.B));
    const FloorIdentity f = floor_identity_B(q, x, cache, cfg.threads);
    ++fl.checks;
    if (f.value != static_cast<i64>(oracle.B))
      fl.fail("k=" + detail::str(k) + " floor " + std::to_string(f.value) + " count_B " + detail::str(oracle.B));
    ++ie.checks;
    const i64 incl = inclusion_exclusion_A(q, x, cache, cfg.threads);
    if (incl != static_cast<i64>(oracle.A))
      ie.fail("k=" + detail::str(k) + " sum " + std::to_string(incl) + " count_A " + detail::str(oracle.A));
    if (k == 1) {
      ++one.checks;
      if (oracle.A != oracle.B) one.fail("count_A != count_B for k=1");
    }
    for (u64 xx : {u64{100}, u64{1000}, x}) {
      if (xx > x) continue;
      const Counts c = counts_from_gcds(gcds, q, xx);
      const u64 y = y_k_lower_bound(q, xx, cache, cfg.threads);
      ++yk.checks;
      if (y > c.B) yk.fail("k=" + detail::str(k) + " x=" + detail::str(xx) + " Y_k > count_B");
      if (F.zero_linear_term() && a_nonempty(q, cache).holds() && y > c.A)
        yk.fail("k=" + detail::str(k) + " x=" + detail::str(xx) + " Y_k > count_A");
    }
  }
  for (u64 n = 1; n <= x; ++n) {
    for (u64 k = 1; k <= 6; ++k) {
      const auto v = classify_gcd(n, gcds[n], GcdQuery(F, k).with_k(k));
      ++sub.checks;
      if (v.in_A && !v.in_B) sub.fail("n=" + detail::str(n) + " k=" + detail::str(k));
    }
  }

  // nonemptiness against the direct search for a witness n <= 4 l(k)
  const u64 k_max = std::min<u64>(50, cfg.bound);
  for (u64 k = 1; k <= k_max; ++k) {
    const GcdQuery q(F, k);
    const EllValue lk = ell(F, k, cache);
    if (!lk.is_finite()) continue;
    const u64 top = 4 * lk.value();
    bool found_A = false, found_B = false;
    if (top <= 20'000) {
      for (u64 n = 1; n <= top && !(found_A && found_B); ++n) {
        const auto v = membership(q, n);
        found_A |= v.in_A;
        found_B |= v.in_B;
      }
    } else {
      const Counts c = count_sieve(q, top, cache, cfg.threads);
      found_A = c.A > 0;
      found_B = c.B > 0;
    }
    ne.checks += 2;
    if (a_nonempty(q, cache).holds() != found_A) ne.fail("a_nonempty disagrees at k=" + detail::str(k));
    if (b_nonempty(q, cache).holds() != found_B) ne.fail("b_nonempty disagrees at k=" + detail::str(k));
  }

  const u64 t0 = std::min<u64>(500, std::max<u64>(cfg.bound, 1));
  for (u64 k : {u64{1}, u64{2}, u64{5}}) {
    const GcdQuery q(F, k);
    auto checkpair = [&](auto series) {
      const SeriesTruncation a = series(q, t0, cache, cfg.threads);
      const SeriesTruncation b = series(q, 2 * t0, cache, cfg.threads);
      ++mono.checks;
      if (std::abs(b.value - a.value) > b.last_block + 1e-12)
        mono.fail("k=" + detail::str(k) + " |S(2T)-S(T)| exceeds last_block");
    };
    checkpair([](auto&&... a) { return series_density_B(a...); });
    checkpair([](auto&&... a) { return series_density_A(a...); });
  }
  return {eq, fl, ie, ne, mono, sub, one, yk};
}

/// Every suite for one polynomial.
inline std::vector<SuiteResult> run_lemma_suites(const IntPolynomial& F, const VerifyConfig& cfg) {
  require_wandering(F);
  std::vector<SuiteResult> out{suite_divisibility(F, cfg), suite_part1(F, cfg), suite_part2(F, cfg),
                               suite_part3(F, cfg),       suite_part4(F, cfg), suite_part5(F, cfg),
                               suite_rigid(F, cfg)};
  for (auto& s : prime_suites(F, cfg)) out.push_back(std::move(s));
  for (auto& s : density_suites(F, cfg)) out.push_back(std::move(s));
  return out;
}

}  // namespace dyngcd
