#pragma once

// Command-line front end. run_cli never calls exit(); it returns the process
// status so tests can drive it with string streams.

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dyngcd/density.hpp"
#include "dyngcd/ord_cache.hpp"
#include "dyngcd/orbit.hpp"
#include "dyngcd/polynomial.hpp"
#include "dyngcd/prime_lab.hpp"
#include "dyngcd/report.hpp"
#include "dyngcd/verify.hpp"

namespace dyngcd {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitInvalid = 2,
  kExitCacheMismatch = 3,
  kExitInvariant = 4,
};

inline constexpr u64 kOracleDefaultLimit = 20'000;

struct RunConfig {
  std::string poly;
  std::vector<std::string> polys;
  u64 n = 0;
  u64 k = 1;
  u64 x = 0;
  u64 T = 1000;
  u64 a = 0;
  u64 b = 0;
  u64 p_min = 2;
  u64 p_max = 0;
  u64 bound = 300;
  u64 tail_z = 100;
  double beta = 0.5;
  double eps = 0.0;
  double veps = 0.5;
  std::vector<u64> zs;
  std::vector<u64> xs;
  std::string method;
  std::string output;
  std::string cache_path;
  unsigned threads = 1;
};

namespace cli_detail {

/// --cache, else $DYNGCD_CACHE_DIR/ord_<coefficients>.csv, else none.
inline std::optional<std::string> cache_file(const RunConfig& cfg, const IntPolynomial& F) {
  if (!cfg.cache_path.empty()) return cfg.cache_path;
  const char* dir = std::getenv("DYNGCD_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return std::nullopt;
  std::string name = "ord_";
  for (char c : F.canonical()) name += c == ',' ? '_' : c == '-' ? 'm' : c;
  return (std::filesystem::path(dir) / (name + ".csv")).string();
}

/// Loaded on construction, merged and written back by save().
class CacheSession {
 public:
  CacheSession(const RunConfig& cfg, const IntPolynomial& F) : cache_(F), path_(cache_file(cfg, F)) {
    if (path_ && std::filesystem::exists(*path_)) cache_.merge(OrdCache::load(*path_, F));
  }

  OrdCache& cache() { return cache_; }

  void save() const {
    if (!path_) return;
    const auto parent = std::filesystem::path(*path_).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    cache_.save(*path_);
  }

 private:
  OrdCache cache_;
  std::optional<std::string> path_;
};

inline IntPolynomial wandering(const std::string& text) {
  IntPolynomial F = parse_polynomial(text);
  require_wandering(F);
  return F;
}

inline std::string fixed(double v, int digits = 7) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(digits) << v;
  return os.str();
}

inline const char* verdict_text(const NonemptyVerdict& v) {
  switch (v.state) {
    case NonemptyVerdict::State::True: return "true";
    case NonemptyVerdict::State::False: return "false";
    default: return "unknown";
  }
}

inline int cmd_ord(const RunConfig& cfg, std::ostream& out) {
  const IntPolynomial F = wandering(cfg.poly);
  if (cfg.n < 1) throw std::domain_error("--n must be >= 1");
  CacheSession session(cfg, F);
  const Rank r = ord_crt(F, cfg.n, session.cache());
  const EllValue l = ell(F, cfg.n, session.cache());
  out << "n=" << cfg.n << " ord=" << r.to_string() << " ell=" << l.to_string() << '\n';
  session.save();
  return kExitOk;
}

inline int cmd_scan(const RunConfig& cfg, std::ostream& out) {
  const IntPolynomial F = wandering(cfg.poly);
  if (cfg.p_max < cfg.p_min) throw std::domain_error("--pmax must be >= --pmin");
  CacheSession session(cfg, F);
  const auto records = scan_primes(F, cfg.p_min, cfg.p_max, ScanPolicy::exact(), cfg.threads);
  seed_cache(session.cache(), records);
  if (cfg.output == "json")
    out << scan_json(records).dump(2) << '\n';
  else
    write_scan_csv(out, records);
  session.save();
  return kExitOk;
}

inline int cmd_density(const RunConfig& cfg, std::ostream& out) {
  const IntPolynomial F = wandering(cfg.poly);
  const CountMethod method = cfg.method.empty()
                                 ? (cfg.x <= kOracleDefaultLimit ? CountMethod::Both : CountMethod::Sieve)
                                 : parse_method(cfg.method);
  CacheSession session(cfg, F);
  const GcdQuery q(F, cfg.k);
  if (cfg.output == "csv") {
    std::vector<u64> xs;
    for (u64 t = 10; t < cfg.x; t *= 10) xs.push_back(t);
    xs.push_back(cfg.x);
    const auto rows = sieve_checkpoints(q, xs, session.cache(), cfg.threads);
    write_checkpoint_csv(out, rows);
    session.save();
    return kExitOk;
  }
  const DensityReport r = build_density_report(q, cfg.x, method, cfg.T, session.cache(), cfg.threads);
  if (cfg.output == "table") {
    const Counts c = r.counts();
    out << "poly=" << r.poly << " k=" << r.k << " x=" << r.x << '\n'
        << "count_A=" << c.A << " count_B=" << c.B << " floor_identity=" << r.floor_identity.value << '\n'
        << "nonempty_A=" << verdict_text(r.nonempty_A) << " nonempty_B=" << verdict_text(r.nonempty_B)
        << '\n';
  } else {
    out << to_json(r).dump(2) << '\n';
  }
  session.save();
  return kExitOk;
}

inline int cmd_series(const RunConfig& cfg, std::ostream& out) {
  const IntPolynomial F = wandering(cfg.poly);
  if (cfg.T < 1) throw std::domain_error("--T must be >= 1");
  CacheSession session(cfg, F);
  const GcdQuery q(F, cfg.k);
  std::vector<u64> cuts;
  for (u64 t : {cfg.T / 4, cfg.T / 2, cfg.T})
    if (t >= 1 && (cuts.empty() || cuts.back() != t)) cuts.push_back(t);
  Json rows = Json::array();
  if (cfg.output != "json") out << "T,series_B,last_block_B,series_A,last_block_A\n";
  for (u64 t : cuts) {
    const auto sb = series_density_B(q, t, session.cache(), cfg.threads);
    const auto sa = series_density_A(q, t, session.cache(), cfg.threads);
    if (cfg.output == "json")
      rows.push_back({{"T", t}, {"B", to_json(sb)}, {"A", to_json(sa)}});
    else
      out << t << ',' << fixed(sb.value) << ',' << fixed(sb.last_block) << ',' << fixed(sa.value) << ','
          << fixed(sa.last_block) << '\n';
  }
  if (cfg.output == "json") out << Json{{"poly", F.to_string()}, {"k", cfg.k}, {"rows", rows}}.dump(2) << '\n';
  session.save();
  return kExitOk;
}

inline int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> texts = cfg.polys;
  if (texts.empty()) texts = {"x^2+1", "x^2+x+1", "x^3+x^2+1"};
  std::vector<IntPolynomial> polys;
  for (const auto& t : texts) polys.push_back(wandering(t));
  VerifyConfig vc;
  vc.bound = cfg.bound;
  vc.threads = cfg.threads;
  bool ok = true;
  for (const auto& F : polys)
    for (const auto& s : run_lemma_suites(F, vc)) {
      out << (s.passed ? "PASS " : "FAIL ") << s.name << " poly=" << s.poly << " checks=" << s.checks;
      if (!s.detail.empty()) out << " (" << s.detail << ')';
      out << '\n';
      ok = ok && s.passed;
    }
  return ok ? kExitOk : kExitInvariant;
}

inline int cmd_theorem3(const RunConfig& cfg, std::ostream& out) {
  const IntPolynomial F = wandering(cfg.poly);
  const GForm G = GForm::linear(cfg.a, cfg.b);
  CacheSession session(cfg, F);
  const GcdQuery q(F, 1, G);
  std::vector<u64> zs = cfg.zs;
  if (zs.empty()) zs = {13};
  const Theorem3Report r = theorem3_report(q, cfg.x, zs, session.cache(), cfg.threads);
  if (cfg.output == "json") {
    out << to_json(r).dump(2) << '\n';
  } else {
    out << "poly=" << r.poly << " G=" << G.describe() << " x=" << r.x << '\n'
        << "density=" << fixed(r.empirical_density, 6) << " coprime_count=" << r.coprime_count << '\n';
    for (const auto& row : r.rows) {
      out << "z=" << row.z << " delta_z=" << fixed(row.delta_marked, 6) << " delta_z_exact="
          << (row.delta_exact ? row.delta_exact->str() : std::string("n/a"))
          << " residual=" << fixed(row.residual) << " lower_bound=" << fixed(row.lower_bound)
          << " holds=" << (row.holds ? "yes" : "no") << '\n';
    }
  }
  session.save();
  return kExitOk;
}

inline int cmd_anomalous(const RunConfig& cfg, std::ostream& out) {
  const IntPolynomial F = wandering(cfg.poly);
  CacheSession session(cfg, F);
  const auto records = scan_primes(F, 2, cfg.x, ScanPolicy::exact(), cfg.threads);
  seed_cache(session.cache(), records);
  out << to_json(anomalous_report(F, records, cfg.x)).dump(2) << '\n';
  session.save();
  return kExitOk;
}

inline int cmd_diagnostics(const RunConfig& cfg, std::ostream& out) {
  const IntPolynomial F = wandering(cfg.poly);
  std::vector<u64> xs = cfg.xs;
  if (xs.empty()) xs = {1'000, 10'000, 100'000};
  std::sort(xs.begin(), xs.end());
  const u64 top = xs.back();
  const auto rows = q_beta_table(F, cfg.beta, xs);
  out << "# Q_beta beta=" << cfg.beta << " (flagged rows exceed C*x^beta, C from the first row)\n"
      << "x,count,envelope,flagged\n";
  for (const auto& r : rows) out << r.x << ',' << r.count << ',' << fixed(r.envelope, 3) << ',' << int(r.flagged) << '\n';

  CacheSession session(cfg, F);
  const auto records = scan_primes(F, 2, top, ScanPolicy::exact(), cfg.threads);
  seed_cache(session.cache(), records);
  out << "# pretty primes\nx,pretty_density,mertens_product,pretty_count\n";
  for (u64 x : xs) {
    const MertensProduct m = mertens_pretty_product(records, x);
    out << x << ',' << fixed(pretty_prime_density(records, x), 6) << ',' << fixed(m.value) << ','
        << m.pretty_count << '\n';
  }
  out << "# tail sums z=" << cfg.tail_z << " eps=" << cfg.eps << " veps=" << cfg.veps
      << "\nx,tail_sum,comparator\n";
  for (u64 x : xs) {
    const TailSum t = tail_partial_sum(records, cfg.tail_z, x, cfg.eps, cfg.veps);
    out << x << ',' << fixed(t.sum) << ',' << fixed(t.comparator) << '\n';
  }
  session.save();
  return kExitOk;
}

}  // namespace cli_detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Ranks of apparition and gcd densities for polynomial orbits of 0"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_common = [&](CLI::App* sub, bool needs_poly = true) {
    if (needs_poly) sub->add_option("--poly", cfg.poly, "polynomial, e.g. x^2+1 or 1,0,1")->required();
    sub->add_option("--threads", cfg.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--cache", cfg.cache_path, "ord cache CSV (default: $DYNGCD_CACHE_DIR)");
  };
  const auto outputs = CLI::IsMember({"csv", "json", "table"});

  auto* ord = app.add_subcommand("ord", "rank of apparition and ell of n");
  add_common(ord);
  ord->add_option("--n", cfg.n, "modulus")->required();

  auto* scan = app.add_subcommand("scan", "classify primes in [pmin, pmax]");
  add_common(scan);
  scan->add_option("--pmin", cfg.p_min, "smallest prime");
  scan->add_option("--pmax", cfg.p_max, "largest prime")->required();
  scan->add_option("--output", cfg.output, "csv or json")->check(outputs);

  auto* density = app.add_subcommand("density", "counts of A_k and B_k up to x");
  add_common(density);
  density->add_option("--k", cfg.k, "exact gcd value")->check(CLI::PositiveNumber);
  density->add_option("--x", cfg.x, "index bound")->required();
  density->add_option("--method", cfg.method, "oracle, sieve or both")
      ->check(CLI::IsMember({"oracle", "sieve", "both"}));
  density->add_option("--T", cfg.T, "series truncation");
  density->add_option("--output", cfg.output, "json, table or csv (checkpoints)")->check(outputs);

  auto* series = app.add_subcommand("series", "truncated density series at T/4, T/2, T");
  add_common(series);
  series->add_option("--k", cfg.k, "exact gcd value")->check(CLI::PositiveNumber);
  series->add_option("--T", cfg.T, "truncation")->required();
  series->add_option("--output", cfg.output, "csv or json")->check(outputs);

  auto* verify = app.add_subcommand("verify", "run the property suites");
  add_common(verify, false);
  verify->add_option("--poly", cfg.polys, "polynomials (repeatable)");
  verify->add_option("--bound", cfg.bound, "suite size");

  auto* theorem3 = app.add_subcommand("theorem3", "gcd(a n + b, a_n) = 1 density check");
  add_common(theorem3);
  theorem3->add_option("--a", cfg.a, "linear coefficient")->required();
  theorem3->add_option("--b", cfg.b, "constant")->required();
  theorem3->add_option("--x", cfg.x, "index bound")->required();
  theorem3->add_option("--z", cfg.zs, "prime cutoffs (repeatable)");
  theorem3->add_option("--output", cfg.output, "table or json")->check(outputs);

  auto* anomalous = app.add_subcommand("anomalous", "primes p <= x with p | a_p");
  add_common(anomalous);
  anomalous->add_option("--x", cfg.x, "prime bound")->required();

  auto* diagnostics = app.add_subcommand("diagnostics", "Q_beta, pretty-prime and tail tables");
  add_common(diagnostics);
  diagnostics->add_option("--beta", cfg.beta, "rank exponent");
  diagnostics->add_option("--x", cfg.xs, "bounds (repeatable)");
  diagnostics->add_option("--z", cfg.tail_z, "tail start");
  diagnostics->add_option("--eps", cfg.eps, "log exponent");
  diagnostics->add_option("--veps", cfg.veps, "rank exponent, > eps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitInvalid;
  }

  try {
    if (*ord) return cli_detail::cmd_ord(cfg, out);
    if (*scan) return cli_detail::cmd_scan(cfg, out);
    if (*density) return cli_detail::cmd_density(cfg, out);
    if (*series) return cli_detail::cmd_series(cfg, out);
    if (*verify) return cli_detail::cmd_verify(cfg, out);
    if (*theorem3) return cli_detail::cmd_theorem3(cfg, out);
    if (*anomalous) return cli_detail::cmd_anomalous(cfg, out);
    if (*diagnostics) return cli_detail::cmd_diagnostics(cfg, out);
  } catch (const CacheMismatch& e) {
    err << "error: " << e.what() << '\n';
    return kExitCacheMismatch;
  } catch (const CacheFormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitCacheMismatch;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitInvalid;
}

}  // namespace dyngcd
