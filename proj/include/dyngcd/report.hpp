#pragma once

// Report assembly and the on-disk formats: scan CSV, checkpoint CSV and the
// JSON documents for density, anomalous-prime and linear-form runs.

#include <json.hpp>

#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "dyngcd/density.hpp"
#include "dyngcd/prime_lab.hpp"

namespace dyngcd {

using Json = nlohmann::json;

inline void write_scan_csv(std::ostream& os, std::span<const PrimeRecord> records) {
  os << "p,ord,pretty,anomalous,injective,ell\n";
  for (const auto& r : records)
    os << r.p << ',' << r.ord.encode() << ',' << int(r.pretty) << ',' << int(r.anomalous) << ','
       << int(r.injective) << ',' << r.ell.encode() << '\n';
}

inline Json scan_json(std::span<const PrimeRecord> records) {
  Json rows = Json::array();
  for (const auto& r : records)
    rows.push_back({{"p", r.p},
                    {"ord", r.ord.encode()},
                    {"pretty", r.pretty},
                    {"anomalous", r.anomalous},
                    {"injective", r.injective},
                    {"ell", r.ell.encode()}});
  return rows;
}

inline Json to_json(const AnomalousReport& r) {
  return {{"poly", r.poly},
          {"x", r.x},
          {"anomalous_primes", r.anomalous_primes},
          {"f0_divisors", r.f0_divisors},
          {"partial_sum", r.partial_sum},
          {"verdict", r.verdict}};
}

inline Json to_json(const SeriesTruncation& s) {
  return {{"T", s.T}, {"value", s.value}, {"last_block", s.last_block}};
}

inline Json verdict_json(const NonemptyVerdict& v) {
  if (v.state == NonemptyVerdict::State::Unknown) return nullptr;
  return v.holds();
}

enum class CountMethod { Oracle, Sieve, Both };

inline CountMethod parse_method(const std::string& s) {
  if (s == "oracle") return CountMethod::Oracle;
  if (s == "sieve") return CountMethod::Sieve;
  if (s == "both") return CountMethod::Both;
  throw std::domain_error("method must be oracle, sieve or both, got '" + s + "'");
}

struct DensityReport {
  std::string poly;
  u64 k = 1;
  GForm g_form = GForm::identity();
  u64 x = 0;
  std::optional<Counts> oracle;
  std::optional<Counts> sieve;
  FloorIdentity floor_identity;
  std::vector<SeriesTruncation> series;    // B-series
  std::vector<SeriesTruncation> series_A;
  NonemptyVerdict nonempty_A;
  NonemptyVerdict nonempty_B;

  Counts counts() const { return sieve ? *sieve : *oracle; }
};

/// Everything known about (F, x, k) at bound x. Series truncations at
/// T/4, T/2, T. With CountMethod::Both the two counters and the floor
/// identity must agree; a disagreement throws InvariantViolation.
inline DensityReport build_density_report(const GcdQuery& q, u64 x, CountMethod method, u64 T,
                                          OrdCache& cache, unsigned threads = 1) {
  q.require_identity("density report");
  DensityReport r;
  r.poly = q.F().to_string();
  r.k = q.k();
  r.g_form = q.G();
  r.x = x;
  if (method != CountMethod::Sieve) r.oracle = count_oracle(q, x, threads);
  if (method != CountMethod::Oracle) r.sieve = count_sieve(q, x, cache, threads);
  r.floor_identity = floor_identity_B(q, x, cache, threads);
  if (method == CountMethod::Both) {
    if (!(*r.oracle == *r.sieve))
      throw InvariantViolation("oracle/sieve mismatch: oracle A=" + std::to_string(r.oracle->A) +
                               " B=" + std::to_string(r.oracle->B) + ", sieve A=" +
                               std::to_string(r.sieve->A) + " B=" + std::to_string(r.sieve->B));
    if (r.floor_identity.value != static_cast<i64>(r.sieve->B))
      throw InvariantViolation("floor identity " + std::to_string(r.floor_identity.value) +
                               " != count_B " + std::to_string(r.sieve->B));
  }
  std::vector<u64> cuts;
  for (u64 t : {T / 4, T / 2, T})
    if (t >= 1 && (cuts.empty() || cuts.back() != t)) cuts.push_back(t);
  for (u64 t : cuts) {
    r.series.push_back(series_density_B(q, t, cache, threads));
    r.series_A.push_back(series_density_A(q, t, cache, threads));
  }
  r.nonempty_A = a_nonempty(q, cache);
  r.nonempty_B = b_nonempty(q, cache);
  return r;
}

inline Json to_json(const DensityReport& r) {
  Json j;
  const Counts c = r.counts();
  j["poly"] = r.poly;
  j["k"] = r.k;
  if (r.g_form.is_identity()) {
    j["g_form"] = "x";
  } else {
    j["g_form"] = {{"form", "a*x+b"}, {"a", r.g_form.a()}, {"b", r.g_form.b()}};
  }
  j["x"] = r.x;
  j["count_A"] = c.A;
  j["count_B"] = c.B;
  j["floor_identity"] = r.floor_identity.value;
  j["series"] = Json::array();
  for (const auto& s : r.series) j["series"].push_back(to_json(s));
  j["series_A"] = Json::array();
  for (const auto& s : r.series_A) j["series_A"].push_back(to_json(s));
  j["nonempty_A"] = verdict_json(r.nonempty_A);
  j["nonempty_B"] = verdict_json(r.nonempty_B);
  j["witness"] = r.nonempty_A.witness ? Json(*r.nonempty_A.witness) : Json(nullptr);
  return j;
}

struct Checkpoint {
  u64 x = 0;
  Counts counts;
};

inline std::vector<Checkpoint> sieve_checkpoints(const GcdQuery& q, std::span<const u64> xs,
                                                 OrdCache& cache, unsigned threads = 1) {
  std::vector<Checkpoint> out;
  if (xs.empty()) return out;
  const u64 top = *std::max_element(xs.begin(), xs.end());
  const IndexSieve s = sieve_indices(q, top, cache, threads);
  for (u64 x : xs) out.push_back({x, s.counts_up_to(x)});
  return out;
}

inline std::string format_ratio(u64 count, u64 x) {
  std::ostringstream os;
  os << std::setprecision(10) << (x == 0 ? 0.0 : double(count) / double(x));
  return os.str();
}

inline void write_checkpoint_csv(std::ostream& os, std::span<const Checkpoint> rows) {
  os << "x,count_A,count_B,ratio_A,ratio_B\n";
  for (const auto& r : rows)
    os << r.x << ',' << r.counts.A << ',' << r.counts.B << ',' << format_ratio(r.counts.A, r.x)
       << ',' << format_ratio(r.counts.B, r.x) << '\n';
}

inline Json to_json(const Theorem3Report& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"z", row.z},
                    {"delta_z", row.delta_marked},
                    {"delta_z_exact", row.delta_exact ? Json(row.delta_exact->str()) : Json(nullptr)},
                    {"residual", row.residual},
                    {"lower_bound", row.lower_bound},
                    {"holds", row.holds}});
  return {{"poly", r.poly},
          {"g_form", {{"form", "a*x+b"}, {"a", r.a}, {"b", r.b}}},
          {"x", r.x},
          {"coprime_count", r.coprime_count},
          {"density", r.empirical_density},
          {"checkpoints", rows},
          {"all_hold", r.all_hold}};
}

}  // namespace dyngcd
