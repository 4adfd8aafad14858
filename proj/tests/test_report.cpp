#include <gtest/gtest.h>

#include <sstream>

#include "dyngcd/report.hpp"

using namespace dyngcd;

namespace {
const IntPolynomial kF = parse_polynomial("x^2+1");
}

TEST(ScanCsv, Format) {
  std::ostringstream os;
  write_scan_csv(os, scan_primes(kF, 2, 13));
  EXPECT_EQ(os.str(),
            "p,ord,pretty,anomalous,injective,ell\n"
            "2,2,1,1,1,2\n"
            "3,0,0,0,0,0\n"
            "5,3,1,0,0,15\n"
            "7,0,0,0,0,0\n"
            "11,0,0,0,0,0\n"
            "13,4,1,0,0,52\n");
}

TEST(DensityReport, Fields) {
  OrdCache cache(kF);
  const auto r = build_density_report(GcdQuery(kF, 1), 100, CountMethod::Both, 100, cache);
  const Json j = to_json(r);
  EXPECT_EQ(j["count_A"], 47);
  EXPECT_EQ(j["count_B"], 47);
  EXPECT_EQ(j["floor_identity"], 47);
  EXPECT_EQ(j["g_form"], "x");
  EXPECT_EQ(j["nonempty_A"], true);
  EXPECT_EQ(j["series"].size(), 3u);
  EXPECT_EQ(j["series"][2]["T"], 100);

  const auto none = build_density_report(GcdQuery(kF, 3), 1000, CountMethod::Sieve, 100, cache);
  const Json k = to_json(none);
  EXPECT_EQ(k["count_A"], 0);
  EXPECT_EQ(k["nonempty_A"], false);
  EXPECT_TRUE(k["witness"].is_null());
}

TEST(DensityReport, MethodsAgree) {
  OrdCache cache(kF);
  for (u64 k = 1; k <= 6; ++k) {
    const GcdQuery q(kF, k);
    const auto a = build_density_report(q, 2000, CountMethod::Oracle, 50, cache);
    const auto b = build_density_report(q, 2000, CountMethod::Sieve, 50, cache);
    EXPECT_EQ(a.counts(), b.counts());
    EXPECT_NO_THROW(build_density_report(q, 2000, CountMethod::Both, 50, cache));
  }
  EXPECT_THROW(parse_method("fast"), std::domain_error);
}

TEST(JsonRoundTrip, ByteIdentical) {
  OrdCache cache(kF);
  std::vector<Json> docs;
  for (u64 k : {1ull, 2ull, 3ull, 5ull})
    docs.push_back(to_json(build_density_report(GcdQuery(kF, k), 500, CountMethod::Both, 200, cache)));
  const auto rs = scan_primes(kF, 2, 3000);
  docs.push_back(to_json(anomalous_report(kF, rs, 3000)));
  docs.push_back(scan_json(rs));
  const std::vector<u64> zs{2, 13, 50};
  docs.push_back(to_json(theorem3_report(GcdQuery(kF, 1, GForm::linear(2, 1)), 2000, zs, cache)));
  for (const auto& d : docs)
    for (int indent : {-1, 2}) {
      const std::string once = d.dump(indent);
      ASSERT_EQ(Json::parse(once).dump(indent), once);
    }
}

TEST(AnomalousJson, Fields) {
  const auto j = to_json(anomalous_report(kF, scan_primes(kF, 2, 2), 2));
  for (const char* key : {"poly", "x", "anomalous_primes", "f0_divisors", "partial_sum", "verdict"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["anomalous_primes"], Json::array({2}));
  EXPECT_EQ(j["partial_sum"], 0.5);
}

TEST(Checkpoints, MatchDirectCounts) {
  OrdCache cache(kF);
  const GcdQuery q(kF, 2);
  const std::vector<u64> xs{10, 100, 1000, 5000};
  const auto rows = sieve_checkpoints(q, xs, cache);
  ASSERT_EQ(rows.size(), xs.size());
  for (const auto& r : rows) EXPECT_EQ(r.counts, count_oracle(q, r.x));
  std::ostringstream os;
  write_checkpoint_csv(os, rows);
  EXPECT_EQ(os.str().substr(0, os.str().find('\n')), "x,count_A,count_B,ratio_A,ratio_B");
  EXPECT_NE(os.str().find("\n100,46,46,0.46,0.46\n"), std::string::npos);
}
