#include <gtest/gtest.h>

#include <regex>

#include "concordia/report.hpp"

namespace concordia {
namespace {

TEST(BuildReport, Kstar) {
  const auto r = build_report("Kstar");
  EXPECT_EQ(r.knot, "Kstar");
  EXPECT_EQ(r.homology_invariants, (std::vector<std::int64_t>{575, 575}));
  EXPECT_EQ(r.gz_lower, 1);
  ASSERT_TRUE(r.gzc);
  EXPECT_EQ(r.gzc->prime, 5);
  EXPECT_EQ(r.gzc->bound, 1);
  EXPECT_EQ(r.dbar_table.size(), 24u);
  for (const auto& e : r.dbar_table) EXPECT_EQ(e.value, dbar_sum(r.cover, e.element));
  EXPECT_EQ(r.annotations.size(), 2u);
}

TEST(BuildReport, Unknot) {
  const auto r = build_report("U");
  EXPECT_EQ(r.gz_lower, 0);
  EXPECT_FALSE(r.gzc);
  EXPECT_TRUE(r.gzc_by_prime.empty());
  EXPECT_TRUE(r.dbar_table.empty());
  EXPECT_TRUE(r.homology_invariants.empty());
}

TEST(BuildReport, ThreeKstarsAtFive) {
  const auto r = build_report("Kstar # Kstar # Kstar", {5});
  ASSERT_TRUE(r.gzc);
  EXPECT_EQ(r.gzc->bound, 3);
  EXPECT_EQ(r.gz_lower, 3);
}

TEST(BuildReport, ExplicitIneligiblePrimeIsHypothesisNotMet) {
  try {
    build_report("T(2,23)", {5});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::hypothesis_not_met);
  }
}

TEST(BuildReport, BestPrimeWinsAndTiesGoToSmallest) {
  // 3-part (Z/9)^2 from a mirror pair is fully null; 7-part (Z/49)^2 is not.
  const auto r = build_report("T(2,9) # -T(2,9) # T(2,49) # T(2,49)");
  ASSERT_EQ(r.gzc_by_prime.size(), 2u);
  EXPECT_EQ(r.gzc_by_prime[0].prime, 3);
  EXPECT_EQ(r.gzc_by_prime[0].bound, 0);
  EXPECT_EQ(r.gzc_by_prime[1].prime, 7);
  ASSERT_TRUE(r.gzc);
  EXPECT_EQ(*r.gzc, std::max(r.gzc_by_prime[0], r.gzc_by_prime[1], [](const GzcBound& a, const GzcBound& b) {
    return a.bound < b.bound;
  }));
  const auto tie = build_report("T(2,9) # -T(2,9) # T(2,49) # -T(2,49)");
  ASSERT_TRUE(tie.gzc);
  EXPECT_EQ(tie.gzc->prime, 3);
}

TEST(ReportJson, KeysInDocumentOrder) {
  const auto doc = to_json(build_report("Kstar"));
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"knot", "cover", "homology_invariants", "gz_lower", "gzc", "gzc_by_prime",
                                            "dbar_table", "annotations"}));
  EXPECT_EQ(doc["gzc"]["p"], 5);
  EXPECT_EQ(doc["gzc"]["bound"], 1);
  EXPECT_EQ(doc["gzc"]["null_rank"], 0);
}

TEST(ReportJson, RationalsAreFractionStrings) {
  const auto doc = to_json(build_report("Kstar"));
  const std::regex fraction("-?[0-9]+/[1-9][0-9]*");
  for (const auto& row : doc["dbar_table"]) {
    ASSERT_TRUE(row["value"].is_string());
    EXPECT_TRUE(std::regex_match(row["value"].get<std::string>(), fraction)) << row["value"];
  }
  EXPECT_EQ(to_fraction_string(Rational(8)), "8/1");
  EXPECT_EQ(to_fraction_string(Rational(-1, 6)), "-1/6");
  EXPECT_EQ(parse_fraction("-1/6"), Rational(-1, 6));
}

TEST(ReportJson, RoundTripsLosslessly) {
  for (const char* text : {"Kstar", "U", "T(2,3) # C(2,9;V[2,1,0])", "Kstar # -Kstar", "T(2,9) # -T(2,9)"}) {
    const auto r = build_report(text);
    const auto doc = to_json(r);
    const auto back = report_from_json(nlohmann::ordered_json::parse(doc.dump()));
    EXPECT_EQ(back, r) << text;
    EXPECT_EQ(to_json(back).dump(), doc.dump()) << text;
  }
}

TEST(ReportJson, ByteStableAcrossRuns) {
  EXPECT_EQ(to_json(build_report("Kstar # Kstar")).dump(2), to_json(build_report("Kstar # Kstar")).dump(2));
}

TEST(ReportJson, MalformedDocumentIsInvalidArgument) {
  try {
    report_from_json(nlohmann::ordered_json::parse(R"({"knot": "U"})"));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_argument);
  }
}

}  // namespace
}  // namespace concordia
