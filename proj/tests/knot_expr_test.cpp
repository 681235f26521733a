#include <gtest/gtest.h>

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "concordia/knot_expr.hpp"
#include "knot_corpus.hpp"

namespace concordia {
namespace {

using K = KnotExpr::Kind;
using testing::corpus;
using testing::random_expr;

TEST(Parse, KstarDefinition) {
  const auto e = parse("C(2,25;D) # -C(2,23;D) # -T(2,25) # T(2,23)");
  EXPECT_EQ(e, KnotExpr::kstar_expansion());
  ASSERT_EQ(e.kind(), K::sum);
  ASSERT_EQ(e.children().size(), 4u);
  EXPECT_EQ(e.children()[0].kind(), K::cable);
  EXPECT_EQ(e.children()[0].value(), 25);
  EXPECT_EQ(e.children()[0].child(), KnotExpr::whitehead(4, true));
  EXPECT_EQ(e.children()[1].kind(), K::mirror);
  EXPECT_EQ(e.children()[3], KnotExpr::torus(23));
}

TEST(Parse, SingleTorusNode) {
  const auto e = parse("T(2,3)");
  EXPECT_EQ(e.kind(), K::torus);
  EXPECT_EQ(e.value(), 3);
  EXPECT_TRUE(e.children().empty());
}

TEST(Parse, WhitespaceInsensitive) {
  EXPECT_EQ(parse("  C ( 2 , 25 ; D )#-T(2,25)\n# thin( -4 ) # V[ 1 , 0 ]"),
            parse("C(2,25;D) # -T(2,25) # thin(-4) # V[1,0]"));
}

TEST(Parse, DIsSpelledWhiteheadFour) {
  const auto d = parse("D");
  EXPECT_EQ(d.kind(), K::whitehead);
  EXPECT_EQ(d.value(), 4);
  EXPECT_TRUE(d.spelled_d());
  EXPECT_EQ(print(d), "D");
  EXPECT_EQ(print(parse("WhD^4")), "WhD^4");
}

struct BadInput {
  std::string text;
  errc code;
  std::size_t line;
  std::size_t column;
};

TEST(Parse, ErrorsCarryCodeAndPosition) {
  const std::vector<BadInput> cases{
      {"T(2,4)", errc::semantic_error, 1, 5},
      {"C(2,8;U)", errc::semantic_error, 1, 5},
      {"T(2,1)", errc::semantic_error, 1, 5},
      {"T(3,5)", errc::unsupported_feature, 1, 3},
      {"C(5,3;U)", errc::unsupported_feature, 1, 3},
      {"T(2,3", errc::parse_error, 1, 6},
      {"T(2,3) #", errc::parse_error, 1, 9},
      {"U U", errc::parse_error, 1, 3},
      {"Foo", errc::parse_error, 1, 1},
      {"T(2,3) #\n  Q", errc::parse_error, 2, 3},
      {"thin(-3)", errc::semantic_error, 1, 6},
      {"V[1,2,0]", errc::semantic_error, 1, 3},
      {"WhD^0", errc::semantic_error, 1, 5},
      {"", errc::parse_error, 1, 1},
      {"T(2,99999999999999999999)", errc::semantic_error, 1, 5},
  };
  for (const auto& c : cases) {
    try {
      parse(c.text);
      ADD_FAILURE() << "accepted '" << c.text << "'";
    } catch (const parse_error& e) {
      EXPECT_EQ(e.code(), c.code) << c.text << ": " << e.what();
      EXPECT_EQ(e.where().line, c.line) << c.text << ": " << e.what();
      EXPECT_EQ(e.where().column, c.column) << c.text << ": " << e.what();
    }
  }
}

TEST(Parse, FactoriesRejectBadValues) {
  const std::vector<std::pair<std::function<void()>, errc>> cases{
      {[] { KnotExpr::torus(4); }, errc::semantic_error},
      {[] { KnotExpr::cable(2, KnotExpr::unknot()); }, errc::semantic_error},
      {[] { KnotExpr::whitehead(0); }, errc::semantic_error},
      {[] { KnotExpr::sum({KnotExpr::unknot()}); }, errc::invalid_argument},
  };
  for (const auto& [build, code] : cases) {
    try {
      build();
      ADD_FAILURE();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), code) << e.what();
    }
  }
}

TEST(Parse, PositionsAreRecorded) {
  const auto e = parse("U #\n  -T(2,3)");
  EXPECT_EQ(e.children()[1].pos().line, 2u);
  EXPECT_EQ(e.children()[1].pos().column, 3u);
  EXPECT_EQ(e.children()[1].child().pos().column, 4u);
}

TEST(RoundTrip, PrintParseIsIdentityOnCorpus) {
  ASSERT_EQ(corpus().size(), 20u);
  for (const auto& text : corpus()) EXPECT_EQ(print(parse(text)), text);
}

TEST(RoundTrip, ParsePrintIsIdentityOnRandomTrees) {
  std::mt19937_64 rng(51);
  for (int t = 0; t < 1000; ++t) {
    const auto e = random_expr(rng, 4);
    const auto text = print(e);
    EXPECT_EQ(parse(text), e) << text;
  }
}

}  // namespace
}  // namespace concordia
