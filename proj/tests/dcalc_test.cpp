#include <gtest/gtest.h>

#include <random>

#include "concordia/dcalc.hpp"
#include "concordia/oracle_suites.hpp"

namespace concordia {
namespace {

SurgeryPiece kstar_piece(int sign, std::int64_t n) { return SurgeryPiece(sign, n, vseq_thin(-16)); }

// V_i of T(2,2k+1) from its Alexander polynomial: with symmetrized
// coefficients a_j = (-1)^(k-j) for |j| <= k, V_i = sum_{j>=1} j * a_{i+j}.
std::vector<std::int64_t> torus_vseq_from_alexander(std::int64_t k) {
  auto a = [k](std::int64_t j) -> std::int64_t { return j > k ? 0 : ((k - j) % 2 == 0 ? 1 : -1); };
  std::vector<std::int64_t> out;
  for (std::int64_t i = 0;; ++i) {
    std::int64_t v = 0;
    for (std::int64_t j = 1; i + j <= k; ++j) v += j * a(i + j);
    out.push_back(v);
    if (v == 0) break;
  }
  return out;
}

TEST(VSequence, ThinExamples) {
  const auto v = vseq_thin(-16);
  EXPECT_EQ(v[0], 4);
  EXPECT_EQ(v[5], 2);
  for (std::int64_t i = 8; i < 40; ++i) EXPECT_EQ(v[i], 0);
  EXPECT_EQ(v.values(), (std::vector<std::int64_t>{4, 4, 3, 3, 2, 2, 1, 1, 0}));
  EXPECT_TRUE(vseq_thin(0).is_zero());
  EXPECT_TRUE(vseq_thin(8).is_zero());
}

TEST(VSequence, OddSignatureRejected) {
  try {
    vseq_thin(-3);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::invalid_argument);
  }
}

TEST(VSequence, ThinMatchesTorusKnotAlexanderPolynomial) {
  for (std::int64_t k = 0; k <= 30; ++k) {
    EXPECT_EQ(vseq_thin(-2 * k).values(), torus_vseq_from_alexander(k)) << "k=" << k;
  }
}

TEST(VSequence, FromValuesValidates) {
  EXPECT_NO_THROW(VSequence::from_values({2, 1, 1, 0}));
  for (const auto& bad : std::vector<std::vector<std::int64_t>>{{}, {1}, {2, 0}, {0, 1, 0}, {1, 2, 1, 0}, {-1, 0}}) {
    try {
      VSequence::from_values(bad);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::invalid_argument);
    }
  }
}

TEST(DLens, Examples) {
  EXPECT_EQ(d_lens(25, 0), Rational(6));
  EXPECT_EQ(d_lens(1, 0), Rational(0));
  EXPECT_EQ(d_lens(25, 5), Rational(2));
  EXPECT_EQ(d_lens(25, 10), Rational(0));
  EXPECT_EQ(d_lens(3, 1), Rational(-1, 6));
  for (std::int64_t i : {-1, 25}) {
    try {
      d_lens(25, i);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::invalid_argument);
    }
  }
}

TEST(DSurgery, Examples) {
  EXPECT_EQ(d_surgery(kstar_piece(1, 25), 5), Rational(-2));
  EXPECT_EQ(d_surgery(SurgeryPiece(-1, 25), 10), Rational(0));
  for (std::int64_t n : {1, 3, 23, 25, 99}) {
    for (std::int64_t i = 0; i < n; ++i) EXPECT_EQ(d_surgery(SurgeryPiece(1, n), i), d_lens(n, i));
  }
}

TEST(DbarPiece, KstarPieces) {
  const auto plus25 = kstar_piece(1, 25);
  for (std::int64_t i : {5, 20}) EXPECT_EQ(dbar_piece(plus25, i), Rational(0));
  for (std::int64_t i : {10, 15}) EXPECT_EQ(dbar_piece(plus25, i), Rational(2));
  const SurgeryPiece minus25(-1, 25);
  for (std::int64_t j : {5, 20}) EXPECT_EQ(dbar_piece(minus25, j), Rational(4));
  for (std::int64_t j : {10, 15}) EXPECT_EQ(dbar_piece(minus25, j), Rational(6));
}

CoverDescription kstar_cover() {
  return CoverDescription({kstar_piece(1, 25), kstar_piece(-1, 23), SurgeryPiece(-1, 25), SurgeryPiece(1, 23)});
}

TEST(DbarSum, Examples) {
  const auto c = kstar_cover();
  const auto g = c.group();
  EXPECT_EQ(dbar_sum(c, g.element({5, 0, 0, 0})), Rational(0));
  EXPECT_EQ(dbar_sum(c, g.zero()), Rational(0));
  EXPECT_EQ(dbar_sum(c, g.element({10, 0, 10, 0})), Rational(8));
  try {
    dbar_sum(c, GroupElement{{1, 2}});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), errc::group_mismatch);
  }
}

TEST(Cover, UnitPiecesHaveNoCoordinate) {
  const CoverDescription c({SurgeryPiece(1, 1), SurgeryPiece(-1, 3), SurgeryPiece(1, 1), SurgeryPiece(1, 5)});
  EXPECT_EQ(c.group().cyclic_orders(), (std::vector<std::int64_t>{3, 5}));
  const auto coords = c.piece_coordinates();
  EXPECT_FALSE(coords[0]);
  EXPECT_EQ(coords[1], std::optional<std::size_t>(0));
  EXPECT_EQ(coords[3], std::optional<std::size_t>(1));
}

TEST(SurgeryPiece, EvenOrNonPositiveCoefficientRejected) {
  for (std::int64_t n : {0, 2, -3}) {
    try {
      SurgeryPiece(1, n);
      FAIL();
    } catch (const error& e) {
      EXPECT_EQ(e.code(), errc::invalid_argument);
    }
  }
}

TEST(DcalcProperty, LensSymmetry) {
  for (std::int64_t n = 1; n <= 99; n += 2) {
    for (std::int64_t i = 1; i < n; ++i) ASSERT_EQ(d_lens(n, i), d_lens(n, n - i)) << n << "," << i;
  }
}

TEST(DcalcProperty, DbarVanishesAtSpinAndFlipsWithSign) {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 300; ++t) {
    const std::int64_t n = 1 + 2 * static_cast<std::int64_t>(rng() % 50);
    const SurgeryPiece p(rng() % 2 ? 1 : -1, n, oracle::random_vseq(rng));
    EXPECT_EQ(dbar_piece(p, 0), Rational(0));
    for (std::int64_t i = 0; i < n; ++i) {
      EXPECT_EQ(dbar_piece(p.mirrored(), i), Rational(-dbar_piece(p, i)));
      EXPECT_EQ(d_surgery(p, i), d_surgery(p, (n - i) % n));
    }
  }
}

TEST(DcalcProperty, ThinSequencesSatisfyStaircase) {
  for (std::int64_t sigma = -200; sigma <= 20; sigma += 2) {
    const auto seq = vseq_thin(sigma);
    const auto& v = seq.values();
    EXPECT_NO_THROW(VSequence::from_values(v));
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      EXPECT_GE(v[i], v[i + 1]);
      EXPECT_GE(v[i + 1], v[i] - 1);
    }
  }
}

TEST(DcalcProperty, DbarSumIsAdditiveOverConcatenation) {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 200; ++t) {
    const auto a = oracle::random_small_cover(rng);
    const auto b = oracle::random_small_cover(rng);
    const auto ga = a.group();
    const auto gb = b.group();
    std::vector<std::int64_t> za, zb;
    for (auto d : ga.cyclic_orders()) za.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d)));
    for (auto d : gb.cyclic_orders()) zb.push_back(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(d)));
    auto zab = za;
    zab.insert(zab.end(), zb.begin(), zb.end());
    const auto ab = a + b;
    EXPECT_EQ(dbar_sum(ab, ab.group().element(zab)), dbar_sum(a, ga.element(za)) + dbar_sum(b, gb.element(zb)));
    EXPECT_EQ(d_sum(ab, ab.group().element(zab)), d_sum(a, ga.element(za)) + d_sum(b, gb.element(zb)));
  }
}

}  // namespace
}  // namespace concordia
