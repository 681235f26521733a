#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "concordia/error.hpp"
#include "concordia/group.hpp"
#include "concordia/rational.hpp"

namespace concordia {

/// V_0, V_1, ... : nonnegative, eventually zero, and each step drops by 0 or 1.
class VSequence {
 public:
  /// The all-zero sequence (the unknot).
  VSequence() : values_{0} {}

  static VSequence from_values(std::vector<std::int64_t> values) {
    if (values.empty()) throw error(errc::invalid_argument, "V-sequence is empty");
    if (values.back() != 0) throw error(errc::invalid_argument, "V-sequence must end with 0");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (values[i] < 0) throw error(errc::invalid_argument, "V-sequence has a negative entry");
      if (i + 1 < values.size()) {
        const auto step = values[i] - values[i + 1];
        if (step != 0 && step != 1) {
          throw error(errc::invalid_argument, "V-sequence violates V_i >= V_{i+1} >= V_i - 1 at i=" +
                                                  std::to_string(i));
        }
      }
    }
    VSequence v;
    v.values_ = std::move(values);
    return v;
  }

  std::int64_t operator[](std::int64_t i) const {
    if (i < 0) throw error(errc::invalid_argument, "negative V-sequence index");
    return static_cast<std::size_t>(i) < values_.size() ? values_[static_cast<std::size_t>(i)] : 0;
  }

  /// Stored prefix; always ends with the first 0.
  const std::vector<std::int64_t>& values() const noexcept { return values_; }
  bool is_zero() const noexcept { return values_.front() == 0; }

  friend bool operator==(const VSequence&, const VSequence&) = default;

 private:
  std::vector<std::int64_t> values_;
};

/// V_i = max(ceil(-(sigma + 2i) / 4), 0), stored up to the first zero.
inline VSequence vseq_thin(std::int64_t sigma) {
  if (sigma % 2 != 0) throw error(errc::invalid_argument, "signature must be even");
  auto ceil_div = [](std::int64_t a, std::int64_t b) {  // b > 0
    return a >= 0 ? (a + b - 1) / b : -((-a) / b);
  };
  std::vector<std::int64_t> values;
  for (std::int64_t i = 0;; ++i) {
    const auto v = std::max<std::int64_t>(ceil_div(-(sigma + 2 * i), 4), 0);
    values.push_back(v);
    if (v == 0) break;
  }
  return VSequence::from_values(std::move(values));
}

/// d(S^3_n(U), s_i) = (n - 2i)^2 / 4n - 1/4.
inline Rational d_lens(std::int64_t n, std::int64_t i) {
  if (n <= 0) throw error(errc::invalid_argument, "surgery coefficient must be positive");
  if (i < 0 || i >= n) {
    throw error(errc::invalid_argument, "spin^c index " + std::to_string(i) + " outside [0, " +
                                            std::to_string(n) + ")");
  }
  const BigInt t = BigInt(n) - 2 * BigInt(i);
  return Rational(t * t, 4 * BigInt(n)) - Rational(1, 4);
}

/// ±S^3_n(J) with the V-sequence of the companion J.
struct SurgeryPiece {
  int sign = 1;
  std::int64_t n = 1;
  VSequence vseq;

  SurgeryPiece() = default;
  SurgeryPiece(int s, std::int64_t coefficient, VSequence v = {}) : sign(s), n(coefficient), vseq(std::move(v)) {
    if (sign != 1 && sign != -1) throw error(errc::invalid_argument, "sign must be +1 or -1");
    if (n < 1 || n % 2 == 0) {
      throw error(errc::invalid_argument, "surgery coefficient must be odd and positive, got " +
                                              std::to_string(n));
    }
  }

  SurgeryPiece mirrored() const {
    SurgeryPiece p = *this;
    p.sign = -sign;
    return p;
  }

  friend bool operator==(const SurgeryPiece&, const SurgeryPiece&) = default;
};

/// Ni–Wu: d(S^3_n(J), s_i) = d(S^3_n(U), s_i) - 2 max(V_i, V_{n-i}); the
/// reversed orientation negates the value.
inline Rational d_surgery(const SurgeryPiece& piece, std::int64_t i) {
  const Rational unsigned_value =
      d_lens(piece.n, i) - 2 * std::max(piece.vseq[i], piece.vseq[piece.n - i]);
  return piece.sign == 1 ? unsigned_value : Rational(-unsigned_value);
}

inline Rational dbar_piece(const SurgeryPiece& piece, std::int64_t i) {
  return d_surgery(piece, i) - d_surgery(piece, 0);
}

/// A connected sum of surgery pieces; H_1 is the sum of Z/n_j over the pieces
/// with n_j > 1, in piece order.
class CoverDescription {
 public:
  CoverDescription() = default;
  explicit CoverDescription(std::vector<SurgeryPiece> pieces) : pieces_(std::move(pieces)) {}

  const std::vector<SurgeryPiece>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }

  FinAbGroup group() const {
    std::vector<std::int64_t> orders;
    for (const auto& p : pieces_) orders.push_back(p.n);
    return FinAbGroup(orders);
  }

  /// Group coordinate of each piece (none for n = 1 pieces).
  std::vector<std::optional<std::size_t>> piece_coordinates() const {
    std::vector<std::optional<std::size_t>> out;
    std::size_t next = 0;
    for (const auto& p : pieces_) out.push_back(p.n > 1 ? std::optional<std::size_t>(next++) : std::nullopt);
    return out;
  }

  CoverDescription mirrored() const {
    CoverDescription c = *this;
    for (auto& p : c.pieces_) p = p.mirrored();
    return c;
  }

  friend CoverDescription operator+(const CoverDescription& a, const CoverDescription& b) {
    CoverDescription c = a;
    c.pieces_.insert(c.pieces_.end(), b.pieces_.begin(), b.pieces_.end());
    return c;
  }

  /// The cover of the k-fold self-sum: k concatenated copies.
  CoverDescription self_sum(std::size_t k) const {
    CoverDescription c;
    for (std::size_t i = 0; i < k; ++i) c = c + *this;
    return c;
  }

  friend bool operator==(const CoverDescription&, const CoverDescription&) = default;

 private:
  std::vector<SurgeryPiece> pieces_;
};

namespace detail {

template <class PieceValue>
Rational sum_over_pieces(const CoverDescription& cover, const GroupElement& z, PieceValue&& value) {
  const auto group = cover.group();
  if (!group.contains(z)) throw error(errc::group_mismatch, "element is not in the cover's homology");
  const auto coords = cover.piece_coordinates();
  Rational total = 0;
  for (std::size_t j = 0; j < cover.pieces().size(); ++j) {
    const std::int64_t i = coords[j] ? z.coords[*coords[j]] : 0;
    total += value(cover.pieces()[j], i);
  }
  return total;
}

}  // namespace detail

/// d(Y, s_z) by additivity over the pieces.
inline Rational d_sum(const CoverDescription& cover, const GroupElement& z) {
  return detail::sum_over_pieces(cover, z, [](const SurgeryPiece& p, std::int64_t i) { return d_surgery(p, i); });
}

/// d(Y, s_z) - d(Y, s_0) by additivity over the pieces.
inline Rational dbar_sum(const CoverDescription& cover, const GroupElement& z) {
  return detail::sum_over_pieces(cover, z, [](const SurgeryPiece& p, std::int64_t i) { return dbar_piece(p, i); });
}

}  // namespace concordia
