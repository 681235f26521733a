#pragma once

#include <cmath>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "concordia/config.hpp"
#include "concordia/error.hpp"
#include "concordia/group.hpp"
#include "concordia/subgroup.hpp"

namespace concordia {

/// An element of Q/Z stored as a reduced fraction in [0, 1).
class QmodZ {
 public:
  QmodZ() = default;

  QmodZ(std::int64_t num, std::int64_t den) {
    if (den <= 0) throw error(errc::invalid_argument, "Q/Z denominator must be positive");
    num = mod_floor(num, den);
    const auto g = std::gcd(num, den);
    num_ = num / g;
    den_ = den / g;
    if (num_ == 0) den_ = 1;
  }

  std::int64_t numerator() const noexcept { return num_; }
  std::int64_t denominator() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_ == 0; }

  QmodZ operator-() const { return QmodZ(-num_, den_); }

  friend QmodZ operator+(const QmodZ& a, const QmodZ& b) {
    const auto l = std::lcm(a.den_, b.den_);
    const auto na = static_cast<__int128>(a.num_) * (l / a.den_);
    const auto nb = static_cast<__int128>(b.num_) * (l / b.den_);
    return QmodZ(static_cast<std::int64_t>((na + nb) % l), l);
  }
  friend QmodZ operator-(const QmodZ& a, const QmodZ& b) { return a + (-b); }

  friend QmodZ operator*(std::int64_t c, const QmodZ& a) {
    const auto cm = static_cast<__int128>(mod_floor(c, a.den_));
    return QmodZ(static_cast<std::int64_t>(cm * a.num_ % a.den_), a.den_);
  }

  friend bool operator==(const QmodZ&, const QmodZ&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const QmodZ& q) {
  return os << q.numerator() << '/' << q.denominator();
}

using GramMatrix = std::vector<std::vector<QmodZ>>;

/// A symmetric Q/Z-valued bilinear pairing on a finite abelian group, given
/// by its values on pairs of cyclic generators.
class LinkingForm {
 public:
  /// The trivial form on the trivial group.
  LinkingForm() = default;

  const FinAbGroup& group() const noexcept { return group_; }
  const GramMatrix& gram() const noexcept { return gram_; }

  QmodZ operator()(const GroupElement& x, const GroupElement& y) const {
    group_.require(x);
    group_.require(y);
    return QmodZ(raw_pairing(x.coords, y.coords), scale_);
  }

  /// The form with every value negated (the form of the reversed manifold).
  LinkingForm negated() const {
    LinkingForm f = *this;
    for (auto& row : f.gram_) {
      for (auto& q : row) q = -q;
    }
    for (auto& row : f.scaled_) {
      for (auto& a : row) a = mod_floor(-a, scale_);
    }
    return f;
  }

  /// Numerator of λ(x, y) over the common denominator scale().
  template <class Coords>
  std::int64_t raw_pairing(const Coords& x, const Coords& y) const {
    __int128 acc = 0;
    const std::size_t k = scaled_.size();
    for (std::size_t i = 0; i < k; ++i) {
      if (x[i] == 0) continue;
      __int128 row = 0;
      for (std::size_t j = 0; j < k; ++j) row += static_cast<__int128>(scaled_[i][j]) * y[j];
      acc = (acc + static_cast<__int128>(x[i]) * (row % scale_)) % scale_;
    }
    return static_cast<std::int64_t>(acc);
  }

  /// gram[i][j] as a numerator over scale().
  std::int64_t scaled_entry(std::size_t i, std::size_t j) const { return scaled_[i][j]; }

  /// Common denominator of every value (the group exponent).
  std::int64_t scale() const noexcept { return scale_; }

  friend bool operator==(const LinkingForm& a, const LinkingForm& b) {
    return a.group_ == b.group_ && a.gram_ == b.gram_;
  }

  friend LinkingForm make_form(const FinAbGroup& group, GramMatrix gram);

 private:
  FinAbGroup group_;
  GramMatrix gram_;
  std::int64_t scale_ = 1;
  std::vector<std::vector<std::int64_t>> scaled_;
};

/// Validates symmetry and well-definedness (d_i * gram[i][j] = 0 in Q/Z).
inline LinkingForm make_form(const FinAbGroup& group, GramMatrix gram) {
  const std::size_t k = group.num_factors();
  if (gram.size() != k) {
    throw error(errc::invalid_form, "gram matrix has " + std::to_string(gram.size()) +
                                        " rows, group has " + std::to_string(k) + " factors");
  }
  for (const auto& row : gram) {
    if (row.size() != k) throw error(errc::invalid_form, "gram matrix is not square");
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!(gram[i][j] == gram[j][i])) {
        throw error(errc::invalid_form, "gram matrix is not symmetric at (" + std::to_string(i) +
                                            "," + std::to_string(j) + ")");
      }
      if (!(group.cyclic_orders()[i] * gram[i][j]).is_zero()) {
        std::ostringstream os;
        os << "entry " << gram[i][j] << " at (" << i << "," << j << ") is not killed by "
           << group.cyclic_orders()[i];
        throw error(errc::invalid_form, os.str());
      }
    }
  }
  LinkingForm f;
  f.group_ = group;
  f.scale_ = group.exponent();
  f.scaled_.assign(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      f.scaled_[i][j] = gram[i][j].numerator() * (f.scale_ / gram[i][j].denominator());
    }
  }
  f.gram_ = std::move(gram);
  return f;
}

/// Standard form on H_1(±S^3_n(K)) = Z/n: λ(1,1) = -sign/n.
inline LinkingForm surgery_linking_form(std::int64_t n, int sign) {
  if (n <= 0) throw error(errc::invalid_argument, "surgery coefficient must be positive");
  if (sign != 1 && sign != -1) throw error(errc::invalid_argument, "sign must be +1 or -1");
  if (n == 1) return LinkingForm{};
  return make_form(FinAbGroup({n}), GramMatrix{{QmodZ(-sign, n)}});
}

/// Orthogonal direct sum; a block with sign -1 enters negated.
inline LinkingForm compose_forms(const std::vector<std::pair<int, LinkingForm>>& parts) {
  std::vector<std::int64_t> orders;
  for (const auto& [sign, f] : parts) {
    if (sign != 1 && sign != -1) throw error(errc::invalid_argument, "sign must be +1 or -1");
    orders.insert(orders.end(), f.group().cyclic_orders().begin(), f.group().cyclic_orders().end());
  }
  const std::size_t k = orders.size();
  GramMatrix gram(k, std::vector<QmodZ>(k));
  std::size_t offset = 0;
  for (const auto& [sign, f] : parts) {
    const std::size_t b = f.group().num_factors();
    for (std::size_t i = 0; i < b; ++i) {
      for (std::size_t j = 0; j < b; ++j) {
        gram[offset + i][offset + j] = sign == 1 ? f.gram()[i][j] : -f.gram()[i][j];
      }
    }
    offset += b;
  }
  return make_form(FinAbGroup(orders), std::move(gram));
}

/// The form restricted to the p-primary subgroup, in that subgroup's own
/// coordinates.
inline LinkingForm restrict_to_primary(const LinkingForm& f, const PrimaryPart& part) {
  const std::size_t k = part.group.num_factors();
  GramMatrix gram(k, std::vector<QmodZ>(k));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      gram[a][b] = checked_mul(part.multiplier[a], part.multiplier[b]) *
                   f.gram()[part.ambient_factor[a]][part.ambient_factor[b]];
    }
  }
  return make_form(part.group, std::move(gram));
}

namespace detail {

/// λ(x, e_j) numerators for every element of the table.
inline std::vector<std::int64_t> pairing_rows(const LinkingForm& f, const ElementTable& table) {
  const std::size_t k = table.rank();
  std::vector<std::int64_t> rows(table.size() * k);
  const auto E = static_cast<__int128>(f.scale());
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    for (std::size_t j = 0; j < k; ++j) {
      __int128 acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc += static_cast<__int128>(table.coord(x, i)) * f.scaled_entry(i, j);
      rows[x * k + j] = static_cast<std::int64_t>(acc % E);
    }
  }
  return rows;
}

/// Evaluates λ on table indices through precomputed pairing rows.
class PairingCache {
 public:
  PairingCache(const LinkingForm& f, const ElementTable& table)
      : table_(&table), scale_(f.scale()), rows_(pairing_rows(f, table)) {}

  bool orthogonal(std::uint64_t x, std::uint64_t y) const {
    const std::size_t k = table_->rank();
    __int128 acc = 0;
    for (std::size_t j = 0; j < k; ++j) acc += static_cast<__int128>(rows_[x * k + j]) * table_->coord(y, j);
    return acc % scale_ == 0;
  }

 private:
  const ElementTable* table_;
  std::int64_t scale_;
  std::vector<std::int64_t> rows_;
};

/// Layered search restricted to isotropic subgroups. `extra(fresh)` may
/// reject a candidate on the new elements alone.
template <class Extra>
std::set<std::vector<std::uint64_t>> isotropic_search(const LinkingForm& f, const ElementTable& table,
                                                      std::uint64_t target, Extra&& extra) {
  const PairingCache pair(f, table);
  return layered_subgroup_search(
      table, target,
      [&](const std::vector<std::uint64_t>& gens, std::uint64_t x, const std::vector<std::uint64_t>& fresh) {
        if (!pair.orthogonal(x, x)) return false;
        for (auto g : gens) {
          if (!pair.orthogonal(x, g)) return false;
        }
        return extra(fresh);
      });
}

inline std::uint64_t exact_sqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace detail

/// True iff no nonzero x pairs trivially with every generator. Checked
/// exhaustively on each primary part.
inline bool is_nonsingular(const LinkingForm& f, std::uint64_t bound = oracle_bound()) {
  for (auto p : prime_divisors(f.group())) {
    const auto part = primary_part(f.group(), p);
    const auto restricted = restrict_to_primary(f, part);
    const detail::ElementTable table(part.group, bound);
    const std::size_t k = table.rank();
    for (std::uint64_t x = 1; x < table.size(); ++x) {
      bool radical = true;
      std::vector<std::int64_t> xc(k), ej(k, 0);
      for (std::size_t i = 0; i < k; ++i) xc[i] = table.coord(x, i);
      for (std::size_t j = 0; j < k && radical; ++j) {
        ej.assign(k, 0);
        ej[j] = 1;
        radical = restricted.raw_pairing(xc, ej) == 0;
      }
      if (radical) return false;
    }
  }
  return true;
}

/// {x : λ(x, s) = 0 for every generator s of S}.
inline Subgroup orthogonal_complement(const LinkingForm& f, const Subgroup& s,
                                      std::uint64_t bound = oracle_bound()) {
  if (!(s.ambient() == f.group())) throw error(errc::group_mismatch, "subgroup is not in the form's group");
  const detail::ElementTable table(f.group(), bound);
  const detail::PairingCache pair(f, table);
  std::vector<std::uint64_t> gens;
  for (const auto& g : s.generators()) gens.push_back(table.index(g));
  std::vector<std::uint64_t> perp;
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    bool ok = true;
    for (auto g : gens) {
      if (!pair.orthogonal(x, g)) {
        ok = false;
        break;
      }
    }
    if (ok) perp.push_back(x);
  }
  return Subgroup::from_sorted_indices(table, f.group(), std::move(perp));
}

/// |M|^2 = |G| and λ vanishes on M x M.
inline bool is_metabolizer(const LinkingForm& f, const Subgroup& m, std::uint64_t bound = oracle_bound()) {
  if (!(m.ambient() == f.group())) throw error(errc::group_mismatch, "subgroup is not in the form's group");
  const detail::ElementTable table(f.group(), bound);
  if (m.order() * m.order() != table.size()) return false;
  const auto& gens = m.generators();
  for (const auto& a : gens) {
    for (const auto& b : gens) {
      if (!f(a, b).is_zero()) return false;
    }
  }
  return true;
}

/// All metabolizers, each once, in lexicographic order of element sets.
inline std::vector<Subgroup> enumerate_metabolizers(const LinkingForm& f, std::uint64_t bound = oracle_bound()) {
  const detail::ElementTable table(f.group(), bound);
  const auto root = detail::exact_sqrt(table.size());
  if (root * root != table.size()) return {};
  auto sets = detail::isotropic_search(f, table, root, [](const auto&) { return true; });
  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(Subgroup::from_sorted_indices(table, f.group(), s));
  return out;
}

}  // namespace concordia
