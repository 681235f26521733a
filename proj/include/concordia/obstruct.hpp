#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "concordia/config.hpp"
#include "concordia/cover.hpp"
#include "concordia/dcalc.hpp"
#include "concordia/error.hpp"
#include "concordia/group.hpp"
#include "concordia/linkform.hpp"
#include "concordia/subgroup.hpp"

namespace concordia {

/// Lower bound on g_Z from r(H_1(Σ_2)) <= 2 g_Z.
inline std::size_t gz_lower_bound(const CoverDescription& c) {
  return (generating_rank(c.group()) + 1) / 2;
}

namespace detail {

inline std::string describe_invariants(const std::vector<std::int64_t>& inv) {
  if (inv.empty()) return "[] (trivial)";
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < inv.size(); ++i) os << (i ? "," : "") << inv[i];
  os << ']';
  return os.str();
}

/// The p-torsion subgroup {x : p x = 0} of the cover's homology, viewed as
/// F_p^r. Vector k maps to the element with coordinate k_j * (n_j / p) on the
/// j-th factor divisible by p.
class Socle {
 public:
  Socle(const CoverDescription& cover, std::int64_t p) : group_(cover.group()), p_(p) {
    if (!is_prime(p)) throw error(errc::invalid_argument, std::to_string(p) + " is not prime");
    const auto coords = cover.piece_coordinates();
    for (std::size_t j = 0; j < cover.pieces().size(); ++j) {
      const auto& piece = cover.pieces()[j];
      if (!coords[j] || piece.n % p != 0) continue;
      factor_.push_back(*coords[j]);
      step_.push_back(piece.n / p);
      std::vector<Rational> values;
      for (std::int64_t t = 0; t < p; ++t) values.push_back(dbar_piece(piece, t * (piece.n / p)));
      dbar_.push_back(std::move(values));
    }
    size_ = 1;
    for (std::size_t i = 0; i < factor_.size(); ++i) {
      if (__builtin_mul_overflow(size_, static_cast<std::uint64_t>(p), &size_)) {
        throw error(errc::resource_limit, "p-torsion subgroup too large to enumerate");
      }
    }
    build_scaled_tables();
  }

  std::int64_t prime() const noexcept { return p_; }
  std::size_t rank() const noexcept { return factor_.size(); }
  std::uint64_t size() const noexcept { return size_; }

  std::vector<std::int64_t> vector_of(std::uint64_t code) const {
    std::vector<std::int64_t> k(rank());
    for (std::size_t i = rank(); i-- > 0;) {
      k[i] = static_cast<std::int64_t>(code % static_cast<std::uint64_t>(p_));
      code /= static_cast<std::uint64_t>(p_);
    }
    return k;
  }

  std::uint64_t code_of(const std::vector<std::int64_t>& k) const {
    std::uint64_t code = 0;
    for (auto x : k) code = code * static_cast<std::uint64_t>(p_) + static_cast<std::uint64_t>(mod_floor(x, p_));
    return code;
  }

  GroupElement element(std::uint64_t code) const {
    GroupElement g = group_.zero();
    const auto k = vector_of(code);
    for (std::size_t i = 0; i < rank(); ++i) g.coords[factor_[i]] = k[i] * step_[i];
    return g;
  }

  /// d̄ at c * element(code), from the per-piece tables.
  Rational dbar_multiple(const std::vector<std::int64_t>& k, std::int64_t c) const {
    Rational total = 0;
    for (std::size_t i = 0; i < rank(); ++i) total += dbar_[i][static_cast<std::size_t>(mod_floor(c * k[i], p_))];
    return total;
  }

  /// True iff d̄ vanishes on every multiple of element(code).
  bool null_spanned(std::uint64_t code) const {
    const auto k = vector_of(code);
    for (std::int64_t c = 1; c < p_; ++c) {
      if (scaled_) {
        __int128 acc = 0;
        for (std::size_t i = 0; i < rank(); ++i) acc += scaled_values_[i][static_cast<std::size_t>(mod_floor(c * k[i], p_))];
        if (acc != 0) return false;
      } else if (dbar_multiple(k, c) != 0) {
        return false;
      }
    }
    return true;
  }

 private:
  // Integer numerators over a common denominator, when they fit.
  void build_scaled_tables() {
    BigInt common = 1;
    for (const auto& row : dbar_) {
      for (const auto& v : row) {
        const BigInt den = boost::multiprecision::denominator(v);
        common = common / boost::multiprecision::gcd(common, den) * den;
      }
    }
    std::vector<std::vector<std::int64_t>> scaled;
    const BigInt limit = BigInt(1) << 56;
    for (const auto& row : dbar_) {
      std::vector<std::int64_t> out;
      for (const auto& v : row) {
        const BigInt num = boost::multiprecision::numerator(v) * (common / boost::multiprecision::denominator(v));
        if (abs(num) > limit) return;
        out.push_back(static_cast<std::int64_t>(num));
      }
      scaled.push_back(std::move(out));
    }
    scaled_values_ = std::move(scaled);
    scaled_ = true;
  }

  FinAbGroup group_;
  std::int64_t p_;
  std::vector<std::size_t> factor_;
  std::vector<std::int64_t> step_;
  std::vector<std::vector<Rational>> dbar_;
  std::vector<std::vector<std::int64_t>> scaled_values_;
  bool scaled_ = false;
  std::uint64_t size_ = 1;
};

/// Largest dimension of an F_p-subspace contained in `null_codes` (which
/// must contain 0). Depth-first over bases chosen in increasing code order:
/// the greedy basis of any admissible subspace is such a sequence.
inline std::size_t max_null_rank(const Socle& socle, const std::vector<std::uint64_t>& null_codes) {
  const auto p = socle.prime();
  std::vector<char> is_null(socle.size(), 0);
  for (auto c : null_codes) is_null[c] = 1;
  std::vector<std::uint64_t> candidates;
  for (auto c : null_codes) {
    if (c != 0) candidates.push_back(c);
  }
  std::sort(candidates.begin(), candidates.end());
  std::size_t ceiling = 0;
  for (std::uint64_t s = 1; s * static_cast<std::uint64_t>(p) <= null_codes.size(); s *= static_cast<std::uint64_t>(p)) {
    ++ceiling;
  }

  auto add = [&](std::uint64_t a, std::uint64_t b) {
    const auto x = socle.vector_of(a);
    const auto y = socle.vector_of(b);
    std::vector<std::int64_t> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (x[i] + y[i]) % p;
    return socle.code_of(z);
  };

  std::size_t best = 0;
  std::function<void(const std::vector<std::uint64_t>&, std::size_t, std::size_t)> dfs =
      [&](const std::vector<std::uint64_t>& span, std::size_t depth, std::size_t from) {
        best = std::max(best, depth);
        if (best == ceiling) return;
        std::vector<char> in_span(socle.size(), 0);
        for (auto s : span) in_span[s] = 1;
        for (std::size_t idx = from; idx < candidates.size(); ++idx) {
          const auto v = candidates[idx];
          if (in_span[v]) continue;
          std::vector<std::uint64_t> grown = span;
          bool ok = true;
          std::uint64_t mult = v;
          for (std::int64_t c = 1; c < p && ok; ++c, mult = add(mult, v)) {
            for (auto s : span) {
              const auto e = add(s, mult);
              if (!is_null[e]) {
                ok = false;
                break;
              }
              grown.push_back(e);
            }
          }
          if (!ok) continue;
          dfs(grown, depth + 1, idx + 1);
          if (best == ceiling) return;
        }
      };
  dfs({0}, 0, 0);
  return best;
}

}  // namespace detail

/// Elements z of p-torsion in H_1 whose whole cyclic span is d̄-null,
/// including 0, in lexicographic coordinate order.
inline std::vector<GroupElement> dbar_null_elements(const CoverDescription& c, std::int64_t p) {
  const detail::Socle socle(c, p);
  if (socle.rank() == 0) {
    throw error(errc::empty_input, "H_1 has no " + std::to_string(p) + "-torsion");
  }
  std::vector<GroupElement> out;
  for (std::uint64_t code = 0; code < socle.size(); ++code) {
    if (socle.null_spanned(code)) out.push_back(socle.element(code));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// (Z/p^2)^{2n} shape check on the p-primary part; returns n.
inline std::size_t square_p_squared_half_rank(const FinAbGroup& g, std::int64_t p) {
  const auto part = primary_part(g, p);
  const auto& inv = part.group.canonical_invariants();
  const bool ok = !inv.empty() && inv.size() % 2 == 0 &&
                  std::all_of(inv.begin(), inv.end(), [&](std::int64_t d) { return d == p * p; });
  if (!ok) {
    throw error(errc::hypothesis_not_met, "the " + std::to_string(p) + "-primary part must be (Z/" +
                                              std::to_string(p * p) + ")^{2n} with n >= 1; its invariants are " +
                                              detail::describe_invariants(inv));
  }
  return inv.size() / 2;
}

/// Primes p for which H_1(c)_p has the (Z/p^2)^{2n} shape, ascending.
inline std::vector<std::int64_t> eligible_primes(const CoverDescription& c) {
  std::vector<std::int64_t> out;
  const auto g = c.group();
  for (auto p : prime_divisors(g)) {
    try {
      square_p_squared_half_rank(g, p);
      out.push_back(p);
    } catch (const error&) {
    }
  }
  return out;
}

struct GzcBound {
  std::int64_t prime = 0;
  std::size_t half_rank = 0;  ///< n in (Z/p^2)^{2n}
  std::size_t null_rank = 0;  ///< largest rank of a d̄-null elementary abelian subgroup
  std::int64_t bound = 0;     ///< max(n - null_rank, 0)

  friend bool operator==(const GzcBound&, const GzcBound&) = default;
};

/// Lower bound on g_Z^c at prime p. Every m < n - null_rank is ruled out: a
/// concordance to a knot of Z-genus m would force a d̄-null (Z/p)^{n-m}.
inline GzcBound gzc_lower_bound_detail(const CoverDescription& c, std::int64_t p) {
  if (!is_prime(p)) throw error(errc::invalid_argument, std::to_string(p) + " is not prime");
  GzcBound out;
  out.prime = p;
  out.half_rank = square_p_squared_half_rank(c.group(), p);
  const detail::Socle socle(c, p);
  std::vector<std::uint64_t> null_codes;
  for (std::uint64_t code = 0; code < socle.size(); ++code) {
    if (socle.null_spanned(code)) null_codes.push_back(code);
  }
  out.null_rank = detail::max_null_rank(socle, null_codes);
  // A null rank of n or more rules nothing out.
  out.bound = std::max<std::int64_t>(
      static_cast<std::int64_t>(out.half_rank) - static_cast<std::int64_t>(out.null_rank), 0);
  return out;
}

inline std::int64_t gzc_lower_bound(const CoverDescription& c, std::int64_t p) {
  return gzc_lower_bound_detail(c, p).bound;
}

/// Nonzero elements of order p in H_1(c)_p with their d̄ values.
inline std::vector<std::pair<GroupElement, Rational>> dbar_table(const CoverDescription& c, std::int64_t p) {
  const detail::Socle socle(c, p);
  std::vector<std::pair<GroupElement, Rational>> out;
  for (std::uint64_t code = 1; code < socle.size(); ++code) {
    out.emplace_back(socle.element(code), socle.dbar_multiple(socle.vector_of(code), 1));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

struct LemmaVerdict {
  bool pass = false;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t metabolizers_checked = 0;
  /// A metabolizer whose intersection with H_1(Y_1) has p-rank below n - m.
  std::optional<Subgroup> counterexample;
};

namespace detail {

inline std::size_t count_log(std::uint64_t count, std::int64_t p) {
  std::size_t r = 0;
  while (count >= static_cast<std::uint64_t>(p) && count % static_cast<std::uint64_t>(p) == 0) {
    count /= static_cast<std::uint64_t>(p);
    ++r;
  }
  return r;
}

}  // namespace detail

/// Exhaustive check that every metabolizer M of λ1 ⊕ -λ2 meets H_1(Y_1) in
/// a subgroup containing (Z/p)^{n-m}, where H_1(Y_1)_p = (Z/p^2)^{2n} and
/// r(H_1(Y_2)_p) <= 2m < 2n.
inline LemmaVerdict verify_lemma_key(const LinkingForm& f1, const LinkingForm& f2, std::int64_t p,
                                     std::optional<std::size_t> m_override = std::nullopt,
                                     std::uint64_t bound = oracle_bound()) {
  if (!is_prime(p)) throw error(errc::invalid_argument, std::to_string(p) + " is not prime");
  LemmaVerdict verdict;
  verdict.n = square_p_squared_half_rank(f1.group(), p);
  const auto r2 = generating_rank(primary_part(f2.group(), p).group);
  verdict.m = m_override.value_or((r2 + 1) / 2);
  if (r2 > 2 * verdict.m || verdict.m >= verdict.n) {
    throw error(errc::hypothesis_not_met,
                "need r(H_1(Y_2)_p) <= 2m < 2n; got r=" + std::to_string(r2) + ", m=" +
                    std::to_string(verdict.m) + ", n=" + std::to_string(verdict.n));
  }
  const auto combined = compose_forms({{1, f1}, {-1, f2}});
  const detail::ElementTable table(combined.group(), bound);
  const std::size_t k1 = f1.group().num_factors();
  const std::size_t need = verdict.n - verdict.m;

  const auto metabolizers = enumerate_metabolizers(combined, bound);
  verdict.metabolizers_checked = metabolizers.size();
  verdict.pass = true;
  for (const auto& mb : metabolizers) {
    // p-torsion of M ∩ H_1(Y_1).
    std::uint64_t torsion = 0;
    for (auto idx : mb.element_indices()) {
      bool in_y1 = true;
      for (std::size_t j = k1; j < table.rank() && in_y1; ++j) in_y1 = table.coord(idx, j) == 0;
      if (!in_y1) continue;
      bool killed = true;
      for (std::size_t j = 0; j < k1 && killed; ++j) {
        killed = (table.coord(idx, j) * p) % table.orders()[j] == 0;
      }
      if (killed) ++torsion;
    }
    if (detail::count_log(torsion, p) < need) {
      verdict.pass = false;
      verdict.counterexample = mb;
      break;
    }
  }
  return verdict;
}

/// True iff some metabolizer of H_1(Σ_2(K) # -Σ_2(J)) has d(Σ_2(K), s_a) +
/// d(-Σ_2(J), s_b) = 0 at every (a, b) in it. False proves K and J are not
/// concordant.
inline bool concordance_metabolizer_test(const CoverDescription& cK, const CoverDescription& cJ,
                                         std::uint64_t bound = oracle_bound()) {
  const auto combined = cK + cJ.mirrored();
  const auto [group, form] = cover_homology(combined);
  const detail::ElementTable table(group, bound);
  const auto root = detail::exact_sqrt(table.size());
  if (root * root != table.size()) return false;

  const auto coords = combined.piece_coordinates();
  std::vector<std::vector<Rational>> piece_d;
  Rational constant = 0;  // n = 1 pieces only see the spin structure
  for (std::size_t j = 0; j < combined.pieces().size(); ++j) {
    const auto& piece = combined.pieces()[j];
    if (!coords[j]) {
      constant += d_surgery(piece, 0);
      continue;
    }
    std::vector<Rational> values;
    for (std::int64_t i = 0; i < piece.n; ++i) values.push_back(d_surgery(piece, i));
    piece_d.push_back(std::move(values));
  }
  std::vector<char> d_zero(table.size());
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    Rational total = constant;
    for (std::size_t j = 0; j < piece_d.size(); ++j) total += piece_d[j][static_cast<std::size_t>(table.coord(x, j))];
    d_zero[x] = total == 0;
  }
  if (!d_zero[0]) return false;
  const auto found = detail::isotropic_search(form, table, root, [&](const std::vector<std::uint64_t>& fresh) {
    return std::all_of(fresh.begin(), fresh.end(), [&](std::uint64_t e) { return d_zero[e] != 0; });
  });
  return !found.empty();
}

}  // namespace concordia
