#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "concordia/error.hpp"
#include "concordia/rational.hpp"

namespace concordia {

// ---------------------------------------------------------------------------
// Small number theory helpers.

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t d = 5; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 2) == 0) return false;
  }
  return true;
}

/// Prime factorization by trial division, primes ascending.
inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

inline int valuation(std::int64_t n, std::int64_t p) {
  int v = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

inline std::int64_t int_pow(std::int64_t base, int exp) {
  std::int64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r = 0;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw error(errc::resource_limit, "integer overflow in group arithmetic");
  }
  return r;
}

inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// ---------------------------------------------------------------------------

/// An element of Z/d_1 + ... + Z/d_k, one reduced residue per cyclic factor.
struct GroupElement {
  std::vector<std::int64_t> coords;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const GroupElement& g) {
  os << '(';
  for (std::size_t i = 0; i < g.coords.size(); ++i) os << (i ? "," : "") << g.coords[i];
  return os << ')';
}

/// A finite abelian group presented as a direct sum of cyclic groups.
///
/// The cyclic factors are kept in the order given (factors of order 1 are
/// dropped) so coordinates stay meaningful to the caller. The invariant
/// factor list is the canonical identity: two groups are isomorphic exactly
/// when their invariant factors agree.
class FinAbGroup {
 public:
  FinAbGroup() = default;

  explicit FinAbGroup(const std::vector<std::int64_t>& orders) {
    for (auto d : orders) {
      if (d <= 0) {
        throw error(errc::invalid_group, "cyclic order " + std::to_string(d) + " is not positive");
      }
      if (d > 1) cyclic_.push_back(d);
    }
    invariants_ = compute_invariants(cyclic_);
  }

  const std::vector<std::int64_t>& cyclic_orders() const noexcept { return cyclic_; }
  const std::vector<std::int64_t>& canonical_invariants() const noexcept { return invariants_; }
  std::size_t num_factors() const noexcept { return cyclic_.size(); }
  bool is_trivial() const noexcept { return cyclic_.empty(); }

  BigInt order() const {
    BigInt n = 1;
    for (auto d : cyclic_) n *= d;
    return n;
  }

  /// Order as a machine integer, if it fits.
  std::optional<std::uint64_t> small_order() const {
    std::uint64_t n = 1;
    for (auto d : cyclic_) {
      if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(d), &n)) return std::nullopt;
    }
    return n;
  }

  std::int64_t exponent() const {
    return invariants_.empty() ? 1 : invariants_.back();
  }

  bool isomorphic_to(const FinAbGroup& other) const { return invariants_ == other.invariants_; }

  GroupElement zero() const { return GroupElement{std::vector<std::int64_t>(cyclic_.size(), 0)}; }

  GroupElement element(std::vector<std::int64_t> coords) const {
    if (coords.size() != cyclic_.size()) {
      throw error(errc::group_mismatch, "element has " + std::to_string(coords.size()) +
                                            " coordinates, group has " +
                                            std::to_string(cyclic_.size()) + " factors");
    }
    for (std::size_t j = 0; j < coords.size(); ++j) coords[j] = mod_floor(coords[j], cyclic_[j]);
    return GroupElement{std::move(coords)};
  }

  bool contains(const GroupElement& g) const {
    if (g.coords.size() != cyclic_.size()) return false;
    for (std::size_t j = 0; j < cyclic_.size(); ++j) {
      if (g.coords[j] < 0 || g.coords[j] >= cyclic_[j]) return false;
    }
    return true;
  }

  GroupElement add(const GroupElement& a, const GroupElement& b) const {
    require(a);
    require(b);
    GroupElement r = a;
    for (std::size_t j = 0; j < cyclic_.size(); ++j) {
      r.coords[j] = (a.coords[j] + b.coords[j]) % cyclic_[j];
    }
    return r;
  }

  GroupElement negate(const GroupElement& a) const {
    require(a);
    GroupElement r = a;
    for (std::size_t j = 0; j < cyclic_.size(); ++j) {
      r.coords[j] = (cyclic_[j] - a.coords[j]) % cyclic_[j];
    }
    return r;
  }

  GroupElement scale(std::int64_t c, const GroupElement& a) const {
    require(a);
    GroupElement r = a;
    for (std::size_t j = 0; j < cyclic_.size(); ++j) {
      const auto cm = static_cast<__int128>(mod_floor(c, cyclic_[j]));
      r.coords[j] = static_cast<std::int64_t>(cm * a.coords[j] % cyclic_[j]);
    }
    return r;
  }

  /// lcm over coordinates of d_j / gcd(d_j, g_j).
  std::int64_t element_order(const GroupElement& g) const {
    require(g);
    std::int64_t ord = 1;
    for (std::size_t j = 0; j < cyclic_.size(); ++j) {
      const std::int64_t local = cyclic_[j] / std::gcd(cyclic_[j], g.coords[j]);
      ord = checked_mul(ord / std::gcd(ord, local), local);
    }
    return ord;
  }

  void require(const GroupElement& g) const {
    if (!contains(g)) throw error(errc::group_mismatch, "element is not in the group");
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.cyclic_ == b.cyclic_; }

 private:
  static std::vector<std::int64_t> compute_invariants(const std::vector<std::int64_t>& orders) {
    // Collect prime-power parts, then multiply the k-th largest powers of
    // every prime together to form the k-th largest invariant factor.
    std::map<std::int64_t, std::vector<std::int64_t>> powers;
    for (auto d : orders) {
      for (auto [p, e] : factorize(d)) powers[p].push_back(int_pow(p, e));
    }
    std::size_t length = 0;
    for (auto& [p, list] : powers) {
      std::sort(list.begin(), list.end(), std::greater<>());
      length = std::max(length, list.size());
    }
    std::vector<std::int64_t> inv(length, 1);
    for (auto& [p, list] : powers) {
      for (std::size_t k = 0; k < list.size(); ++k) inv[k] = checked_mul(inv[k], list[k]);
    }
    std::reverse(inv.begin(), inv.end());
    return inv;
  }

  std::vector<std::int64_t> cyclic_;
  std::vector<std::int64_t> invariants_;
};

inline std::ostream& operator<<(std::ostream& os, const FinAbGroup& g) {
  if (g.is_trivial()) return os << "0";
  for (std::size_t i = 0; i < g.cyclic_orders().size(); ++i) {
    os << (i ? " + " : "") << "Z/" << g.cyclic_orders()[i];
  }
  return os;
}

inline FinAbGroup canonicalize(const std::vector<std::int64_t>& orders) { return FinAbGroup(orders); }

/// Minimal number of generators.
inline std::size_t generating_rank(const FinAbGroup& g) { return g.canonical_invariants().size(); }

/// The p-primary subgroup together with its coordinate embedding.
struct PrimaryPart {
  std::int64_t prime = 0;
  FinAbGroup group;
  /// For each factor of `group`: the ambient factor it lives in, and the
  /// multiplier d_j / p^{v_p(d_j)} sending its generator into the ambient.
  std::vector<std::size_t> ambient_factor;
  std::vector<std::int64_t> multiplier;
  std::size_t ambient_factors = 0;

  GroupElement embed(const GroupElement& x) const {
    GroupElement out{std::vector<std::int64_t>(ambient_factors, 0)};
    group.require(x);
    for (std::size_t k = 0; k < ambient_factor.size(); ++k) {
      out.coords[ambient_factor[k]] = x.coords[k] * multiplier[k];
    }
    return out;
  }
};

inline PrimaryPart primary_part(const FinAbGroup& g, std::int64_t p) {
  if (!is_prime(p)) throw error(errc::invalid_argument, std::to_string(p) + " is not prime");
  PrimaryPart part;
  part.prime = p;
  part.ambient_factors = g.num_factors();
  std::vector<std::int64_t> orders;
  for (std::size_t j = 0; j < g.num_factors(); ++j) {
    const auto d = g.cyclic_orders()[j];
    const int v = valuation(d, p);
    if (v == 0) continue;
    const auto pv = int_pow(p, v);
    orders.push_back(pv);
    part.ambient_factor.push_back(j);
    part.multiplier.push_back(d / pv);
  }
  part.group = FinAbGroup(orders);
  return part;
}

/// Primes dividing the group order, ascending.
inline std::vector<std::int64_t> prime_divisors(const FinAbGroup& g) {
  std::vector<std::int64_t> primes;
  for (auto d : g.cyclic_orders()) {
    for (auto [p, e] : factorize(d)) primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

namespace detail {

/// Dense index <-> coordinate table for groups small enough to enumerate.
/// Index order is lexicographic on coordinates (first factor most significant).
class ElementTable {
 public:
  explicit ElementTable(const FinAbGroup& g, std::uint64_t bound) : orders_(g.cyclic_orders()) {
    const auto n = g.small_order();
    if (!n || *n > bound) {
      throw error(errc::resource_limit, "group of order " + g.order().str() +
                                            " exceeds the oracle bound " + std::to_string(bound));
    }
    size_ = *n;
    const std::size_t k = orders_.size();
    stride_.assign(k, 1);
    for (std::size_t j = k; j-- > 1;) stride_[j - 1] = stride_[j] * static_cast<std::uint64_t>(orders_[j]);
    coords_.resize(size_ * k);
    for (std::uint64_t idx = 0; idx < size_; ++idx) {
      std::uint64_t rest = idx;
      for (std::size_t j = 0; j < k; ++j) {
        coords_[idx * k + j] = static_cast<std::int32_t>(rest / stride_[j]);
        rest %= stride_[j];
      }
    }
  }

  std::uint64_t size() const noexcept { return size_; }
  std::size_t rank() const noexcept { return orders_.size(); }
  const std::vector<std::int64_t>& orders() const noexcept { return orders_; }

  std::int64_t coord(std::uint64_t idx, std::size_t j) const {
    return coords_[idx * orders_.size() + j];
  }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    const std::size_t k = orders_.size();
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < k; ++j) {
      std::int64_t c = coords_[a * k + j] + coords_[b * k + j];
      if (c >= orders_[j]) c -= orders_[j];
      r += static_cast<std::uint64_t>(c) * stride_[j];
    }
    return r;
  }

  std::uint64_t index(const GroupElement& g) const {
    std::uint64_t r = 0;
    for (std::size_t j = 0; j < orders_.size(); ++j) r += static_cast<std::uint64_t>(g.coords[j]) * stride_[j];
    return r;
  }

  GroupElement element(std::uint64_t idx) const {
    GroupElement g{std::vector<std::int64_t>(orders_.size())};
    for (std::size_t j = 0; j < orders_.size(); ++j) g.coords[j] = coord(idx, j);
    return g;
  }

 private:
  std::vector<std::int64_t> orders_;
  std::uint64_t size_ = 1;
  std::vector<std::uint64_t> stride_;
  std::vector<std::int32_t> coords_;
};

}  // namespace detail

}  // namespace concordia
