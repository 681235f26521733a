#pragma once

// Brute-force helpers shared by the unit tests. They deliberately avoid the
// library's fast paths (element tables, layered search) so they can serve as
// independent oracles.

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "concordia/group.hpp"
#include "concordia/linkform.hpp"

namespace concordia::testing {

/// Every element of G in lexicographic coordinate order.
inline std::vector<GroupElement> all_elements(const FinAbGroup& g) {
  // Odometer, last coordinate fastest.
  std::vector<GroupElement> out;
  GroupElement cur = g.zero();
  const auto& d = g.cyclic_orders();
  while (true) {
    out.push_back(cur);
    std::size_t j = d.size();
    while (j > 0) {
      --j;
      if (++cur.coords[j] < d[j]) break;
      cur.coords[j] = 0;
      if (j == 0) return out;
    }
    if (d.empty()) return out;
  }
}

/// Order by repeated addition.
inline std::int64_t order_by_addition(const FinAbGroup& g, const GroupElement& x) {
  std::int64_t n = 1;
  for (auto y = x; y != g.zero(); y = g.add(y, x)) ++n;
  return n;
}

/// Closure of a generator list by repeated addition until stable.
inline std::set<GroupElement> closure(const FinAbGroup& g, const std::vector<GroupElement>& gens) {
  std::set<GroupElement> s{g.zero()};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<GroupElement> snapshot(s.begin(), s.end());
    for (const auto& a : snapshot) {
      for (const auto& b : gens) {
        if (s.insert(g.add(a, b)).second) grew = true;
      }
    }
  }
  return s;
}

/// λ(x, y) as an explicit Q/Z sum over gram entries.
inline QmodZ pairing_by_sum(const LinkingForm& f, const GroupElement& x, const GroupElement& y) {
  QmodZ total;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    for (std::size_t j = 0; j < y.coords.size(); ++j) {
      total = total + (x.coords[i] * y.coords[j]) * f.gram()[i][j];
    }
  }
  return total;
}

inline std::vector<std::int64_t> random_orders(std::mt19937_64& rng, std::uint64_t max_order, std::size_t max_factors = 4) {
  std::vector<std::int64_t> orders;
  std::uint64_t n = 1;
  const std::size_t k = rng() % (max_factors + 1);
  for (std::size_t i = 0; i < k; ++i) {
    const std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 15);
    if (n * static_cast<std::uint64_t>(d) > max_order) break;
    n *= static_cast<std::uint64_t>(d);
    orders.push_back(d);
  }
  return orders;
}

}  // namespace concordia::testing
