#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "concordia/config.hpp"
#include "concordia/error.hpp"
#include "concordia/group.hpp"

namespace concordia {

/// A subgroup of a finite abelian group.
///
/// Small ambients (order within the oracle bound) carry the full sorted
/// element set; larger ones carry only the generators they were built from.
class Subgroup {
 public:
  /// The subgroup generated by `gens`. Materializes its elements when the
  /// ambient order is within `bound`.
  static Subgroup generated_by(const FinAbGroup& ambient, std::vector<GroupElement> gens,
                               std::uint64_t bound = oracle_bound()) {
    for (const auto& g : gens) ambient.require(g);
    Subgroup s;
    s.ambient_ = ambient;
    const auto n = ambient.small_order();
    if (n && *n <= bound) {
      const detail::ElementTable table(ambient, bound);
      std::vector<std::uint64_t> idx;
      idx.reserve(gens.size());
      for (const auto& g : gens) idx.push_back(table.index(g));
      s.elements_ = span_indices(table, idx);
      s.materialized_ = true;
    }
    s.generators_ = std::move(gens);
    return s;
  }

  /// Wraps an element set already known to be a subgroup (sorted indices
  /// into the ambient's element table). A small generating set is derived.
  static Subgroup from_sorted_indices(const FinAbGroup& ambient, std::vector<std::uint64_t> sorted,
                                      std::uint64_t bound = oracle_bound()) {
    return from_sorted_indices(detail::ElementTable(ambient, bound), ambient, std::move(sorted));
  }

  static Subgroup from_sorted_indices(const detail::ElementTable& table, const FinAbGroup& ambient,
                                      std::vector<std::uint64_t> sorted) {
    Subgroup s;
    s.ambient_ = ambient;
    s.elements_ = std::move(sorted);
    s.materialized_ = true;
    // Greedy: take the smallest element outside the current span.
    std::vector<std::uint64_t> gens;
    std::vector<std::uint64_t> current{0};
    for (auto e : s.elements_) {
      if (std::binary_search(current.begin(), current.end(), e)) continue;
      gens.push_back(e);
      current = span_indices(table, gens);
    }
    for (auto g : gens) s.generators_.push_back(table.element(g));
    return s;
  }

  /// Builds from an explicit element list; throws unless it is a subgroup.
  static Subgroup from_elements(const FinAbGroup& ambient, const std::vector<GroupElement>& elems,
                                std::uint64_t bound = oracle_bound()) {
    const detail::ElementTable table(ambient, bound);
    std::vector<std::uint64_t> idx;
    for (const auto& e : elems) {
      ambient.require(e);
      idx.push_back(table.index(e));
    }
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    if (idx.empty() || idx.front() != 0) {
      throw error(errc::invalid_argument, "element set does not contain zero");
    }
    for (auto a : idx) {
      for (auto b : idx) {
        if (!std::binary_search(idx.begin(), idx.end(), table.add(a, b))) {
          throw error(errc::invalid_argument, "element set is not closed under addition");
        }
      }
    }
    return from_sorted_indices(ambient, std::move(idx), bound);
  }

  const FinAbGroup& ambient() const noexcept { return ambient_; }
  const std::vector<GroupElement>& generators() const noexcept { return generators_; }
  bool materialized() const noexcept { return materialized_; }

  const std::vector<std::uint64_t>& element_indices() const {
    require_materialized();
    return elements_;
  }

  std::uint64_t order() const {
    require_materialized();
    return elements_.size();
  }

  std::vector<GroupElement> elements(std::uint64_t bound = oracle_bound()) const {
    require_materialized();
    const detail::ElementTable table(ambient_, std::max<std::uint64_t>(bound, *ambient_.small_order()));
    std::vector<GroupElement> out;
    out.reserve(elements_.size());
    for (auto i : elements_) out.push_back(table.element(i));
    return out;
  }

  bool contains(const GroupElement& g) const {
    require_materialized();
    if (!ambient_.contains(g)) return false;
    const detail::ElementTable table(ambient_, *ambient_.small_order());
    return std::binary_search(elements_.begin(), elements_.end(), table.index(g));
  }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    a.require_materialized();
    b.require_materialized();
    return a.ambient_ == b.ambient_ && a.elements_ == b.elements_;
  }

  friend bool operator<(const Subgroup& a, const Subgroup& b) { return a.elements_ < b.elements_; }

  /// Closure of a set of element indices under addition.
  static std::vector<std::uint64_t> span_indices(const detail::ElementTable& table,
                                                 const std::vector<std::uint64_t>& gens) {
    std::vector<char> in(table.size(), 0);
    std::vector<std::uint64_t> members{0};
    in[0] = 1;
    for (auto g : gens) {
      if (in[g]) continue;
      // members is a subgroup H; add cosets H + c*g until closing up.
      const std::vector<std::uint64_t> base = members;
      std::uint64_t step = g;
      while (!in[step]) {
        for (auto h : base) {
          const auto e = table.add(h, step);
          if (!in[e]) {
            in[e] = 1;
            members.push_back(e);
          }
        }
        step = table.add(step, g);
      }
    }
    std::sort(members.begin(), members.end());
    return members;
  }

 private:
  void require_materialized() const {
    if (!materialized_) {
      throw error(errc::resource_limit,
                  "subgroup of a group of order " + ambient_.order().str() +
                      " is only available through its generators");
    }
  }

  FinAbGroup ambient_;
  std::vector<GroupElement> generators_;
  std::vector<std::uint64_t> elements_;
  bool materialized_ = false;
};

namespace detail {

/// Breadth-first search over subgroups whose order divides `target`,
/// growing each subgroup H by one element x of prime order modulo H.
///
/// Every subgroup of order N > 1 has a subgroup of prime index, so every
/// subgroup satisfying a hereditary predicate is reached. `accept(gens, x,
/// fresh)` decides whether span(H, x) is kept; `fresh` lists the elements of
/// span(H, x) outside H. Returns the sorted element sets of order `target`,
/// lexicographically ordered.
template <class Accept>
std::set<std::vector<std::uint64_t>> layered_subgroup_search(const ElementTable& table,
                                                             std::uint64_t target, Accept&& accept) {
  std::set<std::vector<std::uint64_t>> found;
  if (target == 0 || table.size() % target != 0) return found;
  if (target == 1) {
    found.insert({0});
    return found;
  }
  using Level = std::map<std::vector<std::uint64_t>, std::vector<std::uint64_t>>;
  Level level;
  level.emplace(std::vector<std::uint64_t>{0}, std::vector<std::uint64_t>{});
  const std::uint64_t n = table.size();
  std::vector<char> mark(n), consumed(n);
  std::vector<std::uint64_t> fresh;

  while (!level.empty()) {
    Level next;
    for (const auto& [members, gens] : level) {
      std::fill(mark.begin(), mark.end(), 0);
      for (auto h : members) mark[h] = 1;
      consumed = mark;
      const std::uint64_t h_order = members.size();
      for (std::uint64_t x = 0; x < n; ++x) {
        if (consumed[x]) continue;
        // Order of x modulo H.
        std::uint64_t t = 1;
        for (std::uint64_t y = x; !mark[y]; y = table.add(y, x)) ++t;
        // Every element h + c*x with 0 < c < t generates the same extension
        // when t is prime.
        fresh.clear();
        std::uint64_t step = x;
        for (std::uint64_t c = 1; c < t; ++c, step = table.add(step, x)) {
          for (auto h : members) fresh.push_back(table.add(h, step));
        }
        const bool prime_step = is_prime(static_cast<std::int64_t>(t));
        if (prime_step) {
          for (auto e : fresh) consumed[e] = 1;
        }
        if (!prime_step || target % (h_order * t) != 0) continue;
        if (!accept(gens, x, fresh)) continue;
        std::vector<std::uint64_t> grown = members;
        grown.insert(grown.end(), fresh.begin(), fresh.end());
        std::sort(grown.begin(), grown.end());
        if (grown.size() == target) {
          found.insert(std::move(grown));
        } else if (!next.count(grown)) {
          auto g2 = gens;
          g2.push_back(x);
          next.emplace(std::move(grown), std::move(g2));
        }
      }
    }
    level = std::move(next);
  }
  return found;
}

}  // namespace detail

/// Every subgroup of order k, each once, ordered lexicographically by sorted
/// element set. Empty when k does not divide |G|.
inline std::vector<Subgroup> enumerate_subgroups_of_order(const FinAbGroup& g, std::uint64_t k,
                                                          std::uint64_t bound = oracle_bound()) {
  const detail::ElementTable table(g, bound);
  auto sets = detail::layered_subgroup_search(
      table, k, [](const auto&, std::uint64_t, const auto&) { return true; });
  std::vector<Subgroup> out;
  out.reserve(sets.size());
  for (auto& s : sets) out.push_back(Subgroup::from_sorted_indices(table, g, s));
  return out;
}

}  // namespace concordia
