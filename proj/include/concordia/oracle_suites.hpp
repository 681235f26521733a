#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "concordia/config.hpp"
#include "concordia/cover.hpp"
#include "concordia/dcalc.hpp"
#include "concordia/linkform.hpp"
#include "concordia/obstruct.hpp"
#include "concordia/subgroup.hpp"

namespace concordia::oracle {

struct SuiteResult {
  std::string suite;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::vector<std::string> log;
  /// Smallest failing instance, when any failed.
  std::optional<std::string> counterexample;

  bool passed() const { return failures == 0; }
};

inline std::string describe(const LinkingForm& f) {
  std::ostringstream os;
  os << f.group() << " with gram [";
  for (std::size_t i = 0; i < f.gram().size(); ++i) {
    os << (i ? "; " : "");
    for (std::size_t j = 0; j < f.gram()[i].size(); ++j) os << (j ? " " : "") << f.gram()[i][j];
  }
  return os.str() + "]";
}

inline std::string describe(const CoverDescription& c) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c.pieces().size(); ++i) {
    const auto& p = c.pieces()[i];
    os << (i ? ", " : "") << (p.sign > 0 ? "+" : "-") << "S3_" << p.n << "(V=";
    for (std::size_t k = 0; k < p.vseq.values().size(); ++k) os << (k ? "," : "") << p.vseq.values()[k];
    os << ')';
  }
  return os.str() + "]";
}

/// Diagonal form with a random unit numerator on each cyclic factor.
inline LinkingForm random_diagonal_form(const std::vector<std::int64_t>& orders, std::mt19937_64& rng) {
  const FinAbGroup g(orders);
  const std::size_t k = g.num_factors();
  GramMatrix gram(k, std::vector<QmodZ>(k));
  for (std::size_t i = 0; i < k; ++i) {
    const auto d = g.cyclic_orders()[i];
    std::uniform_int_distribution<std::int64_t> pick(1, d - 1);
    std::int64_t u = 1;
    do {
      u = pick(rng);
    } while (std::gcd(u, d) != 1);
    gram[i][i] = QmodZ(u, d);
  }
  return make_form(g, std::move(gram));
}

/// Random Lemma instances: H_1(Y_1)_p = (Z/p^2)^{2n}, r(H_1(Y_2)_p) <= 2m < 2n.
inline SuiteResult lemma_key_suite(std::uint64_t seed, std::uint64_t bound = oracle_bound(), std::size_t trials = 16) {
  SuiteResult result;
  result.suite = "lemma-key";
  std::mt19937_64 rng(seed);
  struct Shape {
    std::int64_t p;
    std::size_t n;
  };
  const std::vector<Shape> shapes{{2, 1}, {3, 1}, {5, 1}, {2, 2}, {7, 1}};
  std::uint64_t smallest_failure = UINT64_MAX;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto shape = shapes[t % shapes.size()];
    const auto p = shape.p;
    std::vector<std::int64_t> y1(2 * shape.n, p * p);
    std::uint64_t y1_order = 1;
    for (auto d : y1) y1_order *= static_cast<std::uint64_t>(d);
    if (y1_order > bound) continue;
    const std::size_t m = shape.n == 1 ? 0 : rng() % shape.n;
    std::vector<std::int64_t> y2;
    std::uint64_t order = y1_order;
    const std::size_t r2 = 2 * m == 0 ? 0 : 1 + rng() % (2 * m);
    for (std::size_t i = 0; i < r2; ++i) {
      const std::int64_t d = int_pow(p, 1 + static_cast<int>(rng() % 2));
      if (order * static_cast<std::uint64_t>(d) > bound) break;
      order *= static_cast<std::uint64_t>(d);
      y2.push_back(d);
    }
    const auto f1 = random_diagonal_form(y1, rng);
    const auto f2 = random_diagonal_form(y2, rng);
    ++result.trials;
    const auto verdict = verify_lemma_key(f1, f2, p, m, bound);
    std::ostringstream line;
    line << "p=" << p << " n=" << verdict.n << " m=" << verdict.m << " |G|=" << order
         << " metabolizers=" << verdict.metabolizers_checked << (verdict.pass ? " pass" : " FAIL");
    result.log.push_back(line.str());
    if (!verdict.pass) {
      ++result.failures;
      if (order < smallest_failure) {
        smallest_failure = order;
        std::ostringstream ce;
        ce << "Y1: " << describe(f1) << "; Y2: " << describe(f2) << "; p=" << p << "; metabolizer generators:";
        for (const auto& g : verdict.counterexample->generators()) ce << ' ' << g;
        result.counterexample = ce.str();
      }
    }
  }
  return result;
}

/// Every enumerated metabolizer satisfies M = M^⊥; the enumeration matches a
/// brute-force filter of all subgroups of order sqrt|G|; negating the form
/// keeps the metabolizer set.
inline SuiteResult metabolizer_suite(std::uint64_t seed, std::uint64_t bound = oracle_bound(), std::size_t trials = 24) {
  SuiteResult result;
  result.suite = "metabolizers";
  std::mt19937_64 rng(seed);
  const std::vector<std::int64_t> cyclic{2, 3, 4, 5, 7, 8, 9, 25, 27};
  std::uint64_t smallest_failure = UINT64_MAX;
  for (std::size_t t = 0; t < trials; ++t) {
    // Doubled groups have square order, so metabolizers can exist.
    std::vector<std::int64_t> half;
    std::uint64_t order = 1;
    const std::size_t factors = 1 + rng() % 2;
    for (std::size_t i = 0; i < factors; ++i) {
      const auto d = cyclic[rng() % cyclic.size()];
      if (order * static_cast<std::uint64_t>(d * d) > std::min<std::uint64_t>(bound, 729)) break;
      order *= static_cast<std::uint64_t>(d * d);
      half.push_back(d);
    }
    std::vector<std::int64_t> orders = half;
    orders.insert(orders.end(), half.begin(), half.end());
    const auto f = random_diagonal_form(orders, rng);
    ++result.trials;

    std::string problem;
    const auto metabolizers = enumerate_metabolizers(f, bound);
    for (const auto& mb : metabolizers) {
      if (!(orthogonal_complement(f, mb, bound) == mb)) problem = "M != M^perp";
    }
    std::vector<Subgroup> brute;
    for (auto& s : enumerate_subgroups_of_order(f.group(), detail::exact_sqrt(order), bound)) {
      if (orthogonal_complement(f, s, bound) == s) brute.push_back(std::move(s));
    }
    if (problem.empty() && brute != metabolizers) problem = "enumeration disagrees with brute force";
    if (problem.empty() && enumerate_metabolizers(compose_forms({{-1, f}}), bound) != metabolizers) {
      problem = "negated form has a different metabolizer set";
    }
    std::ostringstream line;
    line << describe(f) << " metabolizers=" << metabolizers.size() << (problem.empty() ? " pass" : " FAIL: " + problem);
    result.log.push_back(line.str());
    if (!problem.empty()) {
      ++result.failures;
      if (order < smallest_failure) {
        smallest_failure = order;
        result.counterexample = describe(f) + ": " + problem;
      }
    }
  }
  return result;
}

inline VSequence random_vseq(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return VSequence{};
    case 1: return vseq_thin(-2 * static_cast<std::int64_t>(rng() % 9));
    default: {
      std::vector<std::int64_t> v{static_cast<std::int64_t>(rng() % 4)};
      while (v.back() > 0) v.push_back(v.back() - static_cast<std::int64_t>(rng() % 2));
      return VSequence::from_values(std::move(v));
    }
  }
}

/// Random covers with odd n_j <= 15 and |H_1| <= 64.
inline CoverDescription random_small_cover(std::mt19937_64& rng) {
  std::vector<SurgeryPiece> pieces;
  std::int64_t product = 1;
  const std::size_t count = 1 + rng() % 3;
  for (std::size_t i = 0; i < count; ++i) {
    const std::int64_t n = 1 + 2 * static_cast<std::int64_t>(rng() % 8);
    if (product * n > 64) continue;
    product *= n;
    pieces.emplace_back(rng() % 2 ? 1 : -1, n, random_vseq(rng));
  }
  return CoverDescription(std::move(pieces));
}

/// Every cover is concordant to itself through the diagonal metabolizer.
inline SuiteResult selfconc_suite(std::uint64_t seed, std::uint64_t bound = oracle_bound(), std::size_t trials = 100) {
  SuiteResult result;
  result.suite = "selfconc";
  std::mt19937_64 rng(seed);
  std::uint64_t smallest_failure = UINT64_MAX;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto c = random_small_cover(rng);
    ++result.trials;
    const bool ok = concordance_metabolizer_test(c, c, bound);
    result.log.push_back(describe(c) + (ok ? " pass" : " FAIL"));
    if (!ok) {
      ++result.failures;
      const auto order = *c.group().small_order();
      if (order < smallest_failure) {
        smallest_failure = order;
        result.counterexample = describe(c) + " is not self-concordant";
      }
    }
  }
  return result;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"lemma-key", "metabolizers", "selfconc"};
  return names;
}

inline SuiteResult run_suite(const std::string& name, std::uint64_t seed, std::uint64_t bound = oracle_bound()) {
  if (name == "lemma-key") return lemma_key_suite(seed, bound);
  if (name == "metabolizers") return metabolizer_suite(seed, bound);
  if (name == "selfconc") return selfconc_suite(seed, bound);
  throw error(errc::invalid_argument, "unknown oracle suite '" + name + "'");
}

}  // namespace concordia::oracle
