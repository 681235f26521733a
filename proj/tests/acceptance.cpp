// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "concordia/concordia.hpp"
#include "concordia/oracle_suites.hpp"
#include "knot_corpus.hpp"

namespace {

using namespace concordia;

struct Outcome {
  bool ok = true;
  std::string detail;

  void check(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> run;
};

CoverDescription kstar_sum(std::size_t n) { return branched_double_cover(parse("Kstar")).self_sum(n); }

Outcome dbar_table_reproduction() {
  Outcome out;
  const auto c = branched_double_cover(parse("Kstar"));
  const auto g = c.group();
  auto at = [&](std::int64_t i, std::int64_t j) { return dbar_sum(c, g.element({i, 0, j, 0})); };
  for (std::int64_t i : {5, 20}) out.check(at(i, 0) == 0, "dbar(" + std::to_string(i) + ",0) != 0");
  for (std::int64_t i : {10, 15}) out.check(at(i, 0) == 2, "dbar(" + std::to_string(i) + ",0) != 2");
  for (std::int64_t j : {5, 20}) out.check(at(0, j) == 4, "dbar(0," + std::to_string(j) + ") != 4");
  for (std::int64_t j : {10, 15}) out.check(at(0, j) == 6, "dbar(0," + std::to_string(j) + ") != 6");
  // The same values through the order-5 table.
  for (const auto& [e, v] : dbar_table(c, 5)) out.check(v == dbar_sum(c, e), "table disagrees with dbar_sum");
  return out;
}

Outcome thin_vseq() {
  Outcome out;
  const auto v = vseq_thin(-16);
  out.check(v[0] == 4, "V_0 != 4");
  out.check(v[5] == 2, "V_5 != 2");
  for (std::int64_t i = 8; i < 1000; ++i) out.check(v[i] == 0, "V_" + std::to_string(i) + " != 0");
  return out;
}

Outcome kstar_gzc() {
  Outcome out;
  const std::uint64_t expected_counts[] = {24, 624, 15624};
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto c = kstar_sum(n);
    const auto table = dbar_table(c, 5);
    out.check(table.size() == expected_counts[n - 1], "order-5 count at n=" + std::to_string(n));
    const auto bound = gzc_lower_bound(c, 5);
    out.check(bound == static_cast<std::int64_t>(n),
              "n=" + std::to_string(n) + " gave " + std::to_string(bound));
  }
  return out;
}

Outcome kstar_gz() {
  Outcome out;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto c = kstar_sum(n);
    out.check(c.group().canonical_invariants() == std::vector<std::int64_t>(2 * n, 575),
              "invariants at n=" + std::to_string(n));
    out.check(gz_lower_bound(c) == n, "gz bound at n=" + std::to_string(n));
  }
  return out;
}

LinkingForm diag(const std::vector<std::int64_t>& orders, const std::vector<QmodZ>& entries) {
  GramMatrix gram(entries.size(), std::vector<QmodZ>(entries.size()));
  for (std::size_t i = 0; i < entries.size(); ++i) gram[i][i] = entries[i];
  return make_form(FinAbGroup(orders), gram);
}

Outcome lemma_oracle() {
  Outcome out;
  const auto v1 = verify_lemma_key(diag({9, 9}, {QmodZ(1, 9), QmodZ(-1, 9)}), LinkingForm(), 3);
  out.check(v1.n == 1 && v1.m == 0, "instance (i) has the wrong n, m");
  out.check(v1.metabolizers_checked > 0, "instance (i) has no metabolizers");
  out.check(v1.pass, "instance (i) failed");
  const auto v2 = verify_lemma_key(
      diag({4, 4, 4, 4}, {QmodZ(1, 4), QmodZ(-1, 4), QmodZ(1, 4), QmodZ(-1, 4)}),
      diag({2, 2}, {QmodZ(1, 2), QmodZ(1, 2)}), 2);
  out.check(v2.n == 2 && v2.m == 1, "instance (ii) has the wrong n, m");
  out.check(v2.metabolizers_checked > 0, "instance (ii) has no metabolizers");
  out.check(v2.pass, "instance (ii) failed");
  std::ostringstream os;
  os << "metabolizers checked: " << v1.metabolizers_checked << ", " << v2.metabolizers_checked;
  if (out.ok) out.detail = os.str();
  return out;
}

Outcome self_concordance() {
  Outcome out;
  std::mt19937_64 rng(20260101);
  std::size_t tested = 0;
  for (; tested < 150; ++tested) {
    const auto c = oracle::random_small_cover(rng);
    for (const auto& p : c.pieces()) out.check(p.n % 2 == 1 && p.n <= 15, "generator produced n > 15");
    out.check(concordance_metabolizer_test(c, c), oracle::describe(c) + " not self-concordant");
  }
  if (out.ok) out.detail = std::to_string(tested) + " random covers";
  return out;
}

Outcome lens_properties() {
  Outcome out;
  for (std::int64_t n = 1; n <= 99; n += 2) {
    for (std::int64_t i = 1; i < n; ++i) {
      out.check(d_lens(n, i) == d_lens(n, n - i), "asymmetric at n=" + std::to_string(n));
    }
  }
  out.check(d_lens(1, 0) == 0, "d_lens(1,0) != 0");
  std::mt19937_64 rng(7);
  for (std::int64_t n = 1; n <= 99; n += 2) {
    for (int sign : {1, -1}) {
      for (int k = 0; k < 5; ++k) {
        const SurgeryPiece piece(sign, n, oracle::random_vseq(rng));
        out.check(dbar_piece(piece, 0) == 0, "dbar_piece(., 0) != 0 at n=" + std::to_string(n));
      }
      out.check(dbar_piece(SurgeryPiece(sign, n, vseq_thin(-16)), 0) == 0, "thin piece");
    }
  }
  return out;
}

Outcome parser_round_trip() {
  Outcome out;
  out.check(testing::corpus().size() == 20, "corpus size");
  bool has_kstar = false;
  for (const auto& text : testing::corpus()) {
    has_kstar = has_kstar || text == "C(2,25;D) # -C(2,23;D) # -T(2,25) # T(2,23)";
    out.check(print(parse(text)) == text, "print(parse(\"" + text + "\"))");
  }
  out.check(has_kstar, "corpus lacks the Kstar expression");
  std::mt19937_64 rng(8);
  for (int t = 0; t < 1000; ++t) {
    const auto e = testing::random_expr(rng, 4);
    out.check(parse(print(e)) == e, "parse(print(e)) for " + print(e));
  }
  return out;
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "dbar table reproduction for Kstar (exact)", 1.0, dbar_table_reproduction},
      {2, "thin V-sequence for sigma = -16", 1.0, thin_vseq},
      {3, "gzc bound = n for n-fold Kstar sums, n = 1..3 (p = 5)", 60.0, kstar_gzc},
      {4, "gz bound = n for n-fold Kstar sums, n = 1..3", 1.0, kstar_gz},
      {5, "lemma oracle on (Z/9)^2 | 0 and (Z/4)^4 | (Z/2)^2", 300.0, lemma_oracle},
      {6, "self-concordance on random covers", 600.0, self_concordance},
      {7, "lens-space d formula properties", 600.0, lens_properties},
      {8, "parser round trips", 600.0, parser_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.ok = false;
      out.detail = std::string("threw: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.limit_seconds) {
      out.ok = false;
      out.detail = "over time limit";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.3f s / %.0f s", secs, c.limit_seconds);
    std::cout << (out.ok ? "PASS" : "FAIL") << "  [" << c.id << "] " << c.name << "  (" << timing << ")";
    if (!out.detail.empty()) std::cout << "  " << out.detail;
    std::cout << "\n";
    failures += out.ok ? 0 : 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
