#pragma once

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "concordia/cover.hpp"
#include "concordia/dcalc.hpp"
#include "concordia/knot_expr.hpp"
#include "concordia/obstruct.hpp"
#include "concordia/rational.hpp"

namespace concordia {

struct DbarEntry {
  GroupElement element;
  Rational value;

  friend bool operator==(const DbarEntry&, const DbarEntry&) = default;
};

/// Everything the pipeline learns about one knot expression.
struct ObstructionReport {
  std::string knot;
  CoverDescription cover;
  std::vector<std::int64_t> homology_invariants;
  std::int64_t gz_lower = 0;
  /// Best bound over the primes examined; bound 0 and no prime when none apply.
  std::optional<GzcBound> gzc;
  std::vector<GzcBound> gzc_by_prime;
  std::vector<DbarEntry> dbar_table;
  std::vector<Annotation> annotations;

  friend bool operator==(const ObstructionReport&, const ObstructionReport&) = default;
};

inline std::vector<DbarEntry> dbar_entries(const CoverDescription& c, std::int64_t p) {
  std::vector<DbarEntry> out;
  for (auto& [g, v] : dbar_table(c, p)) out.push_back({std::move(g), std::move(v)});
  return out;
}

/// parse -> branched cover -> homology -> g_Z bound -> g_Z^c bounds.
///
/// With `primes` empty, every prime meeting the (Z/p^2)^{2n} shape is used;
/// an explicitly requested prime that does not meet it raises
/// hypothesis-not-met.
inline ObstructionReport build_report(const std::string& expr_text, const std::vector<std::int64_t>& primes = {}) {
  const auto expr = parse(expr_text);
  ObstructionReport r;
  r.knot = print(expr);
  r.cover = branched_double_cover(expr);
  r.homology_invariants = r.cover.group().canonical_invariants();
  r.gz_lower = static_cast<std::int64_t>(gz_lower_bound(r.cover));
  const auto chosen = primes.empty() ? eligible_primes(r.cover) : primes;
  for (auto p : chosen) r.gzc_by_prime.push_back(gzc_lower_bound_detail(r.cover, p));
  for (const auto& b : r.gzc_by_prime) {
    if (!r.gzc || b.bound > r.gzc->bound) r.gzc = b;
  }
  if (r.gzc) r.dbar_table = dbar_entries(r.cover, r.gzc->prime);
  r.annotations = annotations(expr);
  return r;
}

// ---------------------------------------------------------------------------
// JSON document.

inline nlohmann::ordered_json to_json(const GzcBound& b) {
  return {{"p", b.prime}, {"bound", b.bound}, {"null_rank", b.null_rank}, {"half_rank", b.half_rank}};
}

inline nlohmann::ordered_json to_json(const ObstructionReport& r) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["knot"] = r.knot;
  ordered_json cover = ordered_json::array();
  for (const auto& p : r.cover.pieces()) {
    cover.push_back({{"sign", p.sign}, {"n", p.n}, {"vseq", p.vseq.values()}});
  }
  doc["cover"] = std::move(cover);
  doc["homology_invariants"] = r.homology_invariants;
  doc["gz_lower"] = r.gz_lower;
  if (r.gzc) {
    doc["gzc"] = to_json(*r.gzc);
  } else {
    doc["gzc"] = {{"p", nullptr}, {"bound", 0}, {"null_rank", 0}, {"half_rank", 0}};
  }
  ordered_json by_prime = ordered_json::array();
  for (const auto& b : r.gzc_by_prime) by_prime.push_back(to_json(b));
  doc["gzc_by_prime"] = std::move(by_prime);
  ordered_json table = ordered_json::array();
  for (const auto& e : r.dbar_table) {
    table.push_back({{"element", e.element.coords}, {"value", to_fraction_string(e.value)}});
  }
  doc["dbar_table"] = std::move(table);
  ordered_json notes = ordered_json::array();
  for (const auto& a : r.annotations) notes.push_back({{"fact", a.fact}, {"source", a.source}});
  doc["annotations"] = std::move(notes);
  return doc;
}

inline GzcBound gzc_from_json(const nlohmann::ordered_json& j) {
  GzcBound b;
  b.prime = j.at("p").get<std::int64_t>();
  b.bound = j.at("bound").get<std::int64_t>();
  b.null_rank = j.at("null_rank").get<std::size_t>();
  b.half_rank = j.at("half_rank").get<std::size_t>();
  return b;
}

inline ObstructionReport report_from_json(const nlohmann::ordered_json& doc) {
  try {
    ObstructionReport r;
    r.knot = doc.at("knot").get<std::string>();
    std::vector<SurgeryPiece> pieces;
    for (const auto& p : doc.at("cover")) {
      pieces.emplace_back(p.at("sign").get<int>(), p.at("n").get<std::int64_t>(),
                          VSequence::from_values(p.at("vseq").get<std::vector<std::int64_t>>()));
    }
    r.cover = CoverDescription(std::move(pieces));
    r.homology_invariants = doc.at("homology_invariants").get<std::vector<std::int64_t>>();
    r.gz_lower = doc.at("gz_lower").get<std::int64_t>();
    if (!doc.at("gzc").at("p").is_null()) r.gzc = gzc_from_json(doc.at("gzc"));
    for (const auto& b : doc.at("gzc_by_prime")) r.gzc_by_prime.push_back(gzc_from_json(b));
    for (const auto& e : doc.at("dbar_table")) {
      r.dbar_table.push_back({GroupElement{e.at("element").get<std::vector<std::int64_t>>()},
                              parse_fraction(e.at("value").get<std::string>())});
    }
    for (const auto& a : doc.at("annotations")) {
      r.annotations.push_back({a.at("fact").get<std::string>(), a.at("source").get<std::string>()});
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw error(errc::invalid_argument, std::string("malformed report document: ") + e.what());
  }
}

}  // namespace concordia
