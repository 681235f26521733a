#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "concordia/dcalc.hpp"
#include "concordia/error.hpp"
#include "concordia/group.hpp"
#include "concordia/knot_expr.hpp"
#include "concordia/linkform.hpp"

namespace concordia {

namespace detail {

// Number of Whitehead-double summands in an expression built only from
// WhD blocks and unknots, or nullopt.
inline std::optional<std::int64_t> whitehead_count(const KnotExpr& e) {
  using K = KnotExpr::Kind;
  switch (e.kind()) {
    case K::unknot: return 0;
    case K::whitehead: return e.value();
    case K::sum: {
      std::int64_t total = 0;
      for (const auto& c : e.children()) {
        const auto n = whitehead_count(c);
        if (!n) return std::nullopt;
        total += *n;
      }
      return total;
    }
    default: return std::nullopt;
  }
}

}  // namespace detail

/// The ν⁺-class of J # J^r for a cable companion J, as a thin(sigma) or
/// V[...] node.
///
/// Rules: J^r ~ J; WhD^{#n} ~ T(2, 2n+1), which is thin with sigma = -2n. A
/// companion given as V[...] declares the sequence of J # J^r directly.
/// Anything else is refused.
inline KnotExpr nu_plus_normalize(const KnotExpr& companion) {
  if (companion.kind() == KnotExpr::Kind::explicit_v) return companion;
  if (const auto n = detail::whitehead_count(companion)) {
    // J # J^r ~ WhD^{#2n} ~ T(2, 4n+1).
    return KnotExpr::thin(-4 * *n);
  }
  throw error(errc::not_normalizable,
              "no nu+ rule reduces '" + print(companion) + " # (" + print(companion) +
                  ")^r' to a thin class; supply its V-sequence as V[...]");
}

inline VSequence vseq_of(const KnotExpr& normalized) {
  switch (normalized.kind()) {
    case KnotExpr::Kind::thin: return vseq_thin(normalized.value());
    case KnotExpr::Kind::explicit_v: return normalized.vseq();
    default: throw error(errc::not_normalizable, "'" + print(normalized) + "' carries no V-sequence");
  }
}

/// Surgery description of the 2-fold branched cover.
///
///   T(2,q)      -> +S^3_q(U)
///   C(2,q;J)    -> +S^3_q(J # J^r)
///   -K          -> every piece reversed
///   K1 # K2     -> concatenation
inline CoverDescription branched_double_cover(const KnotExpr& e) {
  using K = KnotExpr::Kind;
  switch (e.kind()) {
    case K::unknot: return {};
    case K::torus: return CoverDescription({SurgeryPiece(1, e.value())});
    case K::cable: return CoverDescription({SurgeryPiece(1, e.value(), vseq_of(nu_plus_normalize(e.child())))});
    case K::mirror: return branched_double_cover(e.child()).mirrored();
    case K::sum: {
      CoverDescription out;
      for (const auto& c : e.children()) out = out + branched_double_cover(c);
      return out;
    }
    case K::kstar: return branched_double_cover(KnotExpr::kstar_expansion());
    case K::whitehead:
    case K::thin:
    case K::explicit_v:
      throw error(errc::unsupported_feature,
                  "'" + print(e) + "' is only meaningful as a cable companion; it has no branched cover description");
  }
  return {};
}

/// (H_1, λ) of the cover: the sum of Z/n_j with the signed surgery forms.
inline std::pair<FinAbGroup, LinkingForm> cover_homology(const CoverDescription& c) {
  std::vector<std::pair<int, LinkingForm>> parts;
  for (const auto& p : c.pieces()) parts.emplace_back(p.sign, surgery_linking_form(p.n, 1));
  auto form = compose_forms(parts);
  return {form.group(), std::move(form)};
}

/// A fact carried verbatim into reports; never computed.
struct Annotation {
  std::string fact;
  std::string source;

  friend bool operator==(const Annotation&, const Annotation&) = default;
};

/// Declared facts for sums of Kstar terms.
inline std::vector<Annotation> annotations(const KnotExpr& e) {
  auto is_kstar_term = [](const KnotExpr& t) {
    return t.kind() == KnotExpr::Kind::kstar ||
           (t.kind() == KnotExpr::Kind::mirror && t.child().kind() == KnotExpr::Kind::kstar);
  };
  std::size_t count = 0;
  if (is_kstar_term(e)) {
    count = 1;
  } else if (e.kind() == KnotExpr::Kind::sum) {
    for (const auto& t : e.children()) {
      if (!is_kstar_term(t)) return {};
    }
    count = e.children().size();
  } else {
    return {};
  }
  return {
      {"topologically_slice=true",
       "declared: D is topologically slice, so each D_{2,q} is topologically concordant to T_{2,q} "
       "and Kstar to a slice knot"},
      {"smooth_genus_upper=" + std::to_string(count),
       "declared: two crossing changes of opposite sign turn each Kstar summand into a smoothly slice knot"},
  };
}

}  // namespace concordia
