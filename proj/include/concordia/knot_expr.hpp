#pragma once

#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "concordia/dcalc.hpp"
#include "concordia/error.hpp"

namespace concordia {

/// Abstract syntax tree for knot expressions.
///
/// Grammar (whitespace insensitive):
///
///     expr := term ("#" term)*
///     term := "-" term | atom
///     atom := "T(" INT "," INT ")" | "C(" INT "," INT ";" expr ")"
///           | "D" | "WhD^" INT | "thin(" SIGNED_INT ")" | "V[" INT ("," INT)* "]"
///           | "U" | "Kstar" | "(" expr ")"
class KnotExpr {
 public:
  enum class Kind {
    unknot,
    torus,      ///< T(2, q)
    cable,      ///< C(2, q; companion), winding 2
    mirror,     ///< reverse of the mirror image
    sum,        ///< connected sum of two or more terms
    whitehead,  ///< n-fold self-sum of the positive Whitehead double of T(2,3)
    thin,       ///< a thin knot class with signature sigma
    explicit_v, ///< declared V-sequence
    kstar,
  };

  static KnotExpr unknot() { return KnotExpr(Kind::unknot); }

  static KnotExpr torus(std::int64_t q) {
    check_odd_q(q);
    KnotExpr e(Kind::torus);
    e.value_ = q;
    return e;
  }

  static KnotExpr cable(std::int64_t q, KnotExpr companion) {
    check_odd_q(q);
    KnotExpr e(Kind::cable);
    e.value_ = q;
    e.children_.push_back(std::move(companion));
    return e;
  }

  static KnotExpr mirror(KnotExpr child) {
    KnotExpr e(Kind::mirror);
    e.children_.push_back(std::move(child));
    return e;
  }

  static KnotExpr sum(std::vector<KnotExpr> terms) {
    if (terms.size() < 2) throw error(errc::invalid_argument, "a sum needs at least two terms");
    KnotExpr e(Kind::sum);
    e.children_ = std::move(terms);
    return e;
  }

  /// `spelled_d` keeps the "D" alias (n = 4) for printing.
  static KnotExpr whitehead(std::int64_t n, bool spelled_d = false) {
    if (n < 1) throw error(errc::semantic_error, "WhD^n needs n >= 1");
    if (spelled_d && n != 4) throw error(errc::invalid_argument, "the D alias is WhD^4");
    KnotExpr e(Kind::whitehead);
    e.value_ = n;
    e.spelled_d_ = spelled_d;
    return e;
  }

  static KnotExpr d() { return whitehead(4, true); }

  static KnotExpr thin(std::int64_t sigma) {
    if (sigma % 2 != 0) throw error(errc::semantic_error, "thin(sigma) needs an even signature");
    KnotExpr e(Kind::thin);
    e.value_ = sigma;
    return e;
  }

  static KnotExpr explicit_v(VSequence v) {
    KnotExpr e(Kind::explicit_v);
    e.vseq_ = std::move(v);
    return e;
  }

  static KnotExpr kstar() { return KnotExpr(Kind::kstar); }

  /// C(2,25;D) # -C(2,23;D) # -T(2,25) # T(2,23)
  static KnotExpr kstar_expansion() {
    return sum({cable(25, d()), mirror(cable(23, d())), mirror(torus(25)), torus(23)});
  }

  Kind kind() const noexcept { return kind_; }
  /// q for torus and cable nodes, n for whitehead, sigma for thin.
  std::int64_t value() const noexcept { return value_; }
  bool spelled_d() const noexcept { return spelled_d_; }
  const VSequence& vseq() const noexcept { return vseq_; }
  const std::vector<KnotExpr>& children() const noexcept { return children_; }
  const KnotExpr& child() const { return children_.at(0); }
  source_pos pos() const noexcept { return pos_; }

  KnotExpr& at(source_pos p) & {
    pos_ = p;
    return *this;
  }
  KnotExpr&& at(source_pos p) && {
    pos_ = p;
    return std::move(*this);
  }

  /// Structural equality; source positions are ignored.
  friend bool operator==(const KnotExpr& a, const KnotExpr& b) {
    return a.kind_ == b.kind_ && a.value_ == b.value_ && a.spelled_d_ == b.spelled_d_ &&
           a.vseq_ == b.vseq_ && a.children_ == b.children_;
  }

 private:
  explicit KnotExpr(Kind k) : kind_(k) {}

  static void check_odd_q(std::int64_t q) {
    if (q < 3 || q % 2 == 0) {
      throw error(errc::semantic_error, "(2,q) needs odd q >= 3, got q=" + std::to_string(q));
    }
  }

  Kind kind_;
  std::int64_t value_ = 0;
  bool spelled_d_ = false;
  VSequence vseq_;
  std::vector<KnotExpr> children_;
  source_pos pos_;
};

namespace detail {

inline std::string print_term(const KnotExpr& e);

inline std::string print_expr(const KnotExpr& e) {
  using K = KnotExpr::Kind;
  switch (e.kind()) {
    case K::unknot: return "U";
    case K::torus: return "T(2," + std::to_string(e.value()) + ")";
    case K::cable: return "C(2," + std::to_string(e.value()) + ";" + print_expr(e.child()) + ")";
    case K::mirror: return "-" + print_term(e.child());
    case K::sum: {
      std::string out;
      for (std::size_t i = 0; i < e.children().size(); ++i) {
        if (i) out += " # ";
        out += print_term(e.children()[i]);
      }
      return out;
    }
    case K::whitehead: return e.spelled_d() ? "D" : "WhD^" + std::to_string(e.value());
    case K::thin: return "thin(" + std::to_string(e.value()) + ")";
    case K::explicit_v: {
      std::string out = "V[";
      const auto& v = e.vseq().values();
      for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
      return out + "]";
    }
    case K::kstar: return "Kstar";
  }
  return {};
}

inline std::string print_term(const KnotExpr& e) {
  return e.kind() == KnotExpr::Kind::sum ? "(" + print_expr(e) + ")" : print_expr(e);
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  KnotExpr parse_all() {
    auto e = expr();
    skip_ws();
    if (i_ < text_.size()) fail("unexpected '" + std::string(1, text_[i_]) + "' after expression");
    return e;
  }

 private:
  KnotExpr expr() {
    skip_ws();
    const auto start = here();
    std::vector<KnotExpr> terms;
    terms.push_back(term());
    while (accept('#')) terms.push_back(term());
    if (terms.size() == 1) return std::move(terms.front());
    return KnotExpr::sum(std::move(terms)).at(start);
  }

  KnotExpr term() {
    skip_ws();
    const auto start = here();
    if (accept('-')) return KnotExpr::mirror(term()).at(start);
    return atom();
  }

  KnotExpr atom() {
    skip_ws();
    const auto start = here();
    if (accept('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    const std::string word = identifier();
    if (word.empty()) {
      if (i_ >= text_.size()) fail("unexpected end of input, expected a knot");
      fail("unexpected '" + std::string(1, text_[i_]) + "', expected a knot");
    }
    if (word == "U") return KnotExpr::unknot().at(start);
    if (word == "Kstar") return KnotExpr::kstar().at(start);
    if (word == "D") return KnotExpr::d().at(start);
    if (word == "WhD") {
      expect('^');
      const auto pos = here();
      const auto n = integer(false);
      return semantic(pos, [&] { return KnotExpr::whitehead(n); }).at(start);
    }
    if (word == "T" || word == "C") {
      expect('(');
      const auto p_pos = here();
      const auto p = integer(false);
      expect(',');
      const auto q_pos = here();
      const auto q = integer(false);
      if (p != 2) {
        throw parse_error(errc::unsupported_feature, p_pos,
                          "only (2,q) torus knots and cables are supported, got p=" + std::to_string(p));
      }
      if (word == "T") {
        expect(')');
        return semantic(q_pos, [&] { return KnotExpr::torus(q); }).at(start);
      }
      expect(';');
      auto companion = expr();
      expect(')');
      return semantic(q_pos, [&] { return KnotExpr::cable(q, std::move(companion)); }).at(start);
    }
    if (word == "thin") {
      expect('(');
      const auto pos = here();
      const auto sigma = integer(true);
      expect(')');
      return semantic(pos, [&] { return KnotExpr::thin(sigma); }).at(start);
    }
    if (word == "V") {
      expect('[');
      const auto pos = here();
      std::vector<std::int64_t> values{integer(false)};
      while (accept(',')) values.push_back(integer(false));
      expect(']');
      return semantic(pos, [&] {
               try {
                 return KnotExpr::explicit_v(VSequence::from_values(values));
               } catch (const error& err) {
                 throw error(errc::semantic_error, err.what());
               }
             }).at(start);
    }
    throw parse_error(errc::parse_error, start, "unknown knot name '" + word + "'");
  }

  template <class Build>
  KnotExpr semantic(source_pos pos, Build&& build) {
    try {
      return build();
    } catch (const parse_error&) {
      throw;
    } catch (const error& err) {
      throw parse_error(err.code(), pos, strip_code(err.what()));
    }
  }

  static std::string strip_code(const std::string& what) {
    const auto colon = what.find(": ");
    return colon == std::string::npos ? what : what.substr(colon + 2);
  }

  std::int64_t integer(bool allow_sign) {
    skip_ws();
    const auto start = here();
    bool negative = false;
    if (allow_sign && i_ < text_.size() && (text_[i_] == '-' || text_[i_] == '+')) {
      negative = text_[i_] == '-';
      advance();
    }
    if (i_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[i_]))) {
      fail("expected an integer");
    }
    std::int64_t v = 0;
    while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
      const int digit = text_[i_] - '0';
      if (v > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
        throw parse_error(errc::semantic_error, start, "integer literal out of range");
      }
      v = v * 10 + digit;
      advance();
    }
    return negative ? -v : v;
  }

  std::string identifier() {
    skip_ws();
    std::string out;
    while (i_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[i_]))) {
      out += text_[i_];
      advance();
    }
    return out;
  }

  bool accept(char c) {
    skip_ws();
    if (i_ < text_.size() && text_[i_] == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) {
      if (i_ >= text_.size()) fail(std::string("unexpected end of input, expected '") + c + "'");
      fail(std::string("expected '") + c + "', found '" + text_[i_] + "'");
    }
  }

  void skip_ws() {
    while (i_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[i_]))) advance();
  }

  void advance() {
    if (text_[i_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++i_;
  }

  source_pos here() const { return pos_; }

  [[noreturn]] void fail(const std::string& msg) const { throw parse_error(errc::parse_error, pos_, msg); }

  std::string_view text_;
  std::size_t i_ = 0;
  source_pos pos_;
};

}  // namespace detail

inline KnotExpr parse(std::string_view text) { return detail::Parser(text).parse_all(); }

/// Canonical text form; parse(print(e)) == e.
inline std::string print(const KnotExpr& e) { return detail::print_expr(e); }

}  // namespace concordia
