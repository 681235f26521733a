#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "concordia/error.hpp"

namespace concordia {

/// Exact arbitrary-precision rational; every correction-term value uses it.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Always "num/den", including integers ("8/1").
inline std::string to_fraction_string(const Rational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw error(errc::invalid_argument, "zero denominator in '" + text + "'");
    return Rational(num, den);
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    throw error(errc::invalid_argument, "malformed rational '" + text + "'");
  }
}

}  // namespace concordia
