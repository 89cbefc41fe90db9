// Arbitrary-precision rational arithmetic helpers on top of boost::multiprecision.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "hermsig/errors.hpp"

namespace hermsig {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// num/den with any signs; canonical (reduced, positive denominator) by construction.
inline Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) fail(errc::parse_error, "zero denominator");
  return Rational(num) / Rational(den);
}

inline int sign_of(const Rational& r) { return r.sign(); }

inline BigInt isqrt_floor(const BigInt& n) {
  if (n < 0) fail(errc::not_a_perfect_square, "isqrt of negative");
  return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  BigInt r = boost::multiprecision::sqrt(n);
  return r * r == n;
}

inline bool is_square_rational(const Rational& q) {
  return q >= 0 && is_perfect_square(numerator(q)) && is_perfect_square(denominator(q));
}

// Exact square root of a rational that must be a perfect square.
inline Rational sqrt_rational(const Rational& q) {
  if (!is_square_rational(q)) fail(errc::not_a_perfect_square, "sqrt of a non-square rational");
  return Rational(isqrt_floor(numerator(q))) / Rational(isqrt_floor(denominator(q)));
}

// "p/q" or "p"; also tolerates surrounding sign on the numerator only.
inline Rational parse_rational(const std::string& text) {
  try {
    auto slash = text.find('/');
    if (slash == std::string::npos) return Rational(BigInt(text));
    BigInt num(text.substr(0, slash));
    BigInt den(text.substr(slash + 1));
    return make_rational(num, den);
  } catch (const std::exception&) {
    fail(errc::parse_error, "bad rational literal '" + text + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace hermsig
