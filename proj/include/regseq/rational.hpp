#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace regseq {

using integer = boost::multiprecision::cpp_int;

// Exact rational scalar. Always stored in lowest terms with a positive
// denominator (maintained by cpp_rational itself).
using rational = boost::multiprecision::cpp_rational;

inline integer rat_num(const rational& r) { return numerator(r); }
inline integer rat_den(const rational& r) { return denominator(r); }

inline rational rat_abs(const rational& r) { return r < 0 ? rational(-r) : r; }

inline integer int_pow(integer base, unsigned exp) {
  integer acc = 1;
  while (exp) {
    if (exp & 1u) acc *= base;
    base *= base;
    exp >>= 1u;
  }
  return acc;
}

inline rational rat_pow(const rational& base, unsigned exp) {
  return rational(int_pow(rat_num(base), exp), int_pow(rat_den(base), exp));
}

// Nearest double of num/den, ties to even.
inline double to_double(const rational& r) {
  const integer& num = numerator(r);
  if (num == 0) return 0.0;
  const bool neg = num < 0;
  integer a = neg ? integer(-num) : num;
  integer b = denominator(r);

  // Shift so that floor(a'/b') has exactly 54 significand bits, then round
  // the extra bit with the remainder as sticky.
  const long abits = static_cast<long>(boost::multiprecision::msb(a)) + 1;
  const long bbits = static_cast<long>(boost::multiprecision::msb(b)) + 1;
  long shift = 54 - (abits - bbits);
  if (shift > 0)
    a <<= shift;
  else if (shift < 0)
    b <<= -shift;

  integer q, rem;
  boost::multiprecision::divide_qr(a, b, q, rem);
  long qbits = static_cast<long>(boost::multiprecision::msb(q)) + 1;
  if (qbits == 55) {  // one bit long; drop it into the rounding position
    if (boost::multiprecision::bit_test(q, 0) && rem == 0) rem = 1;
    q >>= 1;
    --shift;
    qbits = 54;
  }
  // q has 54 bits; bit 0 is the round bit.
  const bool round_bit = boost::multiprecision::bit_test(q, 0);
  const bool sticky = rem != 0;
  q >>= 1;
  if (round_bit && (sticky || boost::multiprecision::bit_test(q, 0))) ++q;
  double mant = static_cast<double>(static_cast<std::uint64_t>(q));
  double out = std::ldexp(mant, static_cast<int>(-(shift - 1)));
  return neg ? -out : out;
}

inline double to_double(const integer& n) { return to_double(rational(n)); }

// Exact rational equal to the given double (doubles are dyadic rationals).
inline rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite double");
  return rational(x);
}

// Accepts "p", "-p", "p/q", "-p/q" with arbitrary-precision components.
inline rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return rational(integer(text));
    integer p(text.substr(0, slash));
    integer q(text.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return rational(p, q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("bad rational: '" + text + "'");
  }
}

inline std::string format_rational(const rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace regseq
