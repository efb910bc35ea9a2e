#pragma once

// Exact integer/rational helpers on top of Boost.Multiprecision.

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "permcode/errors.hpp"

namespace permcode {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt factorial(unsigned n) {
  BigInt result = 1;
  std::uint64_t chunk = 1;
  for (unsigned k = 2; k <= n; ++k) {
    if (chunk > std::numeric_limits<std::uint64_t>::max() / k) {
      result *= chunk;
      chunk = 1;
    }
    chunk *= k;
  }
  result *= chunk;
  return result;
}

inline BigInt power(unsigned base, unsigned exponent) {
  return boost::multiprecision::pow(BigInt(base), exponent);
}

/// Multiplies positive small factors, batching them in a 64-bit word before
/// touching the big integer.
class ProductAccumulator {
public:
  void multiply(std::uint64_t factor) {
    if (chunk_ > std::numeric_limits<std::uint64_t>::max() / factor) {
      value_ *= chunk_;
      chunk_ = 1;
    }
    chunk_ *= factor;
  }

  BigInt value() const { return value_ * chunk_; }

private:
  BigInt value_ = 1;
  std::uint64_t chunk_ = 1;
};

/// Quotient of an exact division; throws InvariantError if there is a remainder.
inline BigInt exact_quotient(const BigInt& numerator, const BigInt& denominator,
                             const char* what) {
  BigInt quotient;
  BigInt remainder;
  boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
  ensure_invariant(remainder == 0, std::string("inexact division in ") + what);
  return quotient;
}

/// Natural logarithm of a positive big integer, accurate to double precision.
inline double log_of(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  const auto bits = boost::multiprecision::msb(value);
  if (bits < 1000) return std::log(value.convert_to<double>());
  const unsigned shift = static_cast<unsigned>(bits) - 60;
  const BigInt top = value >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

inline double to_double(const Rational& value) {
  return value.convert_to<double>();
}

/// "p/q" (or "p" when the denominator is 1).
inline std::string to_fraction_string(const Rational& value) {
  const auto num = boost::multiprecision::numerator(value);
  const auto den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

/// Decimal rendering with the given number of significant digits.
inline std::string to_decimal_string(const Rational& value, int significant = 12) {
  using Decimal = boost::multiprecision::cpp_dec_float_50;
  const Decimal num(boost::multiprecision::numerator(value));
  const Decimal den(boost::multiprecision::denominator(value));
  const Decimal quotient = num / den;
  return quotient.str(significant, std::ios_base::fmtflags(0));
}

/// Parses "p/q" or "p" back into a rational.
inline Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

}  // namespace permcode
