#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "dioph/error.hpp"

namespace dioph {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Int128 = __int128;

inline Integer numerator(const Rational& q) {
  return boost::multiprecision::numerator(q);
}
inline Integer denominator(const Rational& q) {
  return boost::multiprecision::denominator(q);
}

inline Integer floor(const Rational& q) {
  Integer num = numerator(q);
  Integer den = denominator(q);
  Integer quot, rem;
  boost::multiprecision::divide_qr(num, den, quot, rem);
  if (rem < 0) --quot;
  return quot;
}

inline Integer ceil(const Rational& q) { return -floor(Rational(-q)); }

inline Integer floor_div(const Integer& a, const Integer& b) {
  return floor(Rational(a, b));
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }
inline Integer abs(const Integer& z) { return z < 0 ? Integer(-z) : z; }

template <class T>
T pow_int(const T& base, long exponent) {
  if (exponent < 0) return T(1) / pow_int(base, -exponent);
  T result = 1;
  T b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  return boost::multiprecision::gcd(a, b);
}
inline Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return abs(Integer(a / gcd(a, b) * b));
}

// Accepts "p", "-p/q" and plain decimals such as "0.125" or "1e-3".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.erase(s.begin());
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.pop_back();
  if (s.empty()) throw Error(ErrorCode::kParse, "empty rational");
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      Integer num(s.substr(0, slash));
      Integer den(s.substr(slash + 1));
      if (den == 0) throw Error(ErrorCode::kParse, "zero denominator: " + s);
      return Rational(num, den);
    }
    auto exp_pos = s.find_first_of("eE");
    long exponent = 0;
    std::string mantissa = s;
    if (exp_pos != std::string::npos) {
      exponent = std::stol(s.substr(exp_pos + 1));
      mantissa = s.substr(0, exp_pos);
    }
    bool negative = !mantissa.empty() && mantissa.front() == '-';
    if (negative || (!mantissa.empty() && mantissa.front() == '+'))
      mantissa.erase(mantissa.begin());
    auto dot = mantissa.find('.');
    if (dot != std::string::npos) {
      exponent -= static_cast<long>(mantissa.size() - dot - 1);
      mantissa.erase(dot, 1);
    }
    if (mantissa.empty() ||
        mantissa.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::kParse, "not a rational: " + s);
    mantissa.erase(0, std::min(mantissa.find_first_not_of('0'), mantissa.size() - 1));
    Rational value{Integer(mantissa)};
    value *= pow_int(Rational(10), exponent);
    return negative ? Rational(-value) : value;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error(ErrorCode::kParse, "not a rational: " + s);
  }
}

inline std::string to_string(const Integer& z) { return z.str(); }

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline double to_double(const Integer& z) { return z.convert_to<double>(); }

// Natural log of a positive rational that may be far outside double range.
inline double log_double(const Rational& q) {
  auto log_int = [](const Integer& z) {
    std::size_t bits = boost::multiprecision::msb(z) + 1;
    if (bits <= 900) return std::log(z.convert_to<double>());
    std::size_t shift = bits - 900;
    Integer top = z >> shift;
    return std::log(top.convert_to<double>()) +
           static_cast<double>(shift) * std::log(2.0);
  };
  return log_int(numerator(q)) - log_int(denominator(q));
}

inline Integer to_integer(Int128 v) {
  bool negative = v < 0;
  unsigned __int128 u = negative ? static_cast<unsigned __int128>(-(v + 1)) + 1
                                 : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<std::uint64_t>(u >> 64);
  Integer lo = static_cast<std::uint64_t>(u);
  Integer result = (hi << 64) + lo;
  return negative ? Integer(-result) : result;
}

// Values are always guarded by magnitude checks before conversion.
inline Int128 to_int128(const Integer& z) {
  Integer a = abs(z);
  if (boost::multiprecision::msb(a + 1) >= 126)
    throw Error(ErrorCode::kOverflow, "integer exceeds 126 bits");
  std::uint64_t lo = static_cast<std::uint64_t>(a & Integer(~std::uint64_t{0}));
  std::uint64_t hi = static_cast<std::uint64_t>(a >> 64);
  Int128 v = (static_cast<Int128>(hi) << 64) | static_cast<Int128>(lo);
  return z < 0 ? -v : v;
}

// Bit length of |z|; zero has length 0.
inline std::size_t bit_length(const Integer& z) {
  if (z == 0) return 0;
  return boost::multiprecision::msb(abs(z)) + 1;
}

}  // namespace dioph
