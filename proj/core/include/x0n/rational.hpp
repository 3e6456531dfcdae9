#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace x0n {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int rat_den(const Rat& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rat& x) { return rat_den(x) == 1; }

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(const Int& x) { return x.convert_to<double>(); }

inline Int int_pow(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

// x^e for integer e of either sign
inline Rat rat_pow(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  bool neg = e < 0;
  unsigned long a = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rat r(int_pow(rat_num(x), a), int_pow(rat_den(x), a));
  if (neg) {
    if (r == 0) throw std::domain_error("rat_pow: 0^negative");
    r = Rat(1) / r;
  }
  return r;
}

inline Int int_gcd(Int a, Int b) { return boost::multiprecision::gcd(a, b); }

// gcd on positive rationals: the largest rational whose integer multiples hit both
inline Rat rat_gcd(const Rat& a, const Rat& b) {
  if (a == 0) return b < 0 ? Rat(-b) : b;
  if (b == 0) return a < 0 ? Rat(-a) : a;
  Int na = rat_num(a), da = rat_den(a), nb = rat_num(b), db = rat_den(b);
  if (na < 0) na = -na;
  if (nb < 0) nb = -nb;
  return Rat(int_gcd(na * db, nb * da), da * db);
}

inline std::string rat_to_string(const Rat& x) {
  if (is_integer(x)) return rat_num(x).str();
  return rat_num(x).str() + "/" + rat_den(x).str();
}

// parses "p", "-p", "p/q"
inline Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + s);
  }
}

// p-adic valuation of a nonzero rational
inline long ord_p(const Rat& x, long p) {
  if (x == 0) throw std::domain_error("ord_p of zero");
  long v = 0;
  Int n = rat_num(x), d = rat_den(x), P = p;
  while (n % P == 0) { n /= P; ++v; }
  while (d % P == 0) { d /= P; --v; }
  return v;
}

}  // namespace x0n
