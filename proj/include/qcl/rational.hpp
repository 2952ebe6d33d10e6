#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qcl {

using BigInt = mpz_class;

// Arbitrary-precision rational, always in lowest terms with positive
// denominator (maintained by GMP).
using BigRat = mpq_class;

inline BigRat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

inline BigRat rat_inv(const BigRat& x) {
  if (x == 0) throw std::domain_error("rat_inv: zero");
  BigRat r(x.get_den(), x.get_num());
  r.canonicalize();
  return r;
}

// x^e for any integer e; e < 0 requires x != 0.
inline BigRat rat_pow(const BigRat& x, long e) {
  if (e == 0) return BigRat(1);
  if (x == 0) {
    if (e < 0) throw std::domain_error("rat_pow: zero to negative power");
    return BigRat(0);
  }
  BigRat base = e < 0 ? rat_inv(x) : x;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul
                          : static_cast<unsigned long>(e);
  BigRat acc(1);
  while (n != 0) {
    if (n & 1ul) acc *= base;
    base *= base;
    n >>= 1;
  }
  return acc;
}

inline std::string rat_str(const BigRat& x) { return x.get_str(); }

// Accepts "m", "-m", "m/n" with optional sign; throws on malformed input.
inline BigRat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
  BigRat r;
  if (r.set_str(s, 10) != 0)
    throw std::invalid_argument("parse_rat: bad rational '" + s + "'");
  if (r.get_den() == 0) throw std::invalid_argument("parse_rat: zero denominator");
  r.canonicalize();
  return r;
}

}  // namespace qcl
