#pragma once

#include "qcl/poly.hpp"

#include <string>
#include <utility>

namespace qcl {

// Reduced quotient of Laurent polynomials. Canonical form: the denominator is
// an ordinary polynomial with nonzero constant term and leading coefficient 1;
// any q-power unit lives in the numerator (as a possibly negative minimal
// exponent); numerator and denominator share no polynomial factor.
class RatFn {
 public:
  RatFn() : den_(BigRat(1)) {}
  explicit RatFn(LaurentPoly num) : num_(std::move(num)), den_(BigRat(1)) {}
  explicit RatFn(const BigRat& c) : num_(c), den_(BigRat(1)) {}
  RatFn(LaurentPoly num, LaurentPoly den) : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  static RatFn q_power(long e) { return RatFn(LaurentPoly::q_power(e)); }

  // For callers that already guarantee canonical form (e.g. the factored
  // accumulator); verified in debug builds only.
  static RatFn trusted(LaurentPoly num, LaurentPoly den) {
    RatFn r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    return r;
  }

  const LaurentPoly& num() const { return num_; }
  const LaurentPoly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  bool canonical() const {
    if (den_.is_zero() || !den_.ordinary() || den_.min_exp() != 0) return false;
    if (den_.leading() != 1) return false;
    if (num_.is_zero()) return den_ == LaurentPoly(BigRat(1));
    if (den_.degree() == 0) return true;
    return poly_gcd(num_.ordinary_part(), den_).degree() == 0;
  }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFn operator-(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  RatFn operator-() const {
    RatFn r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFn operator*(const RatFn& a, const RatFn& b) {
    return RatFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RatFn operator/(const RatFn& a, const RatFn& b) {
    if (b.is_zero()) throw std::domain_error("RatFn: division by zero");
    return RatFn(a.num_ * b.den_, a.den_ * b.num_);
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator/=(const RatFn& o) { return *this = *this / o; }

  RatFn pow(long e) const {
    if (e == 0) return RatFn(BigRat(1));
    if (is_zero()) {
      if (e < 0) throw std::domain_error("RatFn: zero to negative power");
      return RatFn();
    }
    RatFn base = *this;
    if (e < 0) base = RatFn(BigRat(1)) / base;
    unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul
                            : static_cast<unsigned long>(e);
    RatFn acc(BigRat(1));
    while (n != 0) {
      if (n & 1ul) acc *= base;
      base *= base;
      n >>= 1;
    }
    return acc;
  }

  bool operator==(const RatFn& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFn& o) const { return !(*this == o); }

  // Requires x != 0 (and denominator nonvanishing at x).
  BigRat eval(const BigRat& x) const {
    BigRat d = den_.eval(x);
    if (d == 0) throw std::domain_error("RatFn::eval: denominator vanishes");
    return num_.eval(x) / d;
  }

  std::string str() const {
    if (den_ == LaurentPoly(BigRat(1))) return num_.str();
    return "(" + num_.str() + ") / (" + den_.str() + ")";
  }

 private:
  void reduce() {
    if (den_.is_zero()) throw std::domain_error("RatFn: zero denominator");
    if (num_.is_zero()) {
      den_ = LaurentPoly(BigRat(1));
      return;
    }
    // Move the denominator's q-power unit into the numerator.
    long shift = den_.min_exp();
    if (shift != 0) {
      den_ = den_.ordinary_part();
      num_ = num_.shifted(-shift);
    }
    if (den_.degree() > 0) {
      long nmin = num_.min_exp();
      LaurentPoly nord = num_.ordinary_part();
      LaurentPoly g = poly_gcd(nord, den_);
      if (g.degree() > 0) {
        LaurentPoly q;
        poly_divides(g, nord, &q);
        num_ = q.shifted(nmin);
        poly_divides(g, den_, &q);
        den_ = std::move(q);
      }
    }
    BigRat lc = den_.leading();
    if (lc != 1) {
      BigRat inv = rat_inv(lc);
      den_ *= inv;
      num_ *= inv;
    }
  }

  LaurentPoly num_, den_;
};

}  // namespace qcl
