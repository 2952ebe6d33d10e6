#pragma once

#include "qcl/ratfn.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qcl {

namespace detail {

inline uint64_t fnv1a64(std::string_view s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Is r the p-th power of a rational? (p >= 2)
inline bool is_rational_power(const BigRat& r, unsigned long p) {
  if (r == 0) return true;
  if (p % 2 == 0 && r < 0) return false;
  BigInt root;
  BigInt num = r.get_num();
  if (mpz_root(root.get_mpz_t(), num.get_mpz_t(), p) == 0) return false;
  BigInt den = r.get_den();
  return mpz_root(root.get_mpz_t(), den.get_mpz_t(), p) != 0;
}

// Irreducibility of q^m - r over the rationals (r != 0): reducible exactly
// when r is a p-th power for some prime p dividing m, or m is divisible by 4
// and r = -4 t^4.
inline bool binomial_irreducible(long m, const BigRat& r) {
  if (m == 1) return true;
  long rest = m;
  for (long p = 2; p * p <= rest; ++p) {
    if (rest % p != 0) continue;
    if (is_rational_power(r, static_cast<unsigned long>(p))) return false;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1 && is_rational_power(r, static_cast<unsigned long>(rest))) return false;
  if (m % 4 == 0) {
    BigRat t = -r / 4;
    if (t > 0 && is_rational_power(t, 4)) return false;
  }
  return true;
}

}  // namespace detail

// Rational function kept as an expanded Laurent numerator over a multiset of
// small monic denominator factors (each with nonzero constant term). All sum
// and prefactor evaluation runs on this representation so that reduction never
// needs a large polynomial gcd: denominator factors are recorded at
// construction time, and almost all of them are irreducible by construction.
class FRat {
 public:
  struct DenFactor {
    LaurentPoly p;  // monic, ordinary, p(0) != 0
    long mult;
    bool irred;
  };

  FRat() = default;  // zero
  explicit FRat(LaurentPoly num) : num_(std::move(num)) {}
  explicit FRat(const BigRat& c) : num_(c) {}

  static FRat one() { return FRat(BigRat(1)); }

  bool is_zero() const { return num_.is_zero(); }
  const LaurentPoly& num() const { return num_; }
  const std::vector<DenFactor>& den_factors() const { return den_; }

  void mul_rat(const BigRat& c) { num_ *= c; }
  void mul_qpow(long e) { num_ = num_.shifted(e); }
  void mul_poly(const LaurentPoly& p) { num_ *= p; }
  void neg() { num_ = -num_; }

  // Multiply by (1 - c*q^e)^power for any integer power. Negative powers
  // factor the binomial onto the denominator list.
  void mul_linfac(const BigRat& c, long e, long power) {
    if (power == 0 || is_zero()) return;
    if (c == 0) return;
    if (power > 0) {
      num_ *= LaurentPoly::one_minus(c, e).pow(static_cast<unsigned long>(power));
      return;
    }
    long t = -power;
    if (e == 0) {
      BigRat r = BigRat(1) - c;
      if (r == 0) throw std::domain_error("FRat: vanishing denominator factor 1-c");
      mul_rat(rat_pow(r, -t));
      return;
    }
    if (e > 0) {
      mul_rat(rat_pow(-c, -t));
      push_binomial(e, rat_inv(c), t);
    } else {
      mul_qpow(-e * t);
      push_binomial(-e, c, t);
    }
  }

  // Multiply by [m]^power; [0] = 0, [1] = 1, [-m] = -q^{-m}[m].
  void mul_qint(long m, long power) {
    if (power == 0 || is_zero()) return;
    if (m == 0) {
      if (power < 0) throw std::domain_error("FRat: division by qint(0)");
      num_ = LaurentPoly();
      return;
    }
    if (m < 0) {
      if (power % 2 != 0) mul_rat(BigRat(-1));
      mul_qpow(m * power);
      m = -m;
    }
    if (m == 1) return;
    if (power > 0) {
      num_ *= qint_poly(m).pow(static_cast<unsigned long>(power));
    } else {
      for (long d : detail::divisors(m))
        if (d > 1) den_push(cyclotomic(d), -power, true);
    }
  }

  void mul_phi(long n, long power) {
    if (power == 0 || is_zero()) return;
    if (power > 0)
      num_ *= cyclotomic(n).pow(static_cast<unsigned long>(power));
    else
      den_push(cyclotomic(n), -power, true);
  }

  // Divide by p^mult for a known monic ordinary factor with p(0) != 0.
  void div_factor(const LaurentPoly& p, long mult, bool irred) {
    if (is_zero() || mult == 0) return;
    den_push(p, mult, irred);
  }

  void mul(const FRat& o) {
    num_ *= o.num_;
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    for (const auto& f : o.den_) den_push(f.p, f.mult, f.irred);
  }

  void add(const FRat& o) {
    if (o.is_zero()) return;
    if (is_zero()) {
      *this = o;
      return;
    }
    std::vector<DenFactor> merged = den_;
    for (const auto& f : o.den_) {
      bool found = false;
      for (auto& g : merged) {
        if (g.p == f.p) {
          g.mult = std::max(g.mult, f.mult);
          found = true;
          break;
        }
      }
      if (!found) merged.push_back(f);
    }
    LaurentPoly cof_self(BigRat(1)), cof_other(BigRat(1));
    for (const auto& g : merged) {
      long ms = 0, mo = 0;
      for (const auto& f : den_)
        if (f.p == g.p) ms = f.mult;
      for (const auto& f : o.den_)
        if (f.p == g.p) mo = f.mult;
      if (g.mult > ms) cof_self *= g.p.pow(static_cast<unsigned long>(g.mult - ms));
      if (g.mult > mo) cof_other *= g.p.pow(static_cast<unsigned long>(g.mult - mo));
    }
    num_ = num_ * cof_self + o.num_ * cof_other;
    den_ = std::move(merged);
    if (num_.is_zero()) den_.clear();
  }

  void sub(const FRat& o) {
    FRat t = o;
    t.neg();
    add(t);
  }

  // Multiplicity of the (monic ordinary) factor p on the denominator list.
  long den_mult(const LaurentPoly& p) const {
    for (const auto& f : den_)
      if (f.p == p) return f.mult;
    return 0;
  }

  bool den_all_irreducible() const {
    for (const auto& f : den_)
      if (!f.irred) return false;
    return true;
  }

  // Multiplicity of p in the numerator, counted up to cap.
  long num_val_capped(const LaurentPoly& p, long cap) const {
    long v = 0;
    LaurentPoly cur = num_.ordinary_part();
    LaurentPoly quot;
    while (v < cap && !cur.is_zero() && poly_divides(p, cur, &quot)) {
      cur = std::move(quot);
      ++v;
    }
    if (num_.is_zero()) return cap;
    return v;
  }

  // Canonical reduced form. Irreducible denominator factors cancel by exact
  // division; any composite-risk factors fall back to a real gcd (they only
  // arise from user-supplied coefficients outside the sampling pool).
  RatFn to_ratfn() const {
    if (is_zero()) return RatFn();
    long nmin = num_.min_exp();
    LaurentPoly n = num_.ordinary_part();
    LaurentPoly den(BigRat(1));
    LaurentPoly composite(BigRat(1));
    for (const auto& f : den_) {
      long mult = f.mult;
      if (f.irred) {
        LaurentPoly quot;
        while (mult > 0 && poly_divides(f.p, n, &quot)) {
          n = std::move(quot);
          --mult;
        }
        if (mult > 0) den *= f.p.pow(static_cast<unsigned long>(mult));
      } else {
        composite *= f.p.pow(static_cast<unsigned long>(mult));
      }
    }
    if (composite.degree() > 0) {
      while (true) {
        LaurentPoly g = poly_gcd(n, composite);
        if (g.degree() == 0) break;
        LaurentPoly quot;
        poly_divides(g, n, &quot);
        n = std::move(quot);
        poly_divides(g, composite, &quot);
        composite = std::move(quot);
      }
      den *= composite;
    }
    // den is monic (product of monic factors); constant terms are nonzero.
    BigRat lc = den.is_zero() ? BigRat(1) : den.leading();
    if (lc != 1) {
      den *= rat_inv(lc);
      n *= rat_inv(lc);
    }
    return RatFn::trusted(n.shifted(nmin), std::move(den));
  }

  std::string str() const {
    std::string s = num_.str();
    std::vector<std::string> fs;
    for (const auto& f : den_)
      fs.push_back("(" + f.p.str() + ")^" + std::to_string(f.mult));
    std::sort(fs.begin(), fs.end());
    if (!fs.empty()) {
      s = "(" + s + ") /";
      for (const auto& f : fs) s += " " + f;
    }
    return s;
  }

  uint64_t digest() const { return detail::fnv1a64(str()); }

 private:
  void push_binomial(long m, const BigRat& r, long mult) {
    if (r == 1) {
      for (long d : detail::divisors(m)) den_push(cyclotomic(d), mult, true);
      return;
    }
    if (r == -1) {
      for (long d : detail::divisors(2 * m))
        if (m % d != 0) den_push(cyclotomic(d), mult, true);
      return;
    }
    LaurentPoly p = LaurentPoly::q_power(m) - LaurentPoly(r);
    den_push(p, mult, detail::binomial_irreducible(m, r));
  }

  void den_push(const LaurentPoly& p, long mult, bool irred) {
    for (auto& f : den_) {
      if (f.p == p) {
        f.mult += mult;
        return;
      }
    }
    den_.push_back(DenFactor{p, mult, irred});
  }

  LaurentPoly num_;
  std::vector<DenFactor> den_;
};

}  // namespace qcl
