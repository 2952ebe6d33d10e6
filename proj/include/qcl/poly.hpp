#pragma once

#include "qcl/rational.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace qcl {

// Univariate Laurent polynomial with exact rational coefficients, dense
// storage. Zero is the empty coefficient sequence with minExp 0; otherwise
// the first and last stored coefficients are nonzero.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const BigRat& c) {
    if (c != 0) c_.assign(1, c);
  }
  explicit LaurentPoly(long c) : LaurentPoly(BigRat(c)) {}
  LaurentPoly(long min_exp, std::vector<BigRat> coeffs)
      : min_(min_exp), c_(std::move(coeffs)) {
    normalize();
  }

  static LaurentPoly q_power(long e) {
    LaurentPoly p;
    p.min_ = e;
    p.c_.assign(1, BigRat(1));
    return p;
  }

  // 1 - c*q^e
  static LaurentPoly one_minus(const BigRat& c, long e) {
    LaurentPoly p(BigRat(1));
    LaurentPoly t;
    if (c != 0) {
      t.min_ = e;
      t.c_.assign(1, -c);
    }
    return p + t;
  }

  bool is_zero() const { return c_.empty(); }
  long min_exp() const { return is_zero() ? 0 : min_; }
  long max_exp() const { return is_zero() ? 0 : min_ + static_cast<long>(c_.size()) - 1; }
  long degree() const { return max_exp(); }
  bool ordinary() const { return is_zero() || min_ >= 0; }
  size_t term_span() const { return c_.size(); }

  BigRat coeff(long e) const {
    if (is_zero() || e < min_ || e > max_exp()) return BigRat(0);
    return c_[static_cast<size_t>(e - min_)];
  }
  const BigRat& leading() const {
    if (is_zero()) throw std::domain_error("leading: zero polynomial");
    return c_.back();
  }
  BigRat constant_term() const { return coeff(0); }

  // p with the q-power unit stripped: p = q^{min_exp} * ordinary_part().
  LaurentPoly ordinary_part() const {
    LaurentPoly r = *this;
    r.min_ = 0;
    return r;
  }

  LaurentPoly shifted(long e) const {
    LaurentPoly r = *this;
    if (!r.is_zero()) r.min_ += e;
    return r;
  }

  LaurentPoly operator-() const {
    LaurentPoly r = *this;
    for (auto& c : r.c_) c = -c;
    return r;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    long lo = std::min(min_, o.min_);
    long hi = std::max(max_exp(), o.max_exp());
    std::vector<BigRat> out(static_cast<size_t>(hi - lo + 1), BigRat(0));
    for (size_t i = 0; i < c_.size(); ++i) out[static_cast<size_t>(min_ - lo) + i] = c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i)
      out[static_cast<size_t>(o.min_ - lo) + i] += o.c_[i];
    min_ = lo;
    c_ = std::move(out);
    normalize();
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) { return *this += -o; }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.is_zero() || b.is_zero()) return LaurentPoly();
    LaurentPoly r;
    r.min_ = a.min_ + b.min_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, BigRat(0));
    for (size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (size_t j = 0; j < b.c_.size(); ++j) {
        if (b.c_[j] == 0) continue;
        r.c_[i + j] += a.c_[i] * b.c_[j];
      }
    }
    r.normalize();
    return r;
  }
  LaurentPoly& operator*=(const LaurentPoly& o) { return *this = *this * o; }

  LaurentPoly& operator*=(const BigRat& s) {
    if (s == 0) {
      c_.clear();
      min_ = 0;
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }
  friend LaurentPoly operator*(LaurentPoly a, const BigRat& s) { return a *= s; }
  friend LaurentPoly operator*(const BigRat& s, LaurentPoly a) { return a *= s; }

  LaurentPoly pow(unsigned long e) const {
    LaurentPoly acc(BigRat(1));
    LaurentPoly base = *this;
    while (e != 0) {
      if (e & 1ul) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  bool operator==(const LaurentPoly& o) const {
    return min_exp() == o.min_exp() && c_ == o.c_;
  }
  bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

  // Requires x != 0 when min_exp < 0.
  BigRat eval(const BigRat& x) const {
    if (is_zero()) return BigRat(0);
    BigRat acc(0);
    for (size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc * rat_pow(x, min_);
  }

  std::string str(const std::string& var = "q") const {
    if (is_zero()) return "0";
    std::string out;
    for (long e = max_exp(); e >= min_exp(); --e) {
      BigRat c = coeff(e);
      if (c == 0) continue;
      bool neg = c < 0;
      BigRat a = neg ? BigRat(-c) : c;
      if (out.empty())
        out += neg ? "-" : "";
      else
        out += neg ? " - " : " + ";
      std::string mag;
      if (e == 0) {
        mag = rat_str(a);
      } else {
        std::string p = (e == 1) ? var : var + "^" + std::to_string(e);
        mag = (a == 1) ? p : rat_str(a) + "*" + p;
      }
      out += mag;
    }
    return out;
  }

 private:
  void normalize() {
    size_t lead = c_.size();
    while (lead > 0 && c_[lead - 1] == 0) --lead;
    c_.resize(lead);
    size_t skip = 0;
    while (skip < c_.size() && c_[skip] == 0) ++skip;
    if (skip > 0) {
      c_.erase(c_.begin(), c_.begin() + static_cast<long>(skip));
      min_ += static_cast<long>(skip);
    }
    if (c_.empty()) min_ = 0;
  }

  long min_ = 0;
  std::vector<BigRat> c_;
};

// ---------------------------------------------------------------------------
// Ordinary-polynomial division with remainder: a = b*q + r, deg r < deg b.
inline std::pair<LaurentPoly, LaurentPoly> poly_divrem(const LaurentPoly& a,
                                                       const LaurentPoly& b) {
  if (b.is_zero()) throw std::domain_error("poly_divrem: division by zero polynomial");
  if (!a.ordinary() || !b.ordinary())
    throw std::domain_error("poly_divrem: operands must be ordinary polynomials");
  if (a.is_zero() || a.degree() < b.degree()) return {LaurentPoly(), a};

  long da = a.degree(), db = b.degree();
  std::vector<BigRat> rem(static_cast<size_t>(da + 1), BigRat(0));
  for (long e = 0; e <= da; ++e) rem[static_cast<size_t>(e)] = a.coeff(e);
  std::vector<BigRat> quo(static_cast<size_t>(da - db + 1), BigRat(0));
  const BigRat& lb = b.leading();
  for (long e = da; e >= db; --e) {
    BigRat& top = rem[static_cast<size_t>(e)];
    if (top == 0) continue;
    BigRat f = top / lb;
    quo[static_cast<size_t>(e - db)] = f;
    for (long j = 0; j <= db; ++j)
      rem[static_cast<size_t>(e - db + j)] -= f * b.coeff(j);
  }
  return {LaurentPoly(0, std::move(quo)), LaurentPoly(0, std::move(rem))};
}

inline LaurentPoly poly_mod(const LaurentPoly& a, const LaurentPoly& m) {
  return poly_divrem(a, m).second;
}

// Exact-division test for ordinary polynomials; quotient returned on success.
inline bool poly_divides(const LaurentPoly& d, const LaurentPoly& a,
                         LaurentPoly* quotient = nullptr) {
  if (a.is_zero()) {
    if (quotient) *quotient = LaurentPoly();
    return true;
  }
  if (a.degree() < d.degree()) return false;
  auto [q, r] = poly_divrem(a, d);
  if (!r.is_zero()) return false;
  if (quotient) *quotient = std::move(q);
  return true;
}

namespace detail {

// Integer image of an ordinary polynomial: denominators cleared, content
// removed, leading coefficient positive.
inline std::vector<BigInt> int_primitive(const LaurentPoly& p) {
  BigInt l(1);
  for (long e = 0; e <= p.degree(); ++e) {
    BigRat c = p.coeff(e);
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  std::vector<BigInt> v(static_cast<size_t>(p.degree() + 1));
  BigInt content(0);
  for (long e = 0; e <= p.degree(); ++e) {
    BigRat c = p.coeff(e) * BigRat(l);
    v[static_cast<size_t>(e)] = c.get_num();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v[static_cast<size_t>(e)].get_mpz_t());
  }
  if (content == 0) content = 1;
  if (v.back() < 0) content = -content;
  for (auto& x : v) x /= content;
  return v;
}

inline void int_trim(std::vector<BigInt>& v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
}

inline void int_make_primitive(std::vector<BigInt>& v) {
  BigInt g(0);
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return;
  if (v.back() < 0) g = -g;
  for (auto& x : v) x /= g;
}

// Pseudo-remainder of a by b over the integers (b nonzero, deg a >= deg b).
inline std::vector<BigInt> int_prem(std::vector<BigInt> a, const std::vector<BigInt>& b) {
  const BigInt& lb = b.back();
  size_t db = b.size() - 1;
  while (a.size() >= b.size()) {
    int_trim(a);
    if (a.size() < b.size()) break;
    BigInt top = a.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i + 1 < a.size(); ++i) a[i] *= lb;
    for (size_t i = 0; i <= db; ++i) a[shift + i] -= top * b[i];
    a.pop_back();
    (void)db;
  }
  int_trim(a);
  return a;
}

}  // namespace detail

// Monic gcd of ordinary polynomials via a content/primitive polynomial
// remainder sequence over the integers (keeps intermediate coefficients tame).
inline LaurentPoly poly_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero())
    throw std::domain_error("poly_gcd: both arguments zero");
  if (!a.ordinary() || !b.ordinary())
    throw std::domain_error("poly_gcd: operands must be ordinary polynomials");
  auto monic = [](const LaurentPoly& p) {
    return p * rat_inv(p.leading());
  };
  if (a.is_zero()) return monic(b);
  if (b.is_zero()) return monic(a);

  std::vector<BigInt> u = detail::int_primitive(a);
  std::vector<BigInt> v = detail::int_primitive(b);
  if (u.size() < v.size()) u.swap(v);
  while (!v.empty()) {
    std::vector<BigInt> r = detail::int_prem(u, v);
    detail::int_make_primitive(r);
    u = std::move(v);
    v = std::move(r);
  }
  std::vector<BigRat> coeffs(u.size());
  for (size_t i = 0; i < u.size(); ++i) coeffs[i] = BigRat(u[i]);
  return monic(LaurentPoly(0, std::move(coeffs)));
}

struct ExtGcd {
  LaurentPoly g, u, v;  // u*a + v*b = g, g monic
};

// Extended Euclid over the rationals; intended for small-degree operands.
inline ExtGcd poly_ext_gcd(const LaurentPoly& a, const LaurentPoly& b) {
  if (a.is_zero() && b.is_zero())
    throw std::domain_error("poly_ext_gcd: both arguments zero");
  LaurentPoly r0 = a, r1 = b;
  LaurentPoly s0(BigRat(1)), s1;
  LaurentPoly t0, t1(BigRat(1));
  while (!r1.is_zero()) {
    auto [q, r] = poly_divrem(r0, r1);
    LaurentPoly s2 = s0 - q * s1;
    LaurentPoly t2 = t0 - q * t1;
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  BigRat inv = rat_inv(r0.leading());
  return {r0 * inv, s0 * inv, t0 * inv};
}

// Chinese remainder for coprime polynomial moduli: the unique R with
// deg R < deg(P*Q), R = rP (mod P), R = rQ (mod Q).
inline LaurentPoly crt_pair(const LaurentPoly& P, const LaurentPoly& rP,
                            const LaurentPoly& Q, const LaurentPoly& rQ) {
  ExtGcd e = poly_ext_gcd(P, Q);
  if (e.g.degree() != 0)
    throw std::domain_error("crt_pair: moduli are not coprime");
  LaurentPoly rp = poly_mod(rP, P);
  LaurentPoly rq = poly_mod(rQ, Q);
  // e.u * P = 1 (mod Q)
  LaurentPoly lift = poly_mod(e.u * (rq - rp), Q);
  return rp + P * lift;
}

namespace detail {
inline std::vector<long> divisors(long n) {
  std::vector<long> ds;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      ds.push_back(d);
      if (d != n / d) ds.push_back(n / d);
    }
  }
  std::sort(ds.begin(), ds.end());
  return ds;
}
}  // namespace detail

// n-th cyclotomic polynomial, computed by exact division of q^n - 1 by the
// product of the lower cyclotomics. Memoized; safe for concurrent callers.
inline LaurentPoly cyclotomic(long n) {
  if (n < 1) throw std::domain_error("cyclotomic: n must be positive");
  static std::map<long, LaurentPoly> memo;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(n);
    if (it != memo.end()) return it->second;
  }
  LaurentPoly result;
  if (n == 1) {
    result = LaurentPoly(0, {BigRat(-1), BigRat(1)});  // q - 1
  } else {
    LaurentPoly num = LaurentPoly::q_power(n) - LaurentPoly(BigRat(1));
    LaurentPoly den(BigRat(1));
    for (long d : detail::divisors(n))
      if (d < n) den *= cyclotomic(d);
    auto [quo, rem] = poly_divrem(num, den);
    if (!rem.is_zero()) throw std::logic_error("cyclotomic: inexact division");
    result = std::move(quo);
  }
  std::lock_guard<std::mutex> lock(mu);
  memo.emplace(n, result);
  return result;
}

// [n] as a polynomial, n >= 1: 1 + q + ... + q^{n-1}.
inline LaurentPoly qint_poly(long n) {
  if (n < 1) throw std::domain_error("qint_poly: n must be positive");
  return LaurentPoly(0, std::vector<BigRat>(static_cast<size_t>(n), BigRat(1)));
}

}  // namespace qcl
