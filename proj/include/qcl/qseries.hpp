#pragma once

#include "qcl/frat.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace qcl {

using ParamMap = std::map<char, BigRat>;

// c * prod(param^exp) * q^qexp, the base of a Pochhammer symbol or a power.
struct MonomialSpec {
  BigRat coeff{1};
  std::map<char, long> params;
  long qexp{0};

  BigRat value(const ParamMap& vals) const {
    BigRat v = coeff;
    for (const auto& [name, exp] : params) {
      auto it = vals.find(name);
      if (it == vals.end())
        throw std::domain_error(std::string("unbound parameter ") + name);
      v *= rat_pow(it->second, exp);
    }
    return v;
  }

  bool operator==(const MonomialSpec&) const = default;
};

// (a2*n^2 + a1*n + a0) / div, an exponent depending on the congruence index.
struct ExpForm {
  long a2{0}, a1{0}, a0{0}, div{1};

  static ExpForm constant(long c) { return ExpForm{0, 0, c, 1}; }

  long eval(long n) const {
    long t = a2 * n * n + a1 * n + a0;
    if (t % div != 0) throw std::domain_error("ExpForm: non-integral exponent");
    return t / div;
  }

  bool operator==(const ExpForm&) const = default;
};

// Pochhammer length: the running summation index k, or (an*n + b)/div.
struct LenForm {
  bool is_k{true};
  long an{0}, b{0}, div{1};

  static LenForm k() { return LenForm{}; }
  static LenForm affine(long an, long b, long div = 1) {
    return LenForm{false, an, b, div};
  }
  static LenForm constant(long c) { return LenForm{false, 0, c, 1}; }

  long eval(long n) const {
    if (is_k) throw std::domain_error("LenForm: length k outside a summand");
    long t = an * n + b;
    if (t % div != 0) throw std::domain_error("LenForm: non-integral length");
    return t / div;
  }

  bool operator==(const LenForm&) const = default;
};

// (base; q^2)_len ^ power, negative power meaning a denominator factor.
struct PochFactor {
  MonomialSpec base;
  LenForm len;
  long power{1};

  bool operator==(const PochFactor&) const = default;
};

// [cn*n + c0]^power
struct QIntAtom {
  long cn{0}, c0{0};
  long power{1};

  bool operator==(const QIntAtom&) const = default;
};

// base ^ ExpForm(n)
struct MonoPowAtom {
  MonomialSpec base;
  ExpForm exp;

  bool operator==(const MonoPowAtom&) const = default;
};

enum class NamedFactor { NONE, OMEGA, THETA, RQ, SQ };

struct PrefactorSpec {
  BigRat coeff{1};
  std::vector<QIntAtom> qints;
  std::vector<MonoPowAtom> monos;
  std::vector<PochFactor> pochs;  // lengths must not be k
  NamedFactor named{NamedFactor::NONE};

  bool operator==(const PrefactorSpec&) const = default;
};

enum class BoundKind { M_SELECT, HALF_NP1, HALF_NM3, NM1_FIXED, FIXED };
enum class MMode { HALF, NM1 };

// prefactor * sum_{k=0}^{M} [qa*k+qb] * (-1)^k * z^k * q^{qk^2+lk} * pochs
struct SumSpec {
  BoundKind bound{BoundKind::M_SELECT};
  long fixed_bound{0};
  bool has_qint{false};
  long qint_a{0}, qint_b{0};
  bool alternating{false};
  MonomialSpec z;  // per-k monomial factor z^k
  long quad_a{0}, quad_b{0};
  std::vector<PochFactor> pochs;  // lengths must be k
  PrefactorSpec prefactor;

  bool operator==(const SumSpec&) const = default;
};

inline long resolve_bound(const SumSpec& s, long n, MMode mode) {
  switch (s.bound) {
    case BoundKind::M_SELECT:
      return mode == MMode::HALF ? (n + 1) / 2 : n - 1;
    case BoundKind::HALF_NP1:
      return (n + 1) / 2;
    case BoundKind::HALF_NM3:
      return (n - 3) / 2;
    case BoundKind::NM1_FIXED:
      return n - 1;
    case BoundKind::FIXED:
      return s.fixed_bound;
  }
  throw std::logic_error("resolve_bound: bad kind");
}

// [m] as a reduced rational function; [0]=0, [-m] = -q^{-m}[m].
inline RatFn qint(long m) {
  if (m == 0) return RatFn();
  if (m > 0) return RatFn(qint_poly(m));
  LaurentPoly t = qint_poly(-m).shifted(m);
  return RatFn(-t);
}

// prod_{j<k} (1 - c q^{e + step*j})
inline LaurentPoly qpoch_poly(const BigRat& c, long e, long step, long k) {
  LaurentPoly r{BigRat(1)};
  for (long j = 0; j < k; ++j) r *= LaurentPoly::one_minus(c, e + step * j);
  return r;
}

// (base; q^step)_k with the base monomial specialized at params.
inline RatFn qpoch(const MonomialSpec& base, long step_exp, long k,
                   const ParamMap& params) {
  if (k < 0) throw std::domain_error("qpoch: negative length");
  return RatFn(qpoch_poly(base.value(params), base.qexp, step_exp, k));
}

// Gaussian binomial coefficient [t choose s].
inline RatFn qbinom(long t, long s) {
  if (s < 0 || s > t) throw std::domain_error("qbinom: need 0 <= s <= t");
  FRat f = FRat::one();
  for (long i = 1; i <= s; ++i) {
    f.mul_linfac(1, t - s + i, 1);
    f.mul_linfac(1, i, -1);
  }
  return f.to_ratfn();
}

namespace detail {

inline void apply_poch(FRat& f, const BigRat& c, long e, long len, long power,
                       long step = 2) {
  for (long j = 0; j < len; ++j) f.mul_linfac(c, e + step * j, power);
}

}  // namespace detail

// Central quadratic-defect factor: [n]^3 times a polynomial correction in n,
// divided by q [n-1][n+1] and 1+q^2, shifted by q^{(n+5)/2}.
inline FRat omega_frat(long n) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("omega: need odd n >= 3");
  BigInt n2 = BigInt(n) * n;
  LaurentPoly a(0, {BigRat(n2 - 1), BigRat(-2 * n2 - 22), BigRat(n2 - 1)});
  FRat inner(a);
  inner.mul_rat(BigRat(1, 24));
  FRat b = FRat::one();
  b.mul_qpow(-1);
  b.mul_qint(n, -2);
  b.mul_qint(n - 1, -1);
  b.mul_qint(n + 1, -1);
  inner.sub(b);
  inner.mul_qint(n, 3);
  inner.mul_qpow((n + 5) / 2);
  inner.mul_linfac(-1, 2, -1);
  return inner;
}

// Two-parameter boundary factor used by the doubly-parametrized targets.
inline FRat theta_frat(long n, const BigRat& a, const BigRat& b) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("theta: need odd n >= 3");
  if (a == 0 || b == 0) throw std::domain_error("theta: zero parameter");
  if (a == b) throw std::domain_error("theta: a = b pole");
  if (a * b == 1) throw std::domain_error("theta: ab = 1 pole");
  long h = (n + 1) / 2;
  BigRat scale = rat_inv((a - b) * (1 - a * b));

  FRat t1 = FRat::one();
  t1.mul_poly(LaurentPoly(b) - LaurentPoly::q_power(n));
  t1.mul_poly(LaurentPoly(a * b - 1 - a * a) + LaurentPoly::q_power(n) * LaurentPoly(a));
  t1.mul_rat(scale);
  t1.mul_rat(rat_pow(b, h));
  t1.mul_qpow(h);
  detail::apply_poch(t1, rat_inv(b), -2, h, 1);
  detail::apply_poch(t1, b, 2, h, -1);

  FRat t2 = FRat::one();
  t2.mul_poly(LaurentPoly::one_minus(a, n));
  t2.mul_poly(LaurentPoly(a) - LaurentPoly::q_power(n));
  t2.mul_rat(scale);
  detail::apply_poch(t2, b, 0, 2, 1);
  detail::apply_poch(t2, 1, -1, h, 2);
  detail::apply_poch(t2, 1, -1, 2, -1);
  detail::apply_poch(t2, rat_inv(a), 2, h, -1);
  detail::apply_poch(t2, a, 2, h, -1);

  t1.add(t2);
  return t1;
}

// Boundary factor of the first single-parameter reduction step.
inline FRat rq_frat(long n, const BigRat& a) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("rq: need odd n >= 3");
  if (a == 0 || a == 1) throw std::domain_error("rq: parameter pole");
  long h = (n + 1) / 2;

  FRat w = FRat::one();
  w.mul_qpow(5);
  detail::apply_poch(w, 1, -1, h, 2);
  detail::apply_poch(w, 1, -1, 2, -1);
  detail::apply_poch(w, rat_inv(a), 2, h, -1);
  detail::apply_poch(w, a, 2, h, -1);

  FRat u = FRat::one();
  u.mul_qpow((n + 7) / 2);
  detail::apply_poch(u, 1, n - 1, 2, -1);

  w.sub(u);
  w.mul_poly(LaurentPoly::one_minus(a, n));
  w.mul_poly(LaurentPoly(a) - LaurentPoly::q_power(n));
  w.mul_rat(rat_inv((1 - a) * (1 - a)));
  w.sub(u);
  return w;
}

// Boundary factor of the second single-parameter reduction step.
inline FRat sq_frat(long n, const BigRat& a) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("sq: need odd n >= 3");
  if (a == 0 || a == 1 || a == -1) throw std::domain_error("sq: parameter pole");
  FRat w = FRat::one();
  w.mul_linfac(1, 1, -2);

  BigRat an = rat_pow(a, n);
  FRat u(BigRat(n) * (1 - a) * rat_pow(a, (n - 1) / 2) / (1 - an));
  u.mul_linfac(rat_inv(a), 1, -1);
  u.mul_linfac(a, 1, -1);

  w.sub(u);
  w.mul_poly(LaurentPoly::one_minus(a, n));
  w.mul_poly(LaurentPoly(a) - LaurentPoly::q_power(n));
  w.mul_rat(rat_inv((1 - a) * (1 - a)));

  FRat v = FRat::one();
  v.mul_qpow(-1);
  detail::apply_poch(v, 1, n - 1, 2, -1);
  w.sub(v);
  return w;
}

inline FRat eval_prefactor(const PrefactorSpec& p, long n, const ParamMap& vals) {
  FRat r = FRat::one();
  r.mul_rat(p.coeff);
  for (const auto& qi : p.qints) r.mul_qint(qi.cn * n + qi.c0, qi.power);
  for (const auto& mp : p.monos) {
    long e = mp.exp.eval(n);
    r.mul_rat(rat_pow(mp.base.value(vals), e));
    r.mul_qpow(mp.base.qexp * e);
  }
  for (const auto& pf : p.pochs) {
    long len = pf.len.eval(n);
    detail::apply_poch(r, pf.base.value(vals), pf.base.qexp, len, pf.power);
  }
  switch (p.named) {
    case NamedFactor::NONE:
      break;
    case NamedFactor::OMEGA:
      r.mul(omega_frat(n));
      break;
    case NamedFactor::THETA:
      r.mul(theta_frat(n, vals.at('a'), vals.at('b')));
      break;
    case NamedFactor::RQ:
      r.mul(rq_frat(n, vals.at('a')));
      break;
    case NamedFactor::SQ:
      r.mul(sq_frat(n, vals.at('a')));
      break;
  }
  return r;
}

// Single summand at index k (prefactor not included).
inline FRat sum_term(const SumSpec& s, long k, long n, const ParamMap& vals) {
  FRat term = FRat::one();
  for (const auto& pf : s.pochs) {
    if (!pf.len.is_k) throw std::domain_error("sum_term: length must be k");
    detail::apply_poch(term, pf.base.value(vals), pf.base.qexp, k, pf.power);
  }
  if (s.has_qint) term.mul_qint(s.qint_a * k + s.qint_b, 1);
  if (s.alternating && k % 2 != 0) term.neg();
  term.mul_rat(rat_pow(s.z.value(vals), k));
  term.mul_qpow(s.z.qexp * k + s.quad_a * k * k + s.quad_b * k);
  (void)n;
  return term;
}

// Truncated sum up to M inclusive, prefactor not included. Pochhammer factors
// grow one linear factor per step, so the whole loop is incremental.
inline FRat eval_sum_raw(const SumSpec& s, long M, long n, const ParamMap& vals) {
  std::vector<BigRat> bases;
  for (const auto& pf : s.pochs) {
    if (!pf.len.is_k) throw std::domain_error("eval_sum_raw: length must be k");
    bases.push_back(pf.base.value(vals));
  }
  FRat running = FRat::one();
  FRat acc;
  for (long k = 0; k <= M; ++k) {
    if (k > 0) {
      for (size_t i = 0; i < s.pochs.size(); ++i) {
        const auto& pf = s.pochs[i];
        running.mul_linfac(bases[i], pf.base.qexp + 2 * (k - 1), pf.power);
      }
    }
    FRat term = running;
    if (s.has_qint) term.mul_qint(s.qint_a * k + s.qint_b, 1);
    if (s.alternating && k % 2 != 0) term.neg();
    term.mul_rat(rat_pow(s.z.value(vals), k));
    term.mul_qpow(s.z.qexp * k + s.quad_a * k * k + s.quad_b * k);
    acc.add(term);
  }
  (void)n;
  return acc;
}

inline FRat eval_sum(const SumSpec& s, long M, long n, const ParamMap& vals) {
  FRat acc = eval_sum_raw(s, M, n, vals);
  acc.mul(eval_prefactor(s.prefactor, n, vals));
  return acc;
}

inline RatFn omega(long n) { return omega_frat(n).to_ratfn(); }

inline RatFn theta(long n, const BigRat& a, const BigRat& b) {
  return theta_frat(n, a, b).to_ratfn();
}

inline RatFn rq(long n, const BigRat& a) { return rq_frat(n, a).to_ratfn(); }

inline RatFn sq(long n, const BigRat& a) { return sq_frat(n, a).to_ratfn(); }

}  // namespace qcl
