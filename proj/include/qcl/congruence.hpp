#pragma once

#include "qcl/catalog.hpp"

#include <optional>
#include <sstream>
#include <string>

namespace qcl {

enum class Status { PASS, FAIL, SKIPPED };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::PASS:
      return "PASS";
    case Status::FAIL:
      return "FAIL";
    case Status::SKIPPED:
      return "SKIPPED";
  }
  return "?";
}

struct Verdict {
  Status status{Status::SKIPPED};
  RatFn cofactor;                      // delta / P when PASS
  LaurentPoly coprimality{BigRat(1)};  // gcd(den(delta), P)
  std::string diagnostics;
  uint64_t witness_digest{0};

  bool passed() const { return status == Status::PASS; }
};

// A modulus kept in factored form: P = unit * prod factors[i].p^mult.
struct ModulusFactored {
  std::vector<FRat::DenFactor> factors;
  BigRat unit{1};

  LaurentPoly expanded() const {
    LaurentPoly p{unit};
    for (const auto& f : factors)
      p *= f.p.pow(static_cast<unsigned long>(f.mult));
    return p;
  }
};

inline ModulusFactored modulus_factored(const ModulusRecipe& recipe, long n,
                                        const ParamMap& params) {
  if (n < 3 || n % 2 == 0)
    throw std::domain_error("modulus: need odd n > 1");
  FRat acc = FRat::one();
  for (const auto& f : recipe.factors) {
    if (f.exp < 1) throw std::domain_error("modulus: exponent < 1");
    switch (f.kind) {
      case ModFactorKind::CYCLO:
        acc.mul_phi(n, -f.exp);
        break;
      case ModFactorKind::QINT:
        acc.mul_qint(n, -f.exp);
        break;
      case ModFactorKind::ONE_MINUS_AQN: {
        BigRat a = params.at('a');
        if (a == 0) throw std::domain_error("modulus: a = 0");
        acc.mul_linfac(a, n, -f.exp);
        break;
      }
      case ModFactorKind::A_MINUS_QN:
      case ModFactorKind::B_MINUS_QN: {
        BigRat v = params.at(f.kind == ModFactorKind::A_MINUS_QN ? 'a' : 'b');
        if (v == 0) throw std::domain_error("modulus: zero parameter");
        acc.mul_rat(rat_pow(v, -f.exp));
        acc.mul_linfac(rat_inv(v), n, -f.exp);
        break;
      }
    }
  }
  ModulusFactored m;
  m.factors = acc.den_factors();
  // acc is 1/P, so its numerator is the reciprocal unit (a rational constant).
  if (acc.num().degree() != 0 || acc.num().min_exp() != 0)
    throw std::logic_error("modulus: unexpected unit shape");
  m.unit = rat_inv(acc.num().constant_term());
  return m;
}

inline LaurentPoly modulus_build(const ModulusRecipe& recipe, long n,
                                 const ParamMap& params) {
  return modulus_factored(recipe, n, params).expanded();
}

inline std::string modulus_render(const ModulusRecipe& recipe, long n) {
  std::string s;
  for (const auto& f : recipe.factors) {
    if (!s.empty()) s += " ";
    std::string atom;
    switch (f.kind) {
      case ModFactorKind::CYCLO:
        atom = "Phi_" + std::to_string(n) + "(q)";
        break;
      case ModFactorKind::QINT:
        atom = "[" + std::to_string(n) + "]";
        break;
      case ModFactorKind::ONE_MINUS_AQN:
        atom = "(1-a*q^" + std::to_string(n) + ")";
        break;
      case ModFactorKind::A_MINUS_QN:
        atom = "(a-q^" + std::to_string(n) + ")";
        break;
      case ModFactorKind::B_MINUS_QN:
        atom = "(b-q^" + std::to_string(n) + ")";
        break;
    }
    s += atom;
    if (f.exp > 1) s += "^" + std::to_string(f.exp);
  }
  return s;
}

// Divisibility of an exact rational function by an ordinary polynomial with
// nonzero constant term: the denominator in lowest terms must be coprime to P
// and the numerator divisible (q-power units are invertible mod P).
inline Verdict congruent(const RatFn& delta, const LaurentPoly& P) {
  if (P.is_zero() || P.min_exp() != 0 || P.constant_term() == 0)
    throw std::domain_error("congruent: bad modulus polynomial");
  Verdict v;
  v.witness_digest = detail::fnv1a64(delta.str());
  if (delta.is_zero()) {
    v.status = Status::PASS;
    return v;
  }
  LaurentPoly g = poly_gcd(delta.den(), P);
  if (g.degree() > 0) {
    v.status = Status::FAIL;
    v.coprimality = g;
    v.diagnostics = "denominator shares factor " + g.str() + " with modulus";
    return v;
  }
  LaurentPoly quot;
  if (!poly_divides(P, delta.num().ordinary_part(), &quot)) {
    v.status = Status::FAIL;
    v.diagnostics = "modulus does not divide numerator";
    return v;
  }
  v.status = Status::PASS;
  v.cofactor = RatFn::trusted(quot.shifted(delta.num().min_exp()), delta.den());
  return v;
}

namespace detail {

inline bool needs_expanded_fallback(const FRat& delta,
                                    const ModulusFactored& P) {
  for (const auto& g : P.factors)
    if (!g.irred) return true;
  for (const auto& f : delta.den_factors()) {
    if (f.irred) continue;
    for (const auto& g : P.factors) {
      if (f.p == g.p) continue;
      if (poly_gcd(f.p, g.p).degree() > 0) return true;
    }
  }
  return false;
}

}  // namespace detail

// Factor-aware congruence: with the denominator held as distinct monic
// irreducibles, each modulus factor pi needs v_pi(num) >= den_mult(pi) +
// required multiplicity; everything else in the denominator is coprime to pi.
inline Verdict congruent(const FRat& delta, const ModulusFactored& P) {
  if (detail::needs_expanded_fallback(delta, P))
    return congruent(delta.to_ratfn(), P.expanded());
  Verdict v;
  v.witness_digest = delta.digest();
  if (delta.is_zero()) {
    v.status = Status::PASS;
    return v;
  }
  bool ok = true;
  LaurentPoly shared{BigRat(1)};
  std::string diag;
  for (const auto& g : P.factors) {
    long dm = delta.den_mult(g.p);
    long have = delta.num_val_capped(g.p, dm + g.mult);
    if (have >= dm + g.mult) continue;
    ok = false;
    if (have < dm)
      shared *= g.p.pow(static_cast<unsigned long>(dm - have));
    std::ostringstream os;
    if (!diag.empty()) diag += "; ";
    os << "factor " << g.p.str() << ": numerator multiplicity " << have
       << ", denominator multiplicity " << dm << ", required " << g.mult;
    diag += os.str();
  }
  if (!ok) {
    v.status = Status::FAIL;
    v.coprimality = shared;
    v.diagnostics = diag;
    return v;
  }
  FRat cof = delta;
  cof.mul_rat(rat_inv(P.unit));
  for (const auto& g : P.factors) cof.div_factor(g.p, g.mult, g.irred);
  v.status = Status::PASS;
  v.cofactor = cof.to_ratfn();
  return v;
}

inline Verdict verify_sumspec(const SumSpec& lhs, const SumSpec& rhs,
                              const ModulusRecipe& modulus, long n, MMode mode,
                              const ParamMap& sample) {
  FRat delta = eval_sum(lhs, resolve_bound(lhs, n, mode), n, sample);
  delta.sub(eval_sum(rhs, resolve_bound(rhs, n, mode), n, sample));
  return congruent(delta, modulus_factored(modulus, n, sample));
}

inline Verdict verify_sumspec_target(const TargetDef& t, long n, MMode mode,
                                     const ParamMap& sample) {
  return verify_sumspec(t.lhs, t.rhs, t.modulus, n, mode, sample);
}

// ----- proof-step displays outside the SumSpec interpreter -----

namespace detail {

inline FRat gs54_side_lhs(long n, long k, const BigRat& x) {
  long m = (n + 1) / 2 - k;
  FRat f = FRat::one();
  apply_poch(f, x, -1, m, 1);
  apply_poch(f, rat_inv(x), 2, m, -1);
  return f;
}

inline FRat gs54_side_rhs(long n, long k, const BigRat& x) {
  FRat f(rat_pow(-x, (n + 1) / 2 - 2 * k));
  apply_poch(f, x, -1, k, 1);
  apply_poch(f, rat_inv(x), 2, k, -1);
  f.mul_qpow((n - 1) * (n - 1) / 4 + 3 * k - 1);
  return f;
}

inline FRat guo_delta(long n, const BigRat& a, bool odd_shift) {
  if (a == 0 || a == 1 || a == -1)
    throw std::domain_error("paired product: parameter pole");
  long h = (n - 1) / 2;
  FRat lhs = FRat::one();
  long e = odd_shift ? 1 : 2;
  apply_poch(lhs, a, e, h, 1);
  apply_poch(lhs, rat_inv(a), e, h, 1);
  FRat rhs(BigRat(1 - rat_pow(a, n)) / ((1 - a) * rat_pow(a, h)));
  if (h % 2 != 0) rhs.neg();
  rhs.mul_qpow(odd_shift ? (1 - n * n) / 4 : -(n - 1) * (n - 1) / 4);
  lhs.sub(rhs);
  return lhs;
}

inline FRat weig_delta(long n, const BigRat& a) {
  if (a == 0 || a == 1 || a == -1)
    throw std::domain_error("boundary reduction: parameter pole");
  long h = (n + 1) / 2;
  FRat lhs = FRat::one();
  lhs.mul_qpow(5);
  apply_poch(lhs, 1, -1, h, 2);
  apply_poch(lhs, 1, -1, 2, -1);
  apply_poch(lhs, rat_inv(a), 2, h, -1);
  apply_poch(lhs, a, 2, h, -1);
  FRat u = FRat::one();
  u.mul_qpow((n + 7) / 2);
  apply_poch(u, 1, n - 1, 2, -1);
  lhs.sub(u);

  FRat r1 = FRat::one();
  r1.mul_qpow((n + 9) / 2);
  r1.mul_linfac(1, 1, -2);
  FRat r2(BigRat(n) * (1 - a) * rat_pow(a, (n - 1) / 2) /
          (1 - rat_pow(a, n)));
  r2.mul_qpow((n + 9) / 2);
  r2.mul_linfac(rat_inv(a), 1, -1);
  r2.mul_linfac(a, 1, -1);
  r1.sub(r2);

  lhs.sub(r1);
  return lhs;
}

}  // namespace detail

inline Verdict proof_step_check(TargetId step, long n, const ParamMap& sample) {
  const TargetDef& t = target(step);
  if (!admissible_n(t, n)) {
    Verdict v;
    v.diagnostics = "n inadmissible";
    return v;
  }
  ModulusFactored phin = modulus_factored(detail::mod_phi(1), n, sample);
  switch (step) {
    case TargetId::WEI_E:
    case TargetId::WEI_F:
    case TargetId::WEI_H: {
      // the display holds for either truncation of the left-hand sum
      Verdict v = verify_sumspec_target(t, n, MMode::HALF, sample);
      if (!v.passed()) return v;
      Verdict w = verify_sumspec_target(t, n, MMode::NM1, sample);
      w.witness_digest ^= v.witness_digest;
      return w;
    }
    case TargetId::WEI_G:
      return congruent(detail::weig_delta(n, sample.at('a')), phin);
    case TargetId::GS54: {
      BigRat x = sample.at('x');
      if (x == 0 || x == 1 || x == -1)
        throw std::domain_error("term reflection: x pole");
      Verdict all;
      all.status = Status::PASS;
      for (long k = 0; k <= (n + 1) / 2; ++k) {
        FRat d = detail::gs54_side_lhs(n, k, x);
        d.sub(detail::gs54_side_rhs(n, k, x));
        Verdict v = congruent(d, phin);
        all.witness_digest ^= v.witness_digest + 0x9e3779b97f4a7c15ULL +
                              (all.witness_digest << 6);
        if (!v.passed()) {
          v.diagnostics = "k=" + std::to_string(k) + ": " + v.diagnostics;
          return v;
        }
      }
      return all;
    }
    case TargetId::GUO_L1:
      return congruent(detail::guo_delta(n, sample.at('a'), false), phin);
    case TargetId::GUO_L2:
      return congruent(detail::guo_delta(n, sample.at('a'), true), phin);
    default:
      throw std::domain_error("proof_step_check: not a proof step");
  }
}

inline Verdict verify_target(TargetId id, long n, MMode mode,
                             const ParamMap& sample) {
  const TargetDef& t = target(id);
  if (!admissible_n(t, n)) {
    Verdict v;
    v.diagnostics = "n inadmissible";
    return v;
  }
  if (t.special) return proof_step_check(id, n, sample);
  return verify_sumspec_target(t, n, mode, sample);
}

// ----- structural checks on the fully parametrized left-hand side -----

// beta(k): the k-th summand of the fully parametrized left-hand side.
inline FRat beta_term(long k, long n, const ParamMap& sample) {
  return sum_term(target(TargetId::THM11).lhs, k, n, sample);
}

// beta((n+1)/2 - k) = -beta(k) modulo the n-th cyclotomic polynomial.
inline Verdict lemma_a_symmetry_check(long n, const ParamMap& sample) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("symmetry: need odd n > 1");
  ModulusFactored phin = modulus_factored(detail::mod_phi(1), n, sample);
  long h = (n + 1) / 2;
  Verdict all;
  all.status = Status::PASS;
  for (long k = 0; k <= h; ++k) {
    FRat d = beta_term(h - k, n, sample);
    d.add(beta_term(k, n, sample));
    Verdict v = congruent(d, phin);
    all.witness_digest ^= v.witness_digest + 0x9e3779b97f4a7c15ULL +
                          (all.witness_digest << 6);
    if (!v.passed()) {
      v.diagnostics = "k=" + std::to_string(k) + ": " + v.diagnostics;
      return v;
    }
  }
  return all;
}

// the middle summand (k = (n+1)/4) carries the whole q-integer factor
inline Verdict central_term_check(long n, const ParamMap& sample) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("central: need odd n > 1");
  Verdict v;
  if (n % 4 != 3) {
    v.diagnostics = "(n+1)/2 odd: no central index";
    return v;
  }
  ModulusRecipe r{{{ModFactorKind::QINT, 1}}};
  return congruent(beta_term((n + 1) / 4, n, sample),
                   modulus_factored(r, n, sample));
}

// the whole left-hand sum is divisible by the q-integer at both truncations
inline Verdict lhs_divisibility_check(long n, MMode mode,
                                      const ParamMap& sample) {
  FRat s = catalog_sum_frat(TargetId::THM11, Side::LHS, n, mode, sample);
  ModulusRecipe r{{{ModFactorKind::QINT, 1}}};
  return congruent(s, modulus_factored(r, n, sample));
}

// ----- classical transformation identity (step-1 Pochhammers) -----

inline Verdict watson_identity_check(long n_trunc, const BigRat& a,
                                     const BigRat& b, const BigRat& c,
                                     const BigRat& d, const BigRat& e) {
  if (n_trunc < 0) throw std::domain_error("watson: negative truncation");
  if (a == 0 || a == 1 || b == 0 || c == 0 || d == 0 || e == 0)
    throw std::domain_error("watson: degenerate parameters");
  long N = n_trunc;
  BigRat inv1a = rat_inv(1 - a);
  FRat lhs;
  {
    FRat running = FRat::one();
    struct Fac {
      BigRat c;
      long e;
      long pw;
    };
    const Fac facs[] = {
        {a, 0, 1},          {b, 0, 1},         {c, 0, 1},
        {d, 0, 1},          {e, 0, 1},         {1, -N, 1},
        {1, 1, -1},         {a / b, 1, -1},    {a / c, 1, -1},
        {a / d, 1, -1},     {a / e, 1, -1},    {a, N + 1, -1},
    };
    BigRat z = a * a / (b * c * d * e);
    for (long k = 0; k <= N; ++k) {
      if (k > 0)
        for (const auto& f : facs)
          running.mul_linfac(f.c, f.e + (k - 1), f.pw);
      FRat term = running;
      term.mul_linfac(a, 2 * k, 1);
      term.mul_rat(inv1a * rat_pow(z, k));
      term.mul_qpow((N + 2) * k);
      lhs.add(term);
    }
  }
  FRat rhs;
  {
    FRat running = FRat::one();
    struct Fac {
      BigRat c;
      long e;
      long pw;
    };
    const Fac facs[] = {
        {a / (b * c), 1, 1}, {d, 0, 1},       {e, 0, 1},    {1, -N, 1},
        {1, 1, -1},          {a / b, 1, -1},  {a / c, 1, -1},
        {d * e / a, -N, -1},
    };
    for (long k = 0; k <= N; ++k) {
      if (k > 0)
        for (const auto& f : facs)
          running.mul_linfac(f.c, f.e + (k - 1), f.pw);
      FRat term = running;
      term.mul_qpow(k);
      rhs.add(term);
    }
    detail::apply_poch(rhs, a, 1, N, 1, 1);
    detail::apply_poch(rhs, a / (d * e), 1, N, 1, 1);
    detail::apply_poch(rhs, a / d, 1, N, -1, 1);
    detail::apply_poch(rhs, a / e, 1, N, -1, 1);
  }
  lhs.sub(rhs);
  Verdict v;
  v.witness_digest = lhs.digest();
  RatFn diff = lhs.to_ratfn();
  if (diff.is_zero()) {
    v.status = Status::PASS;
  } else {
    v.status = Status::FAIL;
    v.diagnostics = "sides differ: " + diff.str();
  }
  return v;
}

// ----- limit comparison at a = 1 (rational functions in a, q numeric) -----

inline Verdict lhopital_limit_check(long n, const BigRat& qv) {
  if (n < 3 || n % 2 == 0) throw std::domain_error("limit: need odd n > 1");
  if (qv == 0 || qv == 1 || qv == -1)
    throw std::domain_error("limit: q must avoid 0 and roots of unity");
  BigRat qn = rat_pow(qv, n);
  if (qn == 1) throw std::domain_error("limit: q^n = 1");

  // the polynomial variable now plays the role of a
  RatFn first(BigRat(rat_inv((1 - qv) * (1 - qv))));
  LaurentPoly anum = LaurentPoly::one_minus(1, 1).shifted((n - 1) / 2);
  RatFn second = RatFn(anum * BigRat(n)) /
                 RatFn(LaurentPoly::one_minus(qv, -1) *
                       LaurentPoly::one_minus(qv, 1) *
                       LaurentPoly::one_minus(1, n));
  RatFn bracket = first - second;
  RatFn pair = RatFn(LaurentPoly::one_minus(qn, 1) *
                     (LaurentPoly(0, {-qn, BigRat(1)})));
  RatFn pole = RatFn(LaurentPoly::one_minus(1, 1)).pow(2);
  RatFn f = bracket * pair / pole;

  Verdict v;
  v.witness_digest = detail::fnv1a64(f.str());
  if (f.den().eval(1) == 0) {
    v.status = Status::FAIL;
    v.diagnostics = "residual pole at a = 1";
    return v;
  }
  BigRat got = f.eval(1);
  BigRat qint_n = (1 - qn) / (1 - qv);
  BigRat expect = qint_n * qint_n *
                  (BigRat(n) * n * (1 - qv) * (1 - qv) -
                   (1 + 22 * qv + qv * qv)) /
                  (24 * (1 - qv) * (1 - qv));
  if (got == expect) {
    v.status = Status::PASS;
    v.cofactor = RatFn(got);
  } else {
    v.status = Status::FAIL;
    v.diagnostics =
        "limit " + rat_str(got) + " does not match " + rat_str(expect);
  }
  return v;
}

}  // namespace qcl
