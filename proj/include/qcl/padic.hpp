#pragma once

#include "qcl/congruence.hpp"

#include <limits>

namespace qcl {

inline constexpr long kValInfinity = std::numeric_limits<long>::max();

inline BigRat rising(const BigRat& x, long k) {
  if (k < 0) throw std::domain_error("rising: negative length");
  BigRat r = 1;
  for (long j = 0; j < k; ++j) r *= x + j;
  return r;
}

inline BigRat factorial(long k) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
  return BigRat(f);
}

// p-adic valuation of a nonzero rational; vp(0) is +infinity and must be
// handled by the caller (represented as kValInfinity where needed).
inline long vp(const BigRat& x, long p) {
  if (x == 0) throw std::domain_error("vp: valuation of zero");
  BigInt rem;
  BigInt pz(p);
  long vn = static_cast<long>(
      mpz_remove(rem.get_mpz_t(), x.get_num().get_mpz_t(), pz.get_mpz_t()));
  long vd = static_cast<long>(
      mpz_remove(rem.get_mpz_t(), x.get_den().get_mpz_t(), pz.get_mpz_t()));
  return vn - vd;
}

enum class PadicId { PAD13, PAD14, PAD15, PAD16, PAD17 };

struct PadicDef {
  PadicId id;
  const char* name;
  bool needs_p_gt_3;
  BigRat cst;
};

inline const std::vector<PadicDef>& padic_catalog() {
  static const std::vector<PadicDef> v = {
      {PadicId::PAD13, "pad13", true, BigRat(1, 16)},
      {PadicId::PAD14, "pad14", true, BigRat(1, 16)},
      {PadicId::PAD15, "pad15", false, BigRat(15, 64)},
      {PadicId::PAD16, "pad16", true, BigRat(35, 64)},
      {PadicId::PAD17, "pad17", true, BigRat(63, 64)},
  };
  return v;
}

inline const PadicDef& padic_target(PadicId id) {
  for (const auto& d : padic_catalog())
    if (d.id == id) return d;
  throw std::logic_error("padic_target: unknown id");
}

inline const PadicDef* find_padic_target(std::string_view name) {
  for (const auto& d : padic_catalog())
    if (d.name == name) return &d;
  return nullptr;
}

namespace detail {

inline BigRat padic_lhs_term(PadicId id, long k) {
  BigRat half = rising(BigRat(-1, 2), k);
  BigRat three = rising(BigRat(-3, 2), k);
  BigRat f = factorial(k);
  BigRat f1 = factorial(k + 1);
  BigRat sign = (k % 2 != 0) ? BigRat(-1) : BigRat(1);
  BigRat qi(4 * k - 1);
  switch (id) {
    case PadicId::PAD13:
      return sign * qi * rat_pow(half, 5) / rat_pow(f, 5);
    case PadicId::PAD14:
      return sign * qi * rat_pow(half, 4) * three / (rat_pow(f, 4) * f1);
    case PadicId::PAD15:
      return qi * rat_pow(half, 6) / rat_pow(f, 6);
    case PadicId::PAD16:
      return qi * rat_pow(half, 5) * three / (rat_pow(f, 5) * f1);
    case PadicId::PAD17:
      return qi * rat_pow(half, 4) * three * three / (rat_pow(f, 4) * f1 * f1);
  }
  throw std::logic_error("padic_lhs_term");
}

inline BigRat padic_rhs_term(PadicId id, long k) {
  BigRat core = rat_pow(rising(BigRat(3, 2), k), 3);
  BigRat f = factorial(k);
  BigRat f2 = factorial(k + 2);
  BigRat f3 = factorial(k + 3);
  switch (id) {
    case PadicId::PAD13:
      return core / (f * f2 * f2);
    case PadicId::PAD14:
      return core / (f * f2 * f3);
    case PadicId::PAD15:
      return core * rising(BigRat(7, 2), k) / (f * f2 * f2 * f2);
    case PadicId::PAD16:
      return core * rising(BigRat(9, 2), k) / (f * f2 * f2 * f3);
    case PadicId::PAD17:
      return core * rising(BigRat(11, 2), k) / (f * f2 * f3 * f3);
  }
  throw std::logic_error("padic_rhs_term");
}

inline bool is_small_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

}  // namespace detail

// Exact check of the classical display at prime power p^r: the two truncated
// rational sums must agree modulo p^{r+3} in the p-adic sense.
inline Verdict classical_check(PadicId id, long p, long r) {
  const PadicDef& def = padic_target(id);
  if (r < 1) throw std::domain_error("classical_check: need r >= 1");
  if (!detail::is_small_prime(p) || p == 2)
    throw std::domain_error("classical_check: p must be an odd prime");
  Verdict v;
  if (def.needs_p_gt_3 && p == 3) {
    v.diagnostics = "display requires p > 3";
    return v;
  }
  long pr = 1;
  for (long i = 0; i < r; ++i) pr *= p;

  BigRat lhs = 0;
  for (long k = 0; k <= (pr + 1) / 2; ++k) lhs += detail::padic_lhs_term(id, k);
  BigRat p2r = BigRat(pr) * pr;
  BigRat pre = def.cst * pr * (p2r - p2r * p2r - 1) / (p2r - 1);
  BigRat rhs = 0;
  for (long k = 0; k <= (pr - 3) / 2; ++k) rhs += detail::padic_rhs_term(id, k);
  rhs *= pre;

  if (vp(p2r - 1, p) != 0)
    throw std::logic_error("classical_check: prefactor denominator valuation");

  BigRat delta = lhs - rhs;
  std::string ds = rat_str(delta);
  v.witness_digest = detail::fnv1a64(ds);
  long need = r + 3;
  long have = (delta == 0) ? kValInfinity : vp(delta, p);
  std::ostringstream os;
  if (have == kValInfinity)
    os << "exact equality (valuation +inf, need >= " << need << ")";
  else
    os << "v_" << p << "(delta) = " << have << ", need >= " << need;
  if (def.id == PadicId::PAD15 && p == 3)
    os << "; display stated without the p > 3 restriction, checked at p = 3";
  v.diagnostics = os.str();
  v.status = (have >= need) ? Status::PASS : Status::FAIL;
  if (v.passed() && have != kValInfinity) {
    // witness: delta / p^{r+3} is a p-integral rational
    BigRat unit = delta / rat_pow(BigRat(p), need);
    v.cofactor = RatFn(unit);
  }
  return v;
}

}  // namespace qcl
