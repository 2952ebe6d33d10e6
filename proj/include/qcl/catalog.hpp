#pragma once

#include "qcl/qseries.hpp"

#include <string_view>
#include <vector>

namespace qcl {

enum class TargetId {
  THM11,
  THM12,
  THM31,
  EQ12,
  EQ13,
  EQ14,
  EQ14_STRONG,
  GEN_CDQ3,
  GEN_CDQ3_AB,
  COR13,
  COR14,
  COR15,
  COR16,
  COR17,
  WEI_E,
  WEI_F,
  WEI_G,
  WEI_H,
  GS54,
  GUO_L1,
  GUO_L2,
};

enum class Side { LHS, RHS };

enum class ModFactorKind { CYCLO, QINT, ONE_MINUS_AQN, A_MINUS_QN, B_MINUS_QN };

struct ModFactor {
  ModFactorKind kind;
  long exp{1};

  bool operator==(const ModFactor&) const = default;
};

struct ModulusRecipe {
  std::vector<ModFactor> factors;

  bool operator==(const ModulusRecipe&) const = default;
};

struct TargetDef {
  TargetId id;
  const char* name;   // stable public name (CLI / reports)
  const char* title;  // one-line description
  const char* params; // sampled free parameters, in order
  long min_n{3};      // smallest admissible odd n
  bool special{false};  // checked by dedicated code, not the SumSpec pair
  SumSpec lhs;
  SumSpec rhs;
  ModulusRecipe modulus;
};

namespace detail {

inline MonomialSpec mono(long qexp) { return MonomialSpec{1, {}, qexp}; }

inline MonomialSpec mono(std::initializer_list<std::pair<const char, long>> ps,
                         long qexp) {
  return MonomialSpec{1, std::map<char, long>(ps), qexp};
}

inline MonomialSpec neg_mono(long qexp) { return MonomialSpec{-1, {}, qexp}; }

inline PochFactor pk(MonomialSpec base, long power) {
  return PochFactor{std::move(base), LenForm::k(), power};
}

inline PochFactor ph(MonomialSpec base, long power) {  // length (n+1)/2
  return PochFactor{std::move(base), LenForm::affine(1, 1, 2), power};
}

inline PochFactor pc(MonomialSpec base, long len, long power) {
  return PochFactor{std::move(base), LenForm::constant(len), power};
}

inline QIntAtom qi(long c0, long power) { return QIntAtom{0, c0, power}; }

// LHS shared by the two fully parametrized theorems: a very-well-poised
// quotient with six Pochhammer pairs and the monomial z^k.
inline SumSpec big_lhs(MonomialSpec z) {
  SumSpec s;
  s.has_qint = true;
  s.qint_a = 4;
  s.qint_b = -1;
  s.z = std::move(z);
  s.pochs = {
      pk(mono({{'a', 1}}, -1), 1),  pk(mono({{'a', -1}}, -1), 1),
      pk(mono({{'b', -1}}, -1), 1), pk(mono({{'c', 1}}, -1), 1),
      pk(mono({{'d', 1}}, -1), 1),  pk(mono(-1), 1),
      pk(mono({{'a', -1}}, 2), -1), pk(mono({{'a', 1}}, 2), -1),
      pk(mono({{'b', 1}}, 2), -1),  pk(mono({{'c', -1}}, 2), -1),
      pk(mono({{'d', -1}}, 2), -1), pk(mono(2), -1),
  };
  return s;
}

// RHS sum shared by the boundary-factor identities (bound (n+1)/2).
inline SumSpec boundary_rhs_sum() {
  SumSpec s;
  s.bound = BoundKind::HALF_NP1;
  s.quad_b = 2;
  s.pochs = {
      pk(mono({{'a', 1}}, -1), 1),  pk(mono({{'a', -1}}, -1), 1),
      pk(mono({{'b', -1}}, -1), 1), pk(mono({{'c', -1}, {'d', -1}}, 3), 1),
      pk(mono(2), -1),              pk(mono({{'b', -1}}, -2), -1),
      pk(mono({{'c', -1}}, 2), -1), pk(mono({{'d', -1}}, 2), -1),
  };
  return s;
}

// Prefactor (bq)^{(n+1)/2} (q^{-2}/b;q^2)_{(n+1)/2} / (bq^2;q^2)_{(n+1)/2}.
inline PrefactorSpec b_boundary_prefactor() {
  PrefactorSpec p;
  p.qints = {QIntAtom{1, 0, 1}};
  p.monos = {{mono({{'b', 1}}, 1), ExpForm{0, 1, 1, 2}}};
  p.pochs = {ph(mono({{'b', -1}}, -2), 1), ph(mono({{'b', 1}}, 2), -1)};
  return p;
}

// LHS of the squared-pair variants (parameters a, c, d; b specialized to 1).
inline SumSpec squared_pair_lhs() {
  SumSpec s;
  s.has_qint = true;
  s.qint_a = 4;
  s.qint_b = -1;
  s.z = mono({{'c', -1}, {'d', -1}}, 7);
  s.pochs = {
      pk(mono({{'a', 1}}, -1), 1),  pk(mono({{'a', -1}}, -1), 1),
      pk(mono({{'c', 1}}, -1), 1),  pk(mono({{'d', 1}}, -1), 1),
      pk(mono(-1), 2),
      pk(mono({{'a', -1}}, 2), -1), pk(mono({{'a', 1}}, 2), -1),
      pk(mono({{'c', -1}}, 2), -1), pk(mono({{'d', -1}}, 2), -1),
      pk(mono(2), -2),
  };
  return s;
}

// RHS sum of the squared-pair variants (bound (n-3)/2).
inline SumSpec squared_pair_rhs_sum() {
  SumSpec s;
  s.bound = BoundKind::HALF_NM3;
  s.quad_b = 2;
  s.pochs = {
      pk(mono(3), 1),
      pk(mono({{'a', 1}}, 3), 1),
      pk(mono({{'a', -1}}, 3), 1),
      pk(mono({{'c', -1}, {'d', -1}}, 7), 1),
      pk(mono(2), -1),
      pk(mono(6), -1),
      pk(mono({{'c', -1}}, 6), -1),
      pk(mono({{'d', -1}}, 6), -1),
  };
  return s;
}

// Fixed Pochhammer quotient shared by the squared-pair prefactors.
inline void squared_pair_prefactor_quotient(PrefactorSpec& p) {
  p.pochs.push_back(pc(mono({{'a', 1}}, -1), 2, 1));
  p.pochs.push_back(pc(mono({{'a', -1}}, -1), 2, 1));
  p.pochs.push_back(pc(mono({{'c', -1}, {'d', -1}}, 3), 2, 1));
  p.pochs.push_back(pc(neg_mono(2), 1, -1));
  p.pochs.push_back(pc(neg_mono(1), 1, -2));
  p.pochs.push_back(pc(mono({{'c', -1}}, 2), 2, -1));
  p.pochs.push_back(pc(mono({{'d', -1}}, 2), 2, -1));
}

// LHS families of the unparametrized corollaries:
// [4k-1] (q^{-1};q^2)_k^{w} (q^{-3};q^2)_k^{t} / ((q^2;q^2)_k^{w} (q^4;q^2)_k^{t})
// times sign^k q^{quad_a k^2 + quad_b k}.
inline SumSpec cor_lhs(long w, long t, bool alternating, long quad_a,
                       long quad_b) {
  SumSpec s;
  s.has_qint = true;
  s.qint_a = 4;
  s.qint_b = -1;
  s.alternating = alternating;
  s.quad_a = quad_a;
  s.quad_b = quad_b;
  s.pochs.push_back(pk(mono(-1), w));
  if (t > 0) s.pochs.push_back(pk(mono(-3), t));
  s.pochs.push_back(pk(mono(2), -w));
  if (t > 0) s.pochs.push_back(pk(mono(4), -t));
  return s;
}

inline SumSpec zero_rhs() {
  SumSpec s;
  s.bound = BoundKind::FIXED;
  s.fixed_bound = 0;
  s.prefactor.coeff = 0;
  return s;
}

inline ModulusRecipe mod_phi(long e) {
  return ModulusRecipe{{{ModFactorKind::CYCLO, e}}};
}

inline std::vector<TargetDef> build_catalog() {
  std::vector<TargetDef> v;

  {  // two-parameter boundary identity, full parameter set
    TargetDef t{TargetId::THM11,
                "thm-a",
                "doubly bounded sum with b-boundary closed form",
                "abcd",
                3,
                false,
                big_lhs(mono({{'b', 1}, {'c', -1}, {'d', -1}}, 7)),
                boundary_rhs_sum(),
                {{{ModFactorKind::CYCLO, 1},
                  {ModFactorKind::ONE_MINUS_AQN, 1},
                  {ModFactorKind::A_MINUS_QN, 1}}}};
    t.rhs.prefactor = b_boundary_prefactor();
    v.push_back(std::move(t));
  }

  {  // quartic variant with central defect factor
    TargetDef t{TargetId::THM12,
                "thm-b",
                "quartic sum against the central defect factor",
                "cd",
                3,
                false,
                SumSpec{},
                SumSpec{},
                {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 3}}}};
    t.lhs.has_qint = true;
    t.lhs.qint_a = 4;
    t.lhs.qint_b = -1;
    t.lhs.z = mono({{'c', -1}, {'d', -1}}, 7);
    t.lhs.pochs = {pk(mono(-1), 4),             pk(mono({{'c', 1}}, -1), 1),
                   pk(mono({{'d', 1}}, -1), 1), pk(mono(2), -4),
                   pk(mono({{'c', -1}}, 2), -1), pk(mono({{'d', -1}}, 2), -1)};
    t.rhs.bound = BoundKind::HALF_NM3;
    t.rhs.quad_b = 2;
    t.rhs.pochs = {pk(mono(3), 3),
                   pk(mono({{'c', -1}, {'d', -1}}, 7), 1),
                   pk(mono(2), -1),
                   pk(mono(6), -1),
                   pk(mono({{'c', -1}}, 6), -1),
                   pk(mono({{'d', -1}}, 6), -1)};
    t.rhs.prefactor.named = NamedFactor::OMEGA;
    t.rhs.prefactor.pochs = {pc(mono(1), 1, 2), pc(neg_mono(1), 1, -2),
                             pc(mono({{'c', -1}, {'d', -1}}, 3), 2, 1),
                             pc(mono({{'c', -1}}, 2), 2, -1),
                             pc(mono({{'d', -1}}, 2), 2, -1)};
    v.push_back(std::move(t));
  }

  {  // three-factor modulus refinement with the two-term boundary factor
    TargetDef t{TargetId::THM31,
                "thm-c",
                "refined boundary congruence with two-term closed form",
                "abcd",
                3,
                false,
                big_lhs(mono({{'b', 1}, {'c', -1}, {'d', -1}}, 7)),
                boundary_rhs_sum(),
                {{{ModFactorKind::CYCLO, 1},
                  {ModFactorKind::ONE_MINUS_AQN, 1},
                  {ModFactorKind::A_MINUS_QN, 1},
                  {ModFactorKind::B_MINUS_QN, 1}}}};
    t.rhs.prefactor.qints = {QIntAtom{1, 0, 1}};
    t.rhs.prefactor.named = NamedFactor::THETA;
    v.push_back(std::move(t));
  }

  {  // alternating quintic congruence
    TargetDef t{TargetId::EQ12,
                "eq12",
                "alternating quintic sum with signed q-power closed form",
                "",
                3,
                false,
                cor_lhs(5, 0, true, 1, 5),
                SumSpec{},
                {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 2}}}};
    SumSpec rhs;
    rhs.bound = BoundKind::HALF_NP1;
    rhs.quad_b = 3;
    rhs.pochs = {pk(mono(-1), 2), pk(mono(3), 1), pk(mono(2), -3)};
    rhs.prefactor.qints = {QIntAtom{1, 0, 1}};
    rhs.prefactor.monos = {{neg_mono(1), ExpForm{1, -2, -3, 4}}};
    t.rhs = std::move(rhs);
    v.push_back(std::move(t));
  }

  v.push_back({TargetId::EQ13,
               "eq13",
               "quartic sum vanishing to second cyclotomic order",
               "",
               3,
               false,
               cor_lhs(4, 0, false, 0, 4),
               zero_rhs(),
               {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 2}}}});

  {  // a-parametrized vanishing sum, displayed modulus
    SumSpec lhs;
    lhs.has_qint = true;
    lhs.qint_a = 4;
    lhs.qint_b = -1;
    lhs.quad_b = 4;
    lhs.pochs = {pk(mono({{'a', 1}}, -1), 1), pk(mono({{'a', -1}}, -1), 1),
                 pk(mono(-1), 2),             pk(mono({{'a', -1}}, 2), -1),
                 pk(mono({{'a', 1}}, 2), -1), pk(mono(2), -2)};
    v.push_back({TargetId::EQ14,
                 "eq14",
                 "a-parametrized vanishing sum, proved modulus",
                 "a",
                 3,
                 false,
                 lhs,
                 zero_rhs(),
                 {{{ModFactorKind::QINT, 1},
                   {ModFactorKind::CYCLO, 1},
                   {ModFactorKind::ONE_MINUS_AQN, 1},
                   {ModFactorKind::A_MINUS_QN, 1}}}});
    v.push_back({TargetId::EQ14_STRONG,
                 "eq14-strong",
                 "a-parametrized vanishing sum, stated modulus",
                 "a",
                 3,
                 false,
                 std::move(lhs),
                 zero_rhs(),
                 {{{ModFactorKind::QINT, 2},
                   {ModFactorKind::ONE_MINUS_AQN, 1},
                   {ModFactorKind::A_MINUS_QN, 1}}}});
  }

  {  // two-parameter generalization with plain boundary prefactor
    SumSpec lhs;
    lhs.has_qint = true;
    lhs.qint_a = 4;
    lhs.qint_b = -1;
    lhs.z = mono({{'b', 1}}, 4);
    lhs.pochs = {pk(mono({{'a', 1}}, -1), 1),  pk(mono({{'a', -1}}, -1), 1),
                 pk(mono({{'b', -1}}, -1), 1), pk(mono(-1), 1),
                 pk(mono({{'a', -1}}, 2), -1), pk(mono({{'a', 1}}, 2), -1),
                 pk(mono({{'b', 1}}, 2), -1),  pk(mono(2), -1)};
    SumSpec rhs;
    rhs.bound = BoundKind::FIXED;
    rhs.fixed_bound = 0;
    rhs.prefactor = b_boundary_prefactor();
    v.push_back({TargetId::GEN_CDQ3,
                 "gen-cdq3",
                 "two-parameter boundary congruence",
                 "ab",
                 3,
                 false,
                 lhs,
                 std::move(rhs),
                 {{{ModFactorKind::QINT, 1},
                   {ModFactorKind::ONE_MINUS_AQN, 1},
                   {ModFactorKind::A_MINUS_QN, 1}}}});
    SumSpec rhs2;
    rhs2.bound = BoundKind::FIXED;
    rhs2.fixed_bound = 0;
    rhs2.prefactor.qints = {QIntAtom{1, 0, 1}};
    rhs2.prefactor.named = NamedFactor::THETA;
    v.push_back({TargetId::GEN_CDQ3_AB,
                 "gen-cdq3-ab",
                 "two-parameter congruence with two-term boundary factor",
                 "ab",
                 3,
                 false,
                 std::move(lhs),
                 std::move(rhs2),
                 {{{ModFactorKind::QINT, 1},
                   {ModFactorKind::ONE_MINUS_AQN, 1},
                   {ModFactorKind::A_MINUS_QN, 1},
                   {ModFactorKind::B_MINUS_QN, 1}}}});
  }

  {  // corollary family against the central defect factor
    auto cor_rhs = [](std::vector<PochFactor> pochs,
                      std::vector<QIntAtom> qints) {
      SumSpec s;
      s.bound = BoundKind::HALF_NM3;
      s.quad_b = 2;
      s.pochs = std::move(pochs);
      s.prefactor.named = NamedFactor::OMEGA;
      s.prefactor.qints = std::move(qints);
      return s;
    };
    v.push_back({TargetId::COR13,
                 "cor13",
                 "alternating quintic corollary",
                 "",
                 3,
                 false,
                 cor_lhs(5, 0, true, 1, 5),
                 cor_rhs({pk(mono(3), 3), pk(mono(2), -1), pk(mono(6), -2)},
                         {qi(2, -3), qi(4, -1)}),
                 {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 3}}}});
    v.push_back({TargetId::COR14,
                 "cor14",
                 "alternating mixed quartic corollary",
                 "",
                 5,
                 false,
                 cor_lhs(4, 1, true, 1, 7),
                 cor_rhs({pk(mono(3), 3), pk(mono(2), -1), pk(mono(6), -1),
                          pk(mono(8), -1)},
                         {qi(2, -2), qi(4, -1), qi(6, -1)}),
                 {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 3}}}});
    v.push_back({TargetId::COR15,
                 "cor15",
                 "sextic corollary",
                 "",
                 3,
                 false,
                 cor_lhs(6, 0, false, 0, 7),
                 cor_rhs({pk(mono(3), 3), pk(mono(7), 1), pk(mono(2), -1),
                          pk(mono(6), -3)},
                         {qi(3, 1), qi(5, 1), qi(2, -4), qi(4, -2)}),
                 {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 3}}}});
    v.push_back({TargetId::COR16,
                 "cor16",
                 "mixed quintic corollary",
                 "",
                 5,
                 false,
                 cor_lhs(5, 1, false, 0, 9),
                 cor_rhs({pk(mono(3), 3), pk(mono(9), 1), pk(mono(2), -1),
                          pk(mono(6), -2), pk(mono(8), -1)},
                         {qi(5, 1), qi(7, 1), qi(2, -3), qi(4, -2), qi(6, -1)}),
                 {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 3}}}});
    v.push_back({TargetId::COR17,
                 "cor17",
                 "doubly mixed quartic corollary",
                 "",
                 5,
                 false,
                 cor_lhs(4, 2, false, 0, 11),
                 cor_rhs({pk(mono(3), 3), pk(mono(11), 1), pk(mono(2), -1),
                          pk(mono(6), -1), pk(mono(8), -2)},
                         {qi(7, 1), qi(9, 1), qi(2, -2), qi(4, -2), qi(6, -2)}),
                 {{{ModFactorKind::QINT, 1}, {ModFactorKind::CYCLO, 3}}}});
  }

  {  // first reduction display: full sum against the a-boundary prefactor
    TargetDef t{TargetId::WEI_E,
                "wei-e",
                "four-parameter reduction step with a-boundary prefactor",
                "abcd",
                3,
                false,
                big_lhs(mono({{'b', 1}, {'c', -1}, {'d', -1}}, 7)),
                boundary_rhs_sum(),
                {{{ModFactorKind::B_MINUS_QN, 1}}}};
    PrefactorSpec p;
    p.qints = {QIntAtom{1, 0, 1}};
    p.pochs = {pc(mono({{'b', 1}}, 0), 2, 1), ph(mono(-1), 2),
               pc(mono(-1), 2, -1), ph(mono({{'a', -1}}, 2), -1),
               ph(mono({{'a', 1}}, 2), -1)};
    t.rhs.prefactor = std::move(p);
    v.push_back(std::move(t));
  }

  {  // second reduction display, b specialized away
    TargetDef t{TargetId::WEI_F,
                "wei-f",
                "squared-pair reduction step with first boundary factor",
                "acd",
                3,
                false,
                squared_pair_lhs(),
                squared_pair_rhs_sum(),
                {{{ModFactorKind::CYCLO, 2},
                  {ModFactorKind::ONE_MINUS_AQN, 1},
                  {ModFactorKind::A_MINUS_QN, 1}}}};
    t.rhs.prefactor.qints = {QIntAtom{1, 0, 1}};
    t.rhs.prefactor.named = NamedFactor::RQ;
    squared_pair_prefactor_quotient(t.rhs.prefactor);
    v.push_back(std::move(t));
  }

  v.push_back({TargetId::WEI_G,
               "wei-g",
               "boundary factor cyclotomic reduction",
               "a",
               3,
               true,
               SumSpec{},
               SumSpec{},
               mod_phi(1)});

  {  // final reduction display with the second boundary factor
    TargetDef t{TargetId::WEI_H,
                "wei-h",
                "squared-pair reduction step with second boundary factor",
                "acd",
                3,
                false,
                squared_pair_lhs(),
                squared_pair_rhs_sum(),
                {{{ModFactorKind::CYCLO, 2},
                  {ModFactorKind::ONE_MINUS_AQN, 1},
                  {ModFactorKind::A_MINUS_QN, 1}}}};
    t.rhs.prefactor.qints = {QIntAtom{1, 0, 1}};
    t.rhs.prefactor.named = NamedFactor::SQ;
    t.rhs.prefactor.monos = {{mono(1), ExpForm{0, 1, 9, 2}}};
    squared_pair_prefactor_quotient(t.rhs.prefactor);
    v.push_back(std::move(t));
  }

  v.push_back({TargetId::GS54,
               "gs54",
               "term reflection rule for half ranges",
               "x",
               3,
               true,
               SumSpec{},
               SumSpec{},
               mod_phi(1)});
  v.push_back({TargetId::GUO_L1,
               "guo-l1",
               "paired even-shift product evaluation",
               "a",
               3,
               true,
               SumSpec{},
               SumSpec{},
               mod_phi(1)});
  v.push_back({TargetId::GUO_L2,
               "guo-l2",
               "paired odd-shift product evaluation",
               "a",
               3,
               true,
               SumSpec{},
               SumSpec{},
               mod_phi(1)});

  return v;
}

}  // namespace detail

inline const std::vector<TargetDef>& catalog() {
  static const std::vector<TargetDef> v = detail::build_catalog();
  return v;
}

inline const TargetDef& target(TargetId id) {
  for (const auto& t : catalog())
    if (t.id == id) return t;
  throw std::logic_error("target: unknown id");
}

inline const TargetDef* find_target(std::string_view name) {
  for (const auto& t : catalog())
    if (t.name == name) return &t;
  return nullptr;
}

inline bool admissible_n(const TargetDef& t, long n) {
  return n % 2 != 0 && n >= t.min_n;
}

inline const SumSpec& target_side(const TargetDef& t, Side side) {
  if (t.special)
    throw std::domain_error("target_side: target has no summation form");
  return side == Side::LHS ? t.lhs : t.rhs;
}

// k-th summand of the given side, prefactor excluded.
inline RatFn catalog_term(TargetId id, Side side, long k, long n,
                          const ParamMap& params) {
  const TargetDef& t = target(id);
  if (!admissible_n(t, n)) throw std::domain_error("catalog_term: bad n");
  const SumSpec& s = target_side(t, side);
  long hi = resolve_bound(s, n, MMode::NM1);
  if (k < 0 || k > hi) throw std::domain_error("catalog_term: k out of range");
  return sum_term(s, k, n, params).to_ratfn();
}

inline FRat catalog_sum_frat(TargetId id, Side side, long n, MMode mode,
                             const ParamMap& params) {
  const TargetDef& t = target(id);
  if (!admissible_n(t, n)) throw std::domain_error("catalog_sum: bad n");
  const SumSpec& s = target_side(t, side);
  return eval_sum(s, resolve_bound(s, n, mode), n, params);
}

inline RatFn catalog_sum(TargetId id, Side side, long n, MMode mode,
                         const ParamMap& params) {
  return catalog_sum_frat(id, side, n, mode, params).to_ratfn();
}

}  // namespace qcl
