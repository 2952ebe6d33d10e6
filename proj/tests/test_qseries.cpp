#include <catch2/catch_amalgamated.hpp>

#include "qcl/qseries.hpp"

#include <random>

using namespace qcl;

namespace {

LaurentPoly P(std::vector<long> coeffs, long min_exp = 0) {
  std::vector<BigRat> c;
  for (long v : coeffs) c.emplace_back(v);
  return LaurentPoly(min_exp, std::move(c));
}

RatFn poch_ratfn(const BigRat& c, long e, long k) {
  return RatFn(qpoch_poly(c, e, 2, k));
}

}  // namespace

TEST_CASE("q-integers as rational functions") {
  CHECK(qint(0).is_zero());
  CHECK(qint(1) == RatFn(BigRat(1)));
  CHECK(qint(4) == RatFn(P({1, 1, 1, 1})));
  CHECK(qint(-3) == RatFn(BigRat(-1)) * RatFn::q_power(-3) * qint(3));
  for (long t = 2; t <= 30; ++t) {
    LaurentPoly prod{BigRat(1)};
    for (long d : detail::divisors(t))
      if (d > 1) prod *= cyclotomic(d);
    CHECK(qint(t) == RatFn(prod));
  }
}

TEST_CASE("Gaussian binomials") {
  CHECK(qbinom(4, 2) == RatFn(P({1, 1, 2, 1, 1})));
  CHECK_THROWS_AS(qbinom(2, 5), std::domain_error);
  CHECK(qbinom(5, 0) == RatFn(BigRat(1)));
  for (long t = 1; t <= 12; ++t)
    for (long s = 0; s <= t; ++s) {
      CHECK(qbinom(t, s) == qbinom(t, t - s));
      if (s > 0 && s < t)
        CHECK(qbinom(t, s) ==
              qbinom(t - 1, s - 1) + RatFn::q_power(s) * qbinom(t - 1, s));
    }
}

TEST_CASE("central binomial product identity") {
  for (long t = 0; t <= 30; ++t) {
    RatFn lhs = RatFn(qpoch_poly(1, 1, 2, t)) / RatFn(qpoch_poly(1, 2, 2, t)) *
                RatFn(qpoch_poly(-1, 1, 1, t)).pow(2);
    RatFn cb = qbinom(2 * t, t);
    CHECK(lhs == cb);
    CHECK(cb.den() == LaurentPoly(BigRat(1)));
    for (long e = cb.num().min_exp(); e <= cb.num().max_exp(); ++e) {
      BigRat c = cb.num().coeff(e);
      CHECK(c >= 0);
      CHECK(c.get_den() == 1);
    }
  }
}

TEST_CASE("Pochhammer multiplicativity") {
  std::mt19937_64 rng(0x5EED);
  for (int it = 0; it < 50; ++it) {
    long num = static_cast<long>(rng() % 13) - 6;
    long den = 1 + static_cast<long>(rng() % 4);
    if (num == 0) num = 7;
    BigRat x(num, den);
    x.canonicalize();
    long e = static_cast<long>(rng() % 7) - 3;
    long j = static_cast<long>(rng() % 7);
    long k = static_cast<long>(rng() % 7);
    LaurentPoly whole = qpoch_poly(x, e, 2, j + k);
    LaurentPoly split = qpoch_poly(x, e, 2, j) * qpoch_poly(x, e + 2 * j, 2, k);
    CHECK(whole == split);
  }
}

TEST_CASE("factored accumulator reduces to canonical rational functions") {
  SECTION("negative powers split into cyclotomic factors") {
    FRat f = FRat::one();
    f.mul_qint(6, -1);
    CHECK(f.to_ratfn() == RatFn(BigRat(1)) / qint(6));
    FRat g = FRat::one();
    g.mul_linfac(1, 4, -1);
    CHECK(g.to_ratfn() == RatFn(BigRat(1)) / RatFn(LaurentPoly::one_minus(1, 4)));
    FRat h = FRat::one();
    h.mul_linfac(-1, 2, -1);
    CHECK(h.to_ratfn() == RatFn(BigRat(1)) / RatFn(P({1, 0, 1})));
  }
  SECTION("general binomial denominators") {
    FRat f = FRat::one();
    f.mul_linfac(BigRat(2), 3, -1);
    CHECK(f.to_ratfn() ==
          RatFn(BigRat(1)) / RatFn(LaurentPoly::one_minus(2, 3)));
    FRat g = FRat::one();
    g.mul_linfac(BigRat(3, 2), -2, -2);
    CHECK(g.to_ratfn() ==
          RatFn(BigRat(1)) / RatFn(LaurentPoly::one_minus(BigRat(3, 2), -2)).pow(2));
  }
  SECTION("composite-risk factors still cancel exactly") {
    // q^3 - 8 is reducible; the fallback gcd path must cancel it fully.
    FRat f = FRat::one();
    f.mul_poly(LaurentPoly::one_minus(BigRat(1, 8), 3));
    f.mul_linfac(BigRat(1, 8), 3, -1);
    CHECK_FALSE(f.den_all_irreducible());
    CHECK(f.to_ratfn() == RatFn(BigRat(1)));
  }
  SECTION("addition merges denominator multisets") {
    FRat f = FRat::one();
    f.mul_qint(3, -1);
    FRat g = FRat::one();
    g.mul_qint(5, -1);
    f.add(g);
    CHECK(f.to_ratfn() ==
          RatFn(BigRat(1)) / qint(3) + RatFn(BigRat(1)) / qint(5));
  }
  SECTION("random linear-factor products match direct arithmetic") {
    std::mt19937_64 rng(0xFEED5);
    for (int it = 0; it < 25; ++it) {
      FRat f = FRat::one();
      RatFn direct(BigRat(1));
      for (int s = 0; s < 6; ++s) {
        long num = static_cast<long>(rng() % 9) - 4;
        long den = 1 + static_cast<long>(rng() % 3);
        BigRat c(num, den);
        c.canonicalize();
        long e = static_cast<long>(rng() % 9) - 4;
        long pw = static_cast<long>(rng() % 3) - 1;
        if (c == 1 && e == 0 && pw < 0) continue;
        f.mul_linfac(c, e, pw);
        RatFn lin(LaurentPoly::one_minus(c, e));
        if (pw == 1)
          direct = direct * lin;
        else if (pw == -1)
          direct = direct / lin;
      }
      CHECK(f.to_ratfn() == direct);
    }
  }
}

TEST_CASE("summation machinery matches direct evaluation") {
  SumSpec s;
  s.has_qint = true;
  s.qint_a = 2;
  s.qint_b = 1;
  s.alternating = true;
  s.z.coeff = 2;
  s.quad_a = 1;
  s.pochs.push_back({MonomialSpec{1, {}, -1}, LenForm::k(), 1});
  s.pochs.push_back({MonomialSpec{1, {}, 2}, LenForm::k(), -1});

  RatFn direct;
  for (long k = 0; k <= 3; ++k) {
    RatFn t = qint(2 * k + 1) * RatFn(BigRat(rat_pow(BigRat(2), k))) *
              RatFn::q_power(k * k) * poch_ratfn(1, -1, k) /
              poch_ratfn(1, 2, k);
    if (k % 2 != 0) t = RatFn(BigRat(-1)) * t;
    direct = direct + t;
    CHECK(sum_term(s, k, 5, {}).to_ratfn() == t);
  }
  CHECK(eval_sum_raw(s, 3, 5, {}).to_ratfn() == direct);
}

TEST_CASE("prefactor machinery matches direct evaluation") {
  PrefactorSpec p;
  p.coeff = BigRat(3, 2);
  p.qints.push_back({1, 1, 2});
  p.monos.push_back({MonomialSpec{1, {{'a', 1}}, 1}, ExpForm{0, 1, 1, 2}});
  p.pochs.push_back({MonomialSpec{1, {{'b', 1}}, 2}, LenForm::affine(1, -1, 2), -1});

  ParamMap vals{{'a', BigRat(2)}, {'b', BigRat(3)}};
  RatFn direct = RatFn(BigRat(3, 2)) * qint(6) * qint(6) *
                 RatFn(BigRat(8)) * RatFn::q_power(3) / poch_ratfn(3, 2, 2);
  CHECK(eval_prefactor(p, 5, vals).to_ratfn() == direct);

  PrefactorSpec named;
  named.named = NamedFactor::OMEGA;
  CHECK(eval_prefactor(named, 3, {}).to_ratfn() == omega(3));
}

TEST_CASE("bound resolution") {
  SumSpec s;
  CHECK(resolve_bound(s, 9, MMode::HALF) == 5);
  CHECK(resolve_bound(s, 9, MMode::NM1) == 8);
  s.bound = BoundKind::HALF_NM3;
  CHECK(resolve_bound(s, 9, MMode::HALF) == 3);
  CHECK(resolve_bound(s, 9, MMode::NM1) == 3);
  s.bound = BoundKind::FIXED;
  s.fixed_bound = 7;
  CHECK(resolve_bound(s, 3, MMode::HALF) == 7);
}

TEST_CASE("special prefactors agree with pinned values") {
  CHECK(omega(3).eval(2) == BigRat(-411656, 225));
  CHECK(theta(3, 2, 3).eval(5) ==
        BigRat("-134541503851718") / BigRat("20542533346825"));
  CHECK(rq(3, 2).eval(3) ==
        BigRat("-244397803149") / BigRat("484339520"));
  CHECK(sq(3, 2).eval(3) == BigRat(-1653607, 13440));

  CHECK_THROWS_AS(omega(4), std::domain_error);
  CHECK_THROWS_AS(omega(1), std::domain_error);
  CHECK_THROWS_AS(theta(3, 2, 2), std::domain_error);
  CHECK_THROWS_AS(theta(3, 2, BigRat(1, 2)), std::domain_error);
  CHECK_THROWS_AS(rq(3, 1), std::domain_error);
  CHECK_THROWS_AS(sq(3, -1), std::domain_error);
}
