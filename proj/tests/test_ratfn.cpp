#include "qcl/ratfn.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace qcl;

namespace {

LaurentPoly P(std::initializer_list<long> coeffs, long min_exp = 0) {
  std::vector<BigRat> v;
  for (long c : coeffs) v.emplace_back(c);
  return LaurentPoly(min_exp, std::move(v));
}

}  // namespace

TEST_CASE("ratfn canonical form", "[ratfn]") {
  // q-power factors of the denominator move to the numerator
  RatFn a(P({1}), P({0, 0, 1}));  // 1 / q^2
  CHECK(a.num() == LaurentPoly::q_power(-2));
  CHECK(a.den() == P({1}));
  CHECK(a.canonical());

  // common factors cancel, denominator is made monic
  RatFn b(P({-1, 0, 1}), P({2, 2}));  // (q^2-1)/(2q+2)
  CHECK(b.num() == P({-1, 1}) * BigRat(1, 2));
  CHECK(b.den() == P({1}));

  RatFn c(P({1, 1}), P({2, 2}));
  CHECK(c == RatFn(BigRat(1, 2)));

  RatFn d(P({0, 1}), P({3, 0, 3}));  // q / (3q^2+3)
  CHECK(d.den() == P({1, 0, 1}));
  CHECK(d.num() == P({0, 1}) * BigRat(1, 3));
  CHECK(d.canonical());

  CHECK(RatFn(LaurentPoly(), P({5, 1})).den() == P({1}));
  CHECK_THROWS_AS(RatFn(P({1}), LaurentPoly()), std::domain_error);
}

TEST_CASE("ratfn arithmetic", "[ratfn]") {
  RatFn inv_q(P({1}), P({0, 1}));
  CHECK((inv_q + -inv_q).is_zero());
  CHECK(RatFn::q_power(-1) * RatFn::q_power(3) == RatFn::q_power(2));

  RatFn lhs(P({-1, 0, 1}), P({1, 1}));  // (q^2-1)/(q+1)
  CHECK(lhs - RatFn(P({-1, 1})) == RatFn());

  RatFn x(P({1, 1}), P({1, 0, 1}));
  RatFn y(P({3}), P({0, 0, 1}));
  RatFn s = x + y;
  CHECK(s * RatFn(P({1, 0, 1})) * RatFn::q_power(2) ==
        RatFn(P({1, 1})) * RatFn::q_power(2) + RatFn(P({3})) * RatFn(P({1, 0, 1})));
  CHECK_THROWS_AS(x / RatFn(), std::domain_error);

  CHECK(x.pow(3) == x * x * x);
  CHECK(x.pow(-2) == RatFn(BigRat(1)) / (x * x));
  CHECK(x.pow(0) == RatFn(BigRat(1)));
}

TEST_CASE("reducing a reduced ratfn is a fixed point", "[ratfn]") {
  std::vector<RatFn> cases = {
      RatFn(P({1, 2}, -3), P({1, 1, 1})),
      RatFn(P({-1, 0, 1}), P({2, 2})),
      RatFn(),
      RatFn(BigRat(7, 3)),
      RatFn(P({5, 0, 0, 1}), P({1, 9, 1, 4})),
  };
  for (const RatFn& r : cases) {
    CHECK(r.canonical());
    RatFn again(r.num(), r.den());
    CHECK(again == r);
  }
}

TEST_CASE("ratfn evaluation", "[ratfn]") {
  RatFn r(P({-1, 0, 1}), P({1, 1}));
  CHECK(r.eval(BigRat(5)) == 4);
  RatFn s(P({1}, -1), P({1}));
  CHECK(s.eval(BigRat(4)) == BigRat(1, 4));
}
