#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oligocat/scalars.hpp"

#include <random>

using namespace oligo;

TEST_CASE("rational arithmetic is exact and canonical") {
  CHECK(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK((Rat(1, 2) / Rat(3, 4)) == Rat(2, 3));
  CHECK(Rat(-6, 4).str() == "-3/2");
  CHECK(Rat(14, 7).str() == "2");
  CHECK(Rat::parse("5/6") == Rat(5, 6));
  CHECK(Rat(0).is_zero());
  CHECK_THROWS(Rat(1) / Rat(0));
}

TEST_CASE("rational field axioms on random triples") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<long> d(-20, 20);
  for (int i = 0; i < 200; ++i) {
    long dn = d(rng), dd = d(rng), en = d(rng), ed = d(rng), fn = d(rng), fd = d(rng);
    if (!dd || !ed || !fd) continue;
    Rat a(dn, dd), b(en, ed), c(fn, fd);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + (-a) == Rat(0));
    if (!a.is_zero()) CHECK(a * (Rat(1) / a) == Rat(1));
  }
}

TEST_CASE("polynomial arithmetic, division, gcd") {
  Poly t = Poly::t();
  Poly p = t * t - Poly(1);          // t^2 - 1
  Poly q = t - Poly(1);
  Poly quo, rem;
  Poly::divmod(p, q, quo, rem);
  CHECK(quo == t + Poly(1));
  CHECK(rem.is_zero());
  CHECK(Poly::gcd(p, q) == q);
  CHECK(p.eval(Rat(3)) == Rat(8));
  CHECK((t * t - t).str() == "t^2 - t");
  CHECK((Poly(2) * t + Poly(-3)).str() == "2t - 3");
}

TEST_CASE("rational functions cancel and normalize") {
  RatFunc t = RatFunc::t();
  RatFunc f = (t * (t - RatFunc(1))) / (t - RatFunc(1));
  CHECK(f == t);  // exact cancellation
  CHECK((t - t).is_zero());
  RatFunc half = RatFunc(Poly(1), Poly(2));  // 1/2 as constant function
  CHECK(half.num() == Poly(Rat(1, 2)));
  CHECK(half.den() == Poly(1));  // denominator normalized monic

  RatFunc g = t * (t - RatFunc(1));
  CHECK(g.eval(Rat(3)) == Rat(6));
  CHECK(g.eval(Rat(2)).is_zero() == false);
  RatFunc h = t * (t - RatFunc(1)) * (t - RatFunc(2));
  CHECK(h.eval(Rat(2)) == Rat(0));
  RatFunc pole = RatFunc(1) / (t - RatFunc(1));
  CHECK_THROWS(pole.eval(Rat(1)));
}

TEST_CASE("ratfunc eval commutes with arithmetic") {
  std::mt19937 rng(777);
  std::uniform_int_distribution<long> d(-5, 5);
  RatFunc t = RatFunc::t();
  for (int i = 0; i < 50; ++i) {
    RatFunc f = t * RatFunc(d(rng)) + RatFunc(d(rng));
    RatFunc g = t * t * RatFunc(d(rng)) - RatFunc(d(rng));
    Rat v(d(rng));
    CHECK((f * g).eval(v) == f.eval(v) * g.eval(v));
    CHECK((f + g).eval(v) == f.eval(v) + g.eval(v));
  }
}

TEST_CASE("prime field F_2 and F_3") {
  CHECK((FqElem(1, 2) + FqElem(1, 2)).is_zero());
  CHECK(FqElem(2, 3) * FqElem(2, 3) == FqElem(1, 3));
  CHECK(FqElem(2, 3).inv() == FqElem(2, 3));
  CHECK(FqElem(1, 2).str() == "1 mod 2");
  CHECK_THROWS(FqElem(0, 3).inv());
}

TEST_CASE("prime power fields via irreducible polynomials") {
  CHECK(FqElem::supported(4));
  CHECK(FqElem::supported(49));
  CHECK(!FqElem::supported(128));
  CHECK_THROWS(FqElem(0, 128));

  // In every supported field, nonzero elements form a group of order q-1.
  for (unsigned q : {4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
    for (unsigned v = 1; v < q; ++v) {
      FqElem a(v, q);
      CHECK(a * a.inv() == FqElem(1, q));
    }
    // Associativity and distributivity spot checks.
    FqElem x(1, q), y(q - 1, q), z(q / 2, q);
    CHECK((x + y) + z == x + (y + z));
    CHECK(x * (y + z) == x * y + x * z);
    CHECK((x * y) * z == x * (y * z));
  }
}
