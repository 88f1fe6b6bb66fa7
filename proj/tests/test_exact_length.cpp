#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "mag/exact_length.hpp"

using namespace mag;

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("3/4") == Rat(3, 4));
  CHECK(parse_rational("-7") == Rat(-7));
  CHECK(parse_rational("6/4") == Rat(3, 2));
  CHECK(rational_to_string(Rat(3, 4)) == "3/4");
  CHECK(rational_to_string(Rat(5)) == "5");
  CHECK(rational_to_string(Rat(-1, 2)) == "-1/2");
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("integer square root and squarefree decomposition") {
  CHECK(isqrt(Int(0)) == 0);
  CHECK(isqrt(Int(15)) == 3);
  CHECK(isqrt(Int(16)) == 4);
  CHECK(isqrt(Int(17)) == 4);
  Int big = Int(123456789);
  CHECK(isqrt(big * big) == big);
  CHECK(isqrt(big * big - 1) == big - 1);

  auto [f, s] = squarefree_decompose(Int(72));  // 72 = 6^2 * 2
  CHECK(f == 6);
  CHECK(s == 2);
  auto [f2, s2] = squarefree_decompose(Int(30));
  CHECK(f2 == 1);
  CHECK(s2 == 30);
  auto [f3, s3] = squarefree_decompose(Int(49));
  CHECK(f3 == 7);
  CHECK(s3 == 1);
}

TEST_CASE("canonical radical form") {
  ExactLength a = ExactLength::sqrt_rational(Rat(8));  // 2 sqrt(2)
  CHECK(a.terms().size() == 1);
  CHECK(a.terms().at(Int(2)) == Rat(2));
  CHECK(ExactLength::sqrt_rational(Rat(49)) == ExactLength(7));
  // sqrt(1/2) = sqrt(2)/2
  ExactLength h = ExactLength::sqrt_rational(Rat(1, 2));
  CHECK(h.terms().at(Int(2)) == Rat(1, 2));
  // c * sqrt(s) with non-squarefree radicand normalizes
  CHECK(ExactLength::radical(Rat(3), Int(12)) == ExactLength::radical(Rat(6), Int(3)));
  CHECK(ExactLength(0).is_zero());
  CHECK((a - a).is_zero());
}

TEST_CASE("field arithmetic") {
  ExactLength r2 = ExactLength::sqrt_rational(Rat(2));
  ExactLength r3 = ExactLength::sqrt_rational(Rat(3));
  ExactLength r6 = ExactLength::sqrt_rational(Rat(6));

  CHECK((r2 + r3) * (r2 + r3) == ExactLength(5) + ExactLength(2) * r6);
  CHECK(r2 * r3 == r6);
  CHECK((ExactLength(1) + r2) * (ExactLength(1) - r2) == ExactLength(-1));

  // inverses, including multi-term denominators
  CHECK((ExactLength(1) + r2).inverse() == ExactLength(-1) + r2);
  for (const ExactLength& v :
       {r2, ExactLength(1) + r2 + r3, r6 - r2 - r3 + ExactLength(1), ExactLength(Rat(7, 3)),
        ExactLength(5) + ExactLength(Rat(1, 2)) * r6}) {
    CHECK(v * v.inverse() == ExactLength(1));
    CHECK(v / v == ExactLength(1));
  }
  CHECK_THROWS_AS(ExactLength(0).inverse(), std::domain_error);
}

TEST_CASE("exact sign of near-zero radical combinations") {
  ExactLength r2 = ExactLength::sqrt_rational(Rat(2));
  // continued fraction convergents of sqrt(2) straddle it
  CHECK((ExactLength(Rat(99, 70)) - r2).sign() == 1);
  CHECK((ExactLength(Rat(665857, 470832)) - r2).sign() == 1);
  CHECK((ExactLength(Rat(239, 169)) - r2).sign() == -1);  // 1.4142012...
  ExactLength r3 = ExactLength::sqrt_rational(Rat(3));
  ExactLength r5 = ExactLength::sqrt_rational(Rat(5));
  CHECK((r2 + r3 - r5).sign() == 1);
  CHECK((r2 + r3 - ExactLength(4) + r5).sign() == 1);  // 3.146 + 2.236 - 4 > 0
  CHECK((r2 * ExactLength(100) - ExactLength(142)).sign() == -1);
  CHECK((r2 - r2).sign() == 0);
  CHECK(r2 < r3);
  CHECK(r5 > r2);
  CHECK(r2 + r3 >= r2 + r3);
}

TEST_CASE("square roots within the radical ring") {
  ExactLength r2 = ExactLength::sqrt_rational(Rat(2));
  ExactLength r3 = ExactLength::sqrt_rational(Rat(3));

  auto s = ExactLength(Rat(9, 4)).sqrt();
  REQUIRE(s);
  CHECK(*s == ExactLength(Rat(3, 2)));

  auto q = (ExactLength(5) + ExactLength(2) * ExactLength::sqrt_rational(Rat(6))).sqrt();
  REQUIRE(q);
  CHECK(*q == r2 + r3);

  auto p = ExactLength(3).sqrt();
  REQUIRE(p);
  CHECK(*p == r3);

  CHECK(!r2.sqrt());                            // sqrt(sqrt(2)) leaves the ring
  CHECK(!(ExactLength(-4)).sqrt());             // negative
  auto z = ExactLength(0).sqrt();
  REQUIRE(z);
  CHECK(z->is_zero());
}

TEST_CASE("randomized ring axioms") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5), rad(1, 10);
  auto sample = [&] {
    ExactLength v(Rat(num(rng), den(rng)));
    v += ExactLength::radical(Rat(num(rng), den(rng)), Int(rad(rng)));
    v += ExactLength::radical(Rat(num(rng), den(rng)), Int(rad(rng)));
    return v;
  };
  for (int i = 0; i < 200; ++i) {
    ExactLength a = sample(), b = sample(), c = sample();
    CHECK(a + b == b + a);
    CHECK((a + b) * c == a * c + b * c);
    CHECK(a - a == ExactLength(0));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    // squares are nonnegative, and sqrt of a square recovers the magnitude
    ExactLength sq = a * a;
    CHECK(sq.sign() >= 0);
    auto root = sq.sqrt();
    if (root) CHECK(*root * *root == sq);
    // trichotomy: exactly one of <, ==, > against b
    int cnt = (a < b ? 1 : 0) + (a == b ? 1 : 0) + (a > b ? 1 : 0);
    CHECK(cnt == 1);
  }
}

TEST_CASE("formatting and approximation") {
  ExactLength v = ExactLength(Rat(1, 2)) + ExactLength::radical(Rat(3), Int(2));
  CHECK(v.str() == "1/2 + 3*sqrt(2)");
  CHECK(ExactLength(0).str() == "0");
  CHECK(ExactLength(-2).str() == "-2");
  CHECK(v.approx() == doctest::Approx(0.5 + 3 * 1.41421356237).epsilon(1e-9));
}
