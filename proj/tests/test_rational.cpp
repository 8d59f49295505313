#include <catch2/catch_amalgamated.hpp>

#include "nilcover/rational.hpp"
#include "test_support.hpp"

using nilcover::BigRat;
using nilcover::Integer;
using nilcover::Rational;

TEST_CASE("rational normal form") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(2, -4) == Rational(-1, 2));
  CHECK(Rational(0, 7) == Rational(0));
  CHECK(Rational(0).denominator() == 1);
  CHECK(Rational(6, 3).is_integer());
  CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational arithmetic basics") {
  Rational a(1, 2), b(1, 3);
  CHECK(a + b == Rational(5, 6));
  CHECK(a - b == Rational(1, 6));
  CHECK(a * b == Rational(1, 6));
  CHECK(a / b == Rational(3, 2));
  CHECK(-a == Rational(-1, 2));
  CHECK(a < Rational(2, 3));
  CHECK_THROWS(a / Rational(0));
}

TEST_CASE("rational string round trip") {
  CHECK(Rational(5, 3).str() == "5/3");
  CHECK(Rational(-7).str() == "-7");
  CHECK(Rational::from_string("5/3") == Rational(5, 3));
  CHECK(Rational::from_string("-7") == Rational(-7));
  CHECK(Rational::from_string("4/6") == Rational(2, 3));
  CHECK_THROWS_AS(Rational::from_string(""), nilcover::ParseError);
  CHECK_THROWS_AS(Rational::from_string("1/-2"), nilcover::ParseError);
  CHECK_THROWS_AS(Rational::from_string("a"), nilcover::ParseError);
  CHECK_THROWS_AS(Rational::from_string("1/0"), nilcover::ParseError);
  CHECK_THROWS_AS(Rational::from_string("1/"), nilcover::ParseError);
}

TEST_CASE("promotion to big values and demotion back") {
  Rational big = Rational(std::int64_t{1} << 62) * Rational(std::int64_t{1} << 62);
  CHECK(big.is_big());
  CHECK(big.numerator() == nilcover::ipow(Integer(2), 124));
  Rational back = big - big + Rational(3);
  CHECK_FALSE(back.is_big());
  CHECK(back == Rational(3));
  // Keys depend on the value, not the representation history.
  Rational three_direct(3);
  std::string k1, k2;
  back.append_key_bytes(k1);
  three_direct.append_key_bytes(k2);
  CHECK(k1 == k2);
  // Ratio of two huge values demotes to a small exact value.
  Rational ratio = big / (big * Rational(5));
  CHECK_FALSE(ratio.is_big());
  CHECK(ratio == Rational(1, 5));
}

TEST_CASE("key bytes distinguish values") {
  auto key = [](const Rational& r) {
    std::string s;
    r.append_key_bytes(s);
    return s;
  };
  CHECK(key(Rational(1, 2)) == key(Rational(2, 4)));
  CHECK(key(Rational(1, 2)) != key(Rational(-1, 2)));
  CHECK(key(Rational(1, 2)) != key(Rational(1, 3)));
  CHECK(key(Rational(0)) == std::string(1, '\0'));
}

TEST_CASE("property: agreement with boost rational oracle") {
  testsupport::Rng rng(0x5eedu);
  for (int iter = 0; iter < 4000; ++iter) {
    Rational a = testsupport::random_rational(rng, 1000, 50);
    Rational b = testsupport::random_rational(rng, 1000, 50);
    // Mix in occasional huge operands to cross the promotion boundary.
    if (iter % 7 == 0) a = a * Rational(std::int64_t{1} << 62) + Rational(1, 3);
    BigRat oa = a.to_big(), ob = b.to_big();
    CHECK((a + b).to_big() == oa + ob);
    CHECK((a - b).to_big() == oa - ob);
    CHECK((a * b).to_big() == oa * ob);
    if (!b.is_zero()) CHECK((a / b).to_big() == oa / ob);
    CHECK((a < b) == (oa < ob));
    CHECK((a == b) == (oa == ob));
    // Representation invariants: lowest terms, positive denominator.
    Rational s = a + b;
    CHECK(boost::multiprecision::gcd(boost::multiprecision::abs(s.numerator()),
                                     s.denominator()) == 1);
    CHECK(s.denominator() > 0);
    if (!s.is_big()) {
      CHECK(s.numerator() <= std::numeric_limits<std::int64_t>::max());
    }
  }
}

TEST_CASE("pow helpers") {
  CHECK(nilcover::ipow(Integer(10), 0) == 1);
  CHECK(nilcover::ipow(Integer(10), 9) == Integer("1000000000"));
  CHECK(nilcover::rpow(Rational(2, 3), 3) == Rational(8, 27));
}
