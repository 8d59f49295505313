#include <catch2/catch_amalgamated.hpp>

#include "nilcover/unitri.hpp"
#include "test_support.hpp"

using namespace nilcover;

namespace {

/// Heisenberg element with entries (1,2)=a, (2,3)=b, (1,3)=c.
UniTri heis(const Rational& a, const Rational& b, const Rational& c) {
  return UniTri::from_upper(3, UpperCoords{a, b, c});
}

}  // namespace

TEST_CASE("mul examples") {
  UniTri id = UniTri::identity(3);
  testsupport::Rng rng(1);
  UniTri g = testsupport::random_unitri(rng, 3);
  CHECK(mul(id, g) == g);
  CHECK(mul(g, inv(g)) == id);
  UniTri x = UniTri::elementary(3, 0, 1, Rational(1));
  UniTri y = UniTri::elementary(3, 1, 2, Rational(1));
  UniTri xy = mul(x, y);
  CHECK(xy.entry(0, 1) == Rational(1));
  CHECK(xy.entry(1, 2) == Rational(1));
  CHECK(xy.entry(0, 2) == Rational(1));
  CHECK_THROWS_AS(mul(g, UniTri::identity(4)), DimensionMismatch);
}

TEST_CASE("inv examples") {
  CHECK(inv(UniTri::identity(3)) == UniTri::identity(3));
  UniTri e = UniTri::elementary(3, 0, 1, Rational(1));
  CHECK(inv(e).entry(0, 1) == Rational(-1));
  // Heisenberg inverse: (a,b,c) -> (-a,-b,ab-c).
  testsupport::Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    Rational a = testsupport::random_rational(rng), b = testsupport::random_rational(rng),
             c = testsupport::random_rational(rng);
    UniTri g = heis(a, b, c);
    CHECK(inv(g) == heis(-a, -b, a * b - c));
    CHECK(testsupport::oracle_equals(testsupport::oracle_inv(testsupport::to_oracle(g)), inv(g)));
  }
}

TEST_CASE("comm examples") {
  testsupport::Rng rng(3);
  UniTri g = testsupport::random_unitri(rng, 3);
  CHECK(comm(g, UniTri::identity(3)) == UniTri::identity(3));
  CHECK(comm(g, g) == UniTri::identity(3));
  UniTri x = UniTri::elementary(3, 0, 1, Rational(1));
  UniTri y = UniTri::elementary(3, 1, 2, Rational(1));
  UniTri c = comm(x, y);
  CHECK(c == heis(Rational(0), Rational(0), Rational(1)));
  // Against the independent full-matrix route.
  auto om = testsupport::oracle_mul;
  auto ox = testsupport::to_oracle(x), oy = testsupport::to_oracle(y);
  CHECK(testsupport::oracle_equals(
      om(om(testsupport::oracle_inv(ox), testsupport::oracle_inv(oy)), om(ox, oy)), c));
}

TEST_CASE("log and exp examples") {
  CHECK(log_of(UniTri::identity(3)) == NilVec::zero(3));
  CHECK(log_of(UniTri::elementary(3, 0, 1, Rational(1))) == NilVec::basis(3, 0));
  // All superdiagonal entries 1 and (1,3)=1: log = E12 + E23 + 1/2 E13.
  UniTri g = heis(Rational(1), Rational(1), Rational(1));
  NilVec l = log_of(g);
  CHECK(l.coords[0] == Rational(1));
  CHECK(l.coords[1] == Rational(1));
  CHECK(l.coords[2] == Rational(1, 2));

  CHECK(exp_of(NilVec::zero(3)) == UniTri::identity(3));
  CHECK(exp_of(NilVec::basis(3, 0)) == UniTri::elementary(3, 0, 1, Rational(1)));
  NilVec central = NilVec::zero(3);
  central.coords[2] = Rational(7, 3);
  CHECK(exp_of(central) == heis(Rational(0), Rational(0), Rational(7, 3)));
}

TEST_CASE("canonical key examples") {
  testsupport::Rng rng(4);
  UniTri g = testsupport::random_unitri(rng, 3);
  CHECK(canonical_key(mul(g, inv(g))) == canonical_key(UniTri::identity(3)));
  UniTri h1 = heis(Rational(1, 2), Rational(0), Rational(0));
  UniTri h2 = heis(Rational(2, 4), Rational(0), Rational(0));
  CHECK(canonical_key(h1) == canonical_key(h2));
  CHECK(canonical_key(heis(Rational(1), Rational(2), Rational(3))) !=
        canonical_key(heis(Rational(1), Rational(2), Rational(4))));
}

TEST_CASE("property: exact log/exp round trip") {
  testsupport::Rng rng(0x105u);
  for (int i = 0; i < 1000; ++i) {
    int n = i % 2 == 0 ? 3 : 4;
    UniTri g = testsupport::random_unitri(rng, n);
    CHECK(exp_of(log_of(g)) == g);
    NilVec x{n, testsupport::random_coord_vector(rng, n, 10, 10)};
    CHECK(log_of(exp_of(x)) == x);
  }
}

TEST_CASE("property: associativity and commutator") {
  testsupport::Rng rng(6);
  for (int i = 0; i < 200; ++i) {
    int n = i % 2 == 0 ? 3 : 4;
    UniTri a = testsupport::random_unitri(rng, n, 5, 4);
    UniTri b = testsupport::random_unitri(rng, n, 5, 4);
    UniTri c = testsupport::random_unitri(rng, n, 5, 4);
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK((comm(a, b) == UniTri::identity(n)) == (mul(a, b) == mul(b, a)));
    CHECK(testsupport::oracle_equals(
        testsupport::oracle_mul(testsupport::to_oracle(a), testsupport::to_oracle(b)),
        mul(a, b)));
  }
}

TEST_CASE("property: log of powers") {
  testsupport::Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    int n = i % 2 == 0 ? 3 : 4;
    UniTri g = testsupport::random_unitri(rng, n, 4, 3);
    long long m = rng.range(-6, 6);
    NilVec lg = log_of(g);
    NilVec expect{n, vec_scale(Rational(static_cast<std::int64_t>(m)), lg.coords)};
    CHECK(log_of(u_pow(g, m)) == expect);
  }
}

TEST_CASE("unitri validation") {
  CHECK_THROWS_AS(UniTri::from_upper(3, UpperCoords{Rational(1)}), DimensionMismatch);
  CHECK_THROWS_AS(UniTri::identity(1), DimensionMismatch);
  CHECK_THROWS_AS(UniTri::identity(9), DimensionMismatch);
}
