#include <doctest.h>

#include <cmath>

#include "cfd/sturm.hpp"

using namespace cfd;
using P = RationalPolynomial;

namespace {

P from_roots(std::initializer_list<Rational> roots) {
  P p = P::constant(1);
  for (const auto& r : roots) p = p * P({Rational(-r), Rational(1)});
  return p;
}

}  // namespace

TEST_CASE("root counting on closed intervals") {
  const auto p = from_roots({Rational(0), Rational(1, 2), Rational(4)});
  CHECK(count_real_roots(p, Rational(0), Rational(4)) == 3);
  CHECK(count_real_roots(p, Rational(1, 4), Rational(3)) == 1);
  CHECK(count_real_roots(p, Rational(1, 2), Rational(1, 2)) == 1);
  CHECK(count_real_roots(p, Rational(5), Rational(9)) == 0);
  CHECK(count_real_roots(P::constant(3), Rational(-1), Rational(1)) == 0);
  CHECK_THROWS(count_real_roots(p, Rational(1), Rational(0)));
}

TEST_CASE("multiple roots are counted once and flagged") {
  const auto p = from_roots({Rational(1), Rational(1), Rational(2)});
  CHECK(count_real_roots(p, Rational(0), Rational(3)) == 2);
  const auto rs = isolate_roots(p, Rational(0), Rational(3));
  REQUIRE(rs.size() == 2);
  CHECK(rs.roots[0].multiple);
  CHECK_FALSE(rs.roots[1].multiple);
}

TEST_CASE("isolation of irrational roots") {
  // x^2 - 2 and x^2 + 1
  const P p = P({Rational(-2), Rational(0), Rational(1)}) * P({Rational(1), Rational(0), Rational(1)});
  const auto rs = isolate_roots(p, Rational(-4), Rational(4));
  REQUIRE(rs.size() == 2);
  CHECK(rs.roots[0].value == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(rs.roots[1].value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (const auto& r : rs.roots) CHECK(Rational(r.hi - r.lo) <= Rational(1, 1L << 40));
  CHECK_FALSE(rs.contains_zero());
}

TEST_CASE("roots at endpoints and at zero") {
  const auto p = from_roots({Rational(0), Rational(4)});
  const auto rs = isolate_roots(p, Rational(0), Rational(4));
  REQUIRE(rs.size() == 2);
  CHECK(rs.contains_zero());
  CHECK(rs.roots[1].lo == 4);
  CHECK(rs.roots[1].hi == 4);
  CHECK(roots_outside_interval(from_roots({Rational(-1), Rational(5)}), Rational(0), Rational(4)));
}

TEST_CASE("closely spaced roots separate") {
  const auto p = from_roots({Rational(1), Rational(1) + Rational(1, 1000000)});
  const auto rs = isolate_roots(p, Rational(0), Rational(2));
  REQUIRE(rs.size() == 2);
  CHECK(rs.roots[0].hi <= rs.roots[1].lo);
}
