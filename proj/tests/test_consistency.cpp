#include <doctest.h>

#include <cmath>
#include <random>

#include "cfd/consistency.hpp"
#include "cfd/pade.hpp"
#include "support.hpp"

using namespace cfd;

namespace {

const RationalFormula kA = base_stencil<Rational>();
const RationalFormula kNumerovS({Rational(5, 6), Rational(1, 12)});

// Direct monomial oracle: every p = X^k with k <= n+1.
bool consistent_oracle(const RationalFormula& d, const RationalFormula& s, int n) {
  const long t = std::max(d.radius_or_minus_one(), s.radius_or_minus_one());
  for (int k = 0; k <= n + 1; ++k) {
    Rational acc = 0;
    for (long j = -t; j <= t; ++j) {
      mpz_class jk, jk2;
      mpz_pow_ui(jk.get_mpz_t(), mpz_class(j).get_mpz_t(), k);
      acc += d[j] * Rational(jk);
      if (k >= 2) {
        mpz_pow_ui(jk2.get_mpz_t(), mpz_class(j).get_mpz_t(), k - 2);
        acc += s[j] * Rational(k * (k - 1)) * Rational(jk2);
      }
    }
    if (sgn(acc) != 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("order of consistency examples") {
  CHECK(order_of_consistency(kA, RationalFormula::identity()) == OrderResult::finite(2));
  CHECK(order_of_consistency(kA, kNumerovS) == OrderResult::finite(4));
  const auto zero = order_of_consistency(RationalFormula{}, RationalFormula{});
  CHECK(zero.is_unbounded());
  CHECK(zero.order == kDefaultMaxOrder);
  CHECK(order_of_consistency(RationalFormula{}, RationalFormula{}, 10) == OrderResult::at_least(10));
  CHECK(order_of_consistency(RationalFormula::identity(), RationalFormula{}) == OrderResult::none());
  // Zero mean but wrong scaling of s: the k = 2 test fails.
  CHECK(order_of_consistency(kA, 2 * RationalFormula::identity()) == OrderResult::finite(0));
}

TEST_CASE("order agrees with the monomial oracle") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const auto p = testing::random_polynomial(rng, 1 + trial % 5) ;
    const auto d = eval_poly_at_a(RationalPolynomial::x() * p);
    const int n = 2 * (1 + trial % 4);
    auto s = solve_interior_rhs(d, n);
    if (trial % 3 == 0) s = s + RationalFormula({testing::random_nonzero_rational(rng)});
    const auto ord = order_of_consistency(d, s);
    REQUIRE(ord.kind == OrderResult::Kind::finite);
    CHECK(consistent_oracle(d, s, ord.order));
    CHECK_FALSE(consistent_oracle(d, s, ord.order + 2));
  }
}

TEST_CASE("float order needs an explicit, valid tolerance") {
  const auto d = formula_cast<double>(kA);
  const auto s = formula_cast<double>(kNumerovS);
  CHECK(order_of_consistency(d, s, Tolerance(1e-12)) == OrderResult::finite(4));
  const auto opt = optimal_formulas(2, 2);
  CHECK(order_of_consistency(formula_cast<double>(opt.d), formula_cast<double>(opt.s), Tolerance(1e-12)) ==
        OrderResult::finite(10));
  CHECK_THROWS_AS(Tolerance(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Tolerance(std::nan("")), std::invalid_argument);
}

TEST_CASE("Fourier criterion") {
  CHECK(fourier_consistency_check(kA, RationalFormula::identity(), 2));
  CHECK_FALSE(fourier_consistency_check(kA, RationalFormula::identity(), 4));
  CHECK(fourier_consistency_check(kA, kNumerovS, 4));
  CHECK_FALSE(fourier_consistency_check(kA, kNumerovS, 6));
  for (int n : {0, 2, 8}) CHECK(fourier_consistency_check(RationalFormula{}, RationalFormula{}, n));
}

TEST_CASE("arcsin-squared series and criterion") {
  const auto as = arcsin_squared_series(8);
  CHECK(as[0] == 0);
  CHECK(as[1] == 0);
  CHECK(as[2] == 1);
  CHECK(as[3] == 0);
  CHECK(as[4] == Rational(1, 3));
  CHECK(as[6] == Rational(8, 45));

  using P = RationalPolynomial;
  CHECK(arcsin_consistency_check(P::x(), P::constant(1), 2));
  CHECK_FALSE(arcsin_consistency_check(P::x(), P::constant(1), 4));
  CHECK(arcsin_consistency_check(P::x(), P({Rational(1), Rational(-1, 12)}), 4));
  CHECK_FALSE(arcsin_consistency_check(P::constant(1), P{}, 0));
}

TEST_CASE("the three consistency criteria agree") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    auto p = testing::random_polynomial(rng, trial % 6);
    auto q = testing::random_polynomial(rng, trial % 4);
    if (trial % 2 == 0) {
      // Steer toward consistent pairs so high orders get exercised.
      p = RationalPolynomial::x() * testing::random_polynomial(rng, trial % 5);
      q = formula_to_poly(solve_interior_rhs(eval_poly_at_a(p), 2 * (1 + trial % 5)));
    }
    const auto d = eval_poly_at_a(p);
    const auto s = eval_poly_at_a(q);
    const auto ord = order_of_consistency(d, s);
    for (int n = 0; n <= 12; n += 2) {
      const bool by_order = ord.reaches(n);
      CHECK(fourier_consistency_check(d, s, n) == by_order);
      CHECK(arcsin_consistency_check(p, q, n) == by_order);
    }
  }
}

TEST_CASE("interior right-hand side") {
  CHECK(solve_interior_rhs(kA, 2) == RationalFormula::identity());
  CHECK(solve_interior_rhs(kA, 4) == kNumerovS);

  const auto a2 = a_power_exact(2);
  const auto s = solve_interior_rhs(a2, 2);
  CHECK(s.is_zero());
  CHECK(order_of_consistency(a2, s).reaches(2));

  CHECK_THROWS_AS(solve_interior_rhs(RationalFormula::identity(), 2), std::invalid_argument);
  CHECK_THROWS_AS(solve_interior_rhs(kA, 3), std::invalid_argument);
  CHECK_THROWS_AS(solve_interior_rhs(kA, 0), std::invalid_argument);
}

TEST_CASE("interior right-hand side is unique") {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 10; n += 2) {
    const auto d = eval_poly_at_a(RationalPolynomial::x() * testing::random_polynomial(rng, 3));
    const auto s = solve_interior_rhs(d, n);
    CHECK(order_of_consistency(d, s).reaches(n));
    CHECK(s.radius_or_minus_one() <= n / 2 - 1);
    for (int j = 0; j <= n / 2 - 1; ++j) {
      std::vector<Rational> c(s.coeffs().begin(), s.coeffs().end());
      c.resize(static_cast<std::size_t>(n / 2), Rational(0));
      c[static_cast<std::size_t>(j)] += testing::random_nonzero_rational(rng);
      CHECK_FALSE(order_of_consistency(d, RationalFormula(c)).reaches(n));
    }
  }
}

TEST_CASE("boundary corrections") {
  const auto b = solve_boundary_corrections(kA, 2);
  REQUIRE(b.size() == 1);
  CHECK(b[0].is_zero());

  const auto d11 = optimal_formulas(1, 1).d;
  const auto b11 = solve_boundary_corrections(d11, 4);
  REQUIRE(b11.size() == 2);
  CHECK_FALSE(b11[0].is_zero());
  CHECK(b11[1].is_zero());
  CHECK(b11[0].radius_or_minus_one() <= 1);

  // d_j = 0 for j >= 2: nothing reaches past the wall.
  for (int mu : {2, 4, 8}) {
    for (const auto& bi : solve_boundary_corrections(kA, mu)) CHECK(bi.is_zero());
  }

  // Hand-checked: d = a*a, mu = 2 gives b^1 = +1 (d_2 = 1 folds back with the
  // opposite sign, so the source side must add it).
  const auto bsq = solve_boundary_corrections(a_power_exact(2), 2);
  REQUIRE(bsq.size() == 2);
  CHECK(bsq[0] == RationalFormula::identity());
  CHECK(bsq[1].is_zero());

  CHECK_THROWS_AS(solve_boundary_corrections(kA, 3), std::invalid_argument);
  CHECK_THROWS_AS(solve_boundary_corrections(kA, -2), std::invalid_argument);
}

TEST_CASE("last boundary correction always vanishes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int deg = 1 + trial % 6;
    const auto d = eval_poly_at_a(RationalPolynomial::x() * testing::random_polynomial(rng, deg - 1));
    REQUIRE(d.radius() == deg);
    for (int mu : {2, 4, 6}) {
      const auto b = solve_boundary_corrections(d, mu);
      REQUIRE(static_cast<int>(b.size()) == deg);
      CHECK(b.back().is_zero());
      for (const auto& bi : b) CHECK(bi.radius_or_minus_one() <= mu / 2 - 1);
    }
  }
}
