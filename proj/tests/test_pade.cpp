#include <doctest.h>

#include <random>

#include "cfd/consistency.hpp"
#include "cfd/pade.hpp"
#include "cfd/sturm.hpp"
#include "support.hpp"

using namespace cfd;
using P = RationalPolynomial;

TEST_CASE("series C") {
  CHECK(series_C(0)[0] == 1);
  const auto c = series_C(2);
  CHECK(c[0] == 1);
  CHECK(c[1] == Rational(1, 12));
  CHECK(c[2] == Rational(1, 90));
  const auto long_c = series_C(21);
  for (int n = 0; n <= 20; ++n) {
    const Rational ratio = long_c[n + 1] / long_c[n];
    const Rational expected = Rational((n + 1) * (n + 1)) / (4 * (Rational(n) + Rational(3, 2)) * (n + 2));
    CHECK(ratio == expected);
  }
}

TEST_CASE("C is the arcsin-squared series in disguise") {
  // X^2 C(4X^2) = arcsin(X)^2
  const auto c = series_C(6);
  const auto as = arcsin_squared_series(14);
  for (int k = 0; k <= 6; ++k) {
    mpz_class four_k;
    mpz_ui_pow_ui(four_k.get_mpz_t(), 4, k);
    CHECK(c[k] * Rational(four_k) == as[2 * k + 2]);
  }
}

TEST_CASE("small Pade pairs") {
  const auto p00 = pade(0, 0);
  CHECK(p00.R == P::constant(1));
  CHECK(p00.Q == P::constant(1));
  const auto p01 = pade(0, 1);
  CHECK(p01.R == P::constant(1));
  CHECK(p01.Q == P({Rational(1), Rational(-1, 12)}));
  const auto p10 = pade(1, 0);
  CHECK(p10.R == P({Rational(1), Rational(1, 12)}));
  CHECK(p10.Q == P::constant(1));
  CHECK_THROWS_AS(pade(-1, 0), std::invalid_argument);
}

TEST_CASE("Pade valuation is exactly l+m+1") {
  for (int l = 0; l <= 5; ++l) {
    for (int m = 0; m + l <= 7; ++m) {
      const auto pq = pade(l, m);
      CHECK(pq.R[0] == 1);
      const int K = l + m + 2;
      const auto diff = TruncatedSeries::from_polynomial(pq.R, K) - series_C(K) * TruncatedSeries::from_polynomial(pq.Q, K);
      CHECK(diff.valuation() == l + m + 1);
    }
  }
}

TEST_CASE("optimal formulas, small cases") {
  const auto o00 = optimal_formulas(0, 0);
  CHECK(o00.d == base_stencil<Rational>());
  CHECK(o00.s == RationalFormula::identity());
  const auto o01 = optimal_formulas(0, 1);
  CHECK(o01.d == base_stencil<Rational>());
  CHECK(o01.s == RationalFormula({Rational(5, 6), Rational(1, 12)}));
  const auto o10 = optimal_formulas(1, 0);
  CHECK(o10.d == RationalFormula({Rational(5, 2), Rational(-4, 3), Rational(1, 12)}));
  CHECK(o10.s == RationalFormula::identity());
  CHECK(order_of_consistency(optimal_formulas(2, 2).d, optimal_formulas(2, 2).s) == OrderResult::finite(10));
}

TEST_CASE("the two construction routes agree") {
  for (int l = 0; l <= 4; ++l) {
    for (int m = 0; l + m <= 5; ++m) {
      const auto pade_route = optimal_formulas(l, m);
      const auto direct = optimal_formulas_direct(l, m);
      CHECK(pade_route.d == direct.d);
      CHECK(pade_route.s == direct.s);
    }
  }
  CHECK(order_of_consistency(optimal_formulas_direct(3, 2).d, optimal_formulas_direct(3, 2).s) ==
        OrderResult::finite(12));
}

TEST_CASE("order ladder and invariants") {
  for (int l = 0; l <= 3; ++l) {
    for (int m = 0; l + m <= 4; ++m) {
      const auto o = optimal_formulas(l, m);
      const auto ord = order_of_consistency(o.d, o.s);
      CHECK(ord == OrderResult::finite(o.order()));
      CHECK(o.d.radius() == l + 1);
      CHECK(o.s.radius() == m);
      CHECK(moment(o.d, 2) == -2);
      CHECK(moment(o.d, 0) == 0);
      const auto up_l = optimal_formulas(l + 1, m);
      const auto up_m = optimal_formulas(l, m + 1);
      CHECK(order_of_consistency(up_l.d, up_l.s).order == ord.order + 2);
      CHECK(order_of_consistency(up_m.d, up_m.s).order == ord.order + 2);
    }
  }
}

TEST_CASE("perturbing one coefficient drops the order") {
  std::mt19937_64 rng(3);
  for (int l = 0; l <= 2; ++l) {
    for (int m = 0; l + m <= 3; ++m) {
      const auto o = optimal_formulas(l, m);
      const int n = o.order();
      for (std::size_t j = 0; j < o.d.coeffs().size(); ++j) {
        std::vector<Rational> c(o.d.coeffs().begin(), o.d.coeffs().end());
        c[j] += testing::random_nonzero_rational(rng);
        CHECK(order_of_consistency(RationalFormula(c), o.s).rank() < n);
      }
      for (std::size_t j = 0; j < o.s.coeffs().size(); ++j) {
        std::vector<Rational> c(o.s.coeffs().begin(), o.s.coeffs().end());
        c[j] += testing::random_nonzero_rational(rng);
        CHECK(order_of_consistency(o.d, RationalFormula(c)).rank() < n);
      }
    }
  }
}

TEST_CASE("positivity ladder") {
  for (int k = 0; k <= 8; ++k) {
    const auto r = pade(k, 0).R;
    for (const auto& c : r.coeffs()) CHECK(sgn(c) > 0);
  }
  for (int l = 0; l <= 5; ++l) {
    for (int k = -1; k <= 2; ++k) {
      if (l + k < 0) continue;
      CHECK(roots_outside_interval(pade(l + k, l).Q, Rational(0), Rational(4)));
    }
  }
}

TEST_CASE("roots of R stay outside [0, 4]") {
  CHECK_FALSE(roots_outside_interval(P({Rational(-3), Rational(1)}), Rational(0), Rational(4)));
  CHECK(roots_outside_interval(pade(0, 1).R, Rational(0), Rational(4)));
  for (int l = 0; l <= 4; ++l)
    for (int m = 0; l + m <= 4; ++m) CHECK(roots_outside_interval(pade(l, m).R, Rational(0), Rational(4)));
}
