#pragma once

#include "cfd/formula.hpp"
#include "cfd/polynomial.hpp"

namespace cfd {

/// C(X) = 4 (arcsin(sqrt(X)/2) / sqrt(X))^2 = sum_n 2 X^n / ((n+1)^2 binom(2n+2, n+1)),
/// truncated after X^K.
TruncatedSeries series_C(int K);

/// [l/m] Pade pair of C normalised by R(0) = 1.
struct PadePair {
  RationalPolynomial R;  // numerator, deg l
  RationalPolynomial Q;  // denominator, deg m
  int l = 0;
  int m = 0;
};

/// Solves R = C Q mod X^{l+m+1} exactly. Throws std::logic_error if the
/// solution space is not one-dimensional or the degrees degenerate, which a
/// normal Pade table rules out.
PadePair pade(int l, int m);

/// The most efficient pair (d^{l,m}, s^{l,m}) with tau(d) = l+1, tau(s) = m,
/// order 2(l+m+1) and sum_j d_j j^2 = -2.
struct OptimalScheme {
  RationalFormula d;
  RationalFormula s;
  int l = 0;
  int m = 0;
  int order() const { return 2 * (l + m + 1); }
};

/// Through the Pade pair: d = (X R)(a), s = Q(a).
OptimalScheme optimal_formulas(int l, int m);

/// Through the (l+m+3) x (l+m+3) moment system for (d_0..d_{l+1}, s_0..s_m).
OptimalScheme optimal_formulas_direct(int l, int m);

}  // namespace cfd
