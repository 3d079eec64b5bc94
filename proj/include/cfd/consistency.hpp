#pragma once

#include <vector>

#include "cfd/formula.hpp"
#include "cfd/polynomial.hpp"

namespace cfd {

inline constexpr int kDefaultMaxOrder = 64;

/// Exact order of consistency of a pair (d, s).
struct OrderResult {
  enum class Kind {
    finite,        // order is the exact (even) order
    at_least,      // every test up to the search cap passed; order is the cap
    inconsistent,  // d does not even have zero mean
  };

  Kind kind = Kind::inconsistent;
  int order = -1;

  static OrderResult finite(int n) { return {Kind::finite, n}; }
  static OrderResult at_least(int n) { return {Kind::at_least, n}; }
  static OrderResult none() { return {Kind::inconsistent, -1}; }

  bool is_unbounded() const { return kind == Kind::at_least; }
  /// true iff the pair is consistent of order n.
  bool reaches(int n) const { return kind != Kind::inconsistent && order >= n; }
  /// Total order for comparisons; inconsistent ranks below every order.
  int rank() const { return kind == Kind::inconsistent ? -2 : order; }

  friend bool operator==(const OrderResult&, const OrderResult&) = default;
};

/// Relative zero threshold for floating-point order detection. A monomial
/// test sum_j d_j j^k + k(k-1) s_j j^{k-2} counts as zero when it is at most
/// value * sum_j (|d_j| j^k + k(k-1) |s_j| j^{k-2}).
struct Tolerance {
  explicit Tolerance(double v);
  double value;
};

/// Largest even n with sum_j d_j p(j) + s_j p''(j) = 0 for every monomial of
/// degree <= n+1. Exact arithmetic; the search stops at n_max.
OrderResult order_of_consistency(const RationalFormula& d, const RationalFormula& s, int n_max = kDefaultMaxOrder);

/// Floating-point variant. The tolerance is mandatory.
OrderResult order_of_consistency(const SymmetricFormula<double>& d, const SymmetricFormula<double>& s, Tolerance tol,
                                 int n_max = kDefaultMaxOrder);

/// F d = X^2 F s mod X^{n+2}, with F b = sum_k sum_j b_j (-1)^k j^{2k} X^{2k} / (2k)!.
bool fourier_consistency_check(const RationalFormula& d, const RationalFormula& s, int n);

/// P(4X^2) = 4 arcsin(X)^2 Q(4X^2) mod X^{n+2}.
bool arcsin_consistency_check(const RationalPolynomial& p, const RationalPolynomial& q, int n);

/// Taylor coefficients of arcsin(X)^2 up to X^max_degree.
TruncatedSeries arcsin_squared_series(int max_degree);

/// The unique s with tau(s) <= n/2 - 1 making (d, s) consistent of order n.
/// Requires moment(d, 0) = 0 and n even and positive.
RationalFormula solve_interior_rhs(const RationalFormula& d, int n);

/// Boundary corrections b^1, ..., b^{tau(d)} for boundary order mu, each with
/// tau(b^i) <= mu/2 - 1. The last one is always zero.
std::vector<RationalFormula> solve_boundary_corrections(const RationalFormula& d, int mu);

/// Solves the symmetric Vandermonde system shared by the interior weights and
/// the boundary corrections: returns the symmetric formula c with
/// tau(c) <= n/2 - 1 such that 2 sum_{j>0} w_j j^{2k} + 2k(2k-1) sum_j c_j j^{2k-2} = 0
/// for k = 1..n/2, where w_j (j > 0) is the given one-sided weight list.
RationalFormula solve_symmetric_vandermonde(const std::vector<Rational>& one_sided_weights, int n);

}  // namespace cfd
