#pragma once

#include <vector>

#include "cfd/polynomial.hpp"

namespace cfd {

/// Canonical Sturm chain p, p', -rem(p, p'), ... of the square-free part.
std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p);

/// Sign variations of the chain at x (zeros skipped).
int sign_variations(const std::vector<RationalPolynomial>& chain, const Rational& x);

/// Number of distinct real roots in the closed interval [lo, hi].
int count_real_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi);

/// true iff p has no real root in [lo, hi]. Exact.
bool roots_outside_interval(const RationalPolynomial& p, const Rational& lo, const Rational& hi);

struct IsolatedRoot {
  Rational lo;           // root lies in [lo, hi]; lo == hi for roots hit exactly
  Rational hi;
  double value;          // midpoint of the refined interval
  bool multiple = false; // root of gcd(p, p')
};

/// Roots of p in [lo, hi], isolated by exact Sturm bisection.
struct RootSet {
  std::vector<IsolatedRoot> roots;

  bool empty() const { return roots.empty(); }
  std::size_t size() const { return roots.size(); }
  std::vector<double> values() const;
  bool contains_zero() const;
};

/// Isolates every distinct root of p in [lo, hi] to a rational interval of
/// width <= 2^-width_bits. Requires p != 0.
RootSet isolate_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi, int width_bits = 48);

}  // namespace cfd
