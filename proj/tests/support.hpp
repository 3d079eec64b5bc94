#pragma once

#include <random>
#include <vector>

#include "cfd/formula.hpp"
#include "cfd/polynomial.hpp"
#include "cfd/rational.hpp"

namespace cfd::testing {

inline Rational random_rational(std::mt19937_64& rng, long span = 9, long max_den = 7) {
  std::uniform_int_distribution<long> num(-span, span);
  std::uniform_int_distribution<long> den(1, max_den);
  Rational r(mpz_class(num(rng)), mpz_class(den(rng)));
  r.canonicalize();
  return r;
}

inline Rational random_nonzero_rational(std::mt19937_64& rng) {
  Rational r;
  do r = random_rational(rng);
  while (sgn(r) == 0);
  return r;
}

inline RationalPolynomial random_polynomial(std::mt19937_64& rng, int degree) {
  std::vector<Rational> c;
  for (int k = 0; k < degree; ++k) c.push_back(random_rational(rng));
  c.push_back(random_nonzero_rational(rng));
  return RationalPolynomial(std::move(c));
}

inline RationalFormula random_formula(std::mt19937_64& rng, int radius) {
  std::vector<Rational> c;
  for (int k = 0; k < radius; ++k) c.push_back(random_rational(rng));
  c.push_back(random_nonzero_rational(rng));
  return RationalFormula(std::move(c));
}

template <class T>
using Dense = std::vector<std::vector<T>>;

template <class T>
Dense<T> dense_identity(int n) {
  Dense<T> m(n, std::vector<T>(n, from_int<T>(0)));
  for (int i = 0; i < n; ++i) m[i][i] = from_int<T>(1);
  return m;
}

// Tridiagonal (2, -1) matrix of size n.
template <class T>
Dense<T> dense_A(int n) {
  Dense<T> m(n, std::vector<T>(n, from_int<T>(0)));
  for (int i = 0; i < n; ++i) {
    m[i][i] = from_int<T>(2);
    if (i > 0) m[i][i - 1] = from_int<T>(-1);
    if (i + 1 < n) m[i][i + 1] = from_int<T>(-1);
  }
  return m;
}

template <class T>
Dense<T> dense_product(const Dense<T>& a, const Dense<T>& b) {
  const std::size_t n = a.size();
  Dense<T> c(n, std::vector<T>(n, from_int<T>(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (is_zero(a[i][k])) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

// Horner evaluation of p at the dense tridiagonal matrix.
template <class T>
Dense<T> dense_poly_of_A(const Polynomial<T>& p, int n) {
  const auto A = dense_A<T>(n);
  Dense<T> acc(n, std::vector<T>(n, from_int<T>(0)));
  const auto c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = dense_product(acc, A);
    for (int i = 0; i < n; ++i) acc[i][i] += c[k];
  }
  return acc;
}

}  // namespace cfd::testing
