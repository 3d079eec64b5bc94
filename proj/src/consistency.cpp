#include "cfd/consistency.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "cfd/exact_linalg.hpp"

namespace cfd {

namespace {

Rational int_power(long base, int e) {
  mpz_class r;
  mpz_class b(base);
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(e));
  return Rational(r);
}

Rational factorial(int n) {
  mpz_class r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(r);
}

// sum_j d_j j^k + k(k-1) sum_j s_j j^{k-2} for even k.
Rational monomial_defect(const RationalFormula& d, const RationalFormula& s, int k) {
  Rational r = moment(d, k);
  if (k >= 2) r += Rational(k * (k - 1)) * moment(s, k - 2);
  return r;
}

}  // namespace

Tolerance::Tolerance(double v) : value(v) {
  if (!(v >= 0.0) || !std::isfinite(v)) throw std::invalid_argument("Tolerance must be finite and non-negative");
}

OrderResult order_of_consistency(const RationalFormula& d, const RationalFormula& s, int n_max) {
  for (int k = 0; k <= n_max; k += 2) {
    if (sgn(monomial_defect(d, s, k)) != 0) {
      return k == 0 ? OrderResult::none() : OrderResult::finite(k - 2);
    }
  }
  return OrderResult::at_least(n_max);
}

OrderResult order_of_consistency(const SymmetricFormula<double>& d, const SymmetricFormula<double>& s, Tolerance tol,
                                 int n_max) {
  auto abs_moment = [](const SymmetricFormula<double>& b, int k) {
    double acc = 0.0;
    const auto c = b.coeffs();
    for (std::size_t j = 0; j < c.size(); ++j) {
      const double w = (j == 0 ? 1.0 : 2.0) * std::abs(c[j]);
      acc += w * (j == 0 && k == 0 ? 1.0 : std::pow(static_cast<double>(j), k));
    }
    return acc;
  };
  for (int k = 0; k <= n_max; k += 2) {
    double defect = moment(d, k);
    double scale = abs_moment(d, k);
    if (k >= 2) {
      defect += k * (k - 1) * moment(s, k - 2);
      scale += k * (k - 1) * abs_moment(s, k - 2);
    }
    if (std::abs(defect) > tol.value * scale) {
      return k == 0 ? OrderResult::none() : OrderResult::finite(k - 2);
    }
  }
  return OrderResult::at_least(n_max);
}

bool fourier_consistency_check(const RationalFormula& d, const RationalFormula& s, int n) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("fourier_consistency_check: n must be even and >= 0");
  const int K = n + 1;
  std::vector<Rational> fd(static_cast<std::size_t>(K + 1)), x2fs(static_cast<std::size_t>(K + 1));
  for (int k = 0; 2 * k <= K; ++k) {
    const Rational sign = (k % 2 == 0) ? 1 : -1;
    fd[static_cast<std::size_t>(2 * k)] = sign * moment(d, 2 * k) / factorial(2 * k);
    if (2 * k + 2 <= K) x2fs[static_cast<std::size_t>(2 * k + 2)] = sign * moment(s, 2 * k) / factorial(2 * k);
  }
  const TruncatedSeries diff = TruncatedSeries(fd, K) - TruncatedSeries(x2fs, K);
  return !diff.valuation().has_value();
}

TruncatedSeries arcsin_squared_series(int max_degree) {
  std::vector<Rational> c(static_cast<std::size_t>(max_degree + 1));
  for (int m = 1; 2 * m <= max_degree; ++m) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * m), static_cast<unsigned long>(m));
    c[static_cast<std::size_t>(2 * m)] = int_power(2, 2 * m - 1) / (Rational(m * m) * Rational(binom));
  }
  return {std::move(c), max_degree};
}

bool arcsin_consistency_check(const RationalPolynomial& p, const RationalPolynomial& q, int n) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("arcsin_consistency_check: n must be even and >= 0");
  const int K = n + 1;
  const auto lhs = TruncatedSeries::from_polynomial(p.compose_monomial(Rational(4), 2), K);
  const auto q4 = TruncatedSeries::from_polynomial(q.compose_monomial(Rational(4), 2), K);
  const auto four = TruncatedSeries::from_polynomial(RationalPolynomial::constant(Rational(4)), K);
  const auto rhs = four * arcsin_squared_series(K) * q4;
  return !(lhs - rhs).valuation().has_value();
}

RationalFormula solve_symmetric_vandermonde(const std::vector<Rational>& one_sided_weights, int n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("Vandermonde order must be even and positive");
  const std::size_t size = static_cast<std::size_t>(n / 2);
  // Unknowns (c_0/2, c_1, ..., c_{n/2-1}); row k is the test against X^{2k}.
  RationalMatrix m(size, size);
  std::vector<Rational> rhs(size);
  for (std::size_t k = 1; k <= size; ++k) {
    for (std::size_t i = 0; i < size; ++i) {
      m(k - 1, i) = (i == 0 && k == 1) ? Rational(1) : int_power(static_cast<long>(i), static_cast<int>(2 * k - 2));
    }
    Rational acc = 0;
    for (std::size_t j = 1; j <= one_sided_weights.size(); ++j) {
      acc += one_sided_weights[j - 1] * int_power(static_cast<long>(j), static_cast<int>(2 * k));
    }
    rhs[k - 1] = -acc / Rational(static_cast<long>(2 * k * (2 * k - 1)));
  }
  auto x = solve_exact(m, rhs);
  if (!x) throw std::logic_error("symmetric Vandermonde system is singular");
  (*x)[0] *= 2;
  return RationalFormula(std::move(*x));
}

RationalFormula solve_interior_rhs(const RationalFormula& d, int n) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("solve_interior_rhs: n must be even and positive");
  if (sgn(moment(d, 0)) != 0) throw std::invalid_argument("solve_interior_rhs: d must have zero mean");
  std::vector<Rational> w;
  for (int j = 1; j <= d.radius_or_minus_one(); ++j) w.push_back(d[j]);
  return solve_symmetric_vandermonde(w, n);
}

std::vector<RationalFormula> solve_boundary_corrections(const RationalFormula& d, int mu) {
  if (mu < 0 || mu % 2 != 0) {
    throw std::invalid_argument("solve_boundary_corrections: mu must be even, got " + std::to_string(mu));
  }
  if (sgn(moment(d, 0)) != 0) throw std::invalid_argument("solve_boundary_corrections: d must have zero mean");
  const int tau = d.radius_or_minus_one();
  std::vector<RationalFormula> out;
  for (int i = 1; i <= tau; ++i) {
    if (mu == 0) {
      out.emplace_back();
      continue;
    }
    // Odd extension at the wall leaves -sum_{j>0} d_{i+j} (u(-jh) + u(jh)) in
    // row i; the correction must reproduce it through h^2 b * u''.
    std::vector<Rational> w;
    for (int j = 1; i + j <= tau; ++j) w.push_back(-d[i + j]);
    out.push_back(solve_symmetric_vandermonde(w, mu));
  }
  return out;
}

}  // namespace cfd
