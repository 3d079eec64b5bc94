#include "cfd/pade.hpp"

#include <stdexcept>
#include <string>

#include "cfd/exact_linalg.hpp"

namespace cfd {

namespace {

// (0^k / 2, 1^k, ..., n^k)
std::vector<Rational> moment_row(int n, int k) {
  std::vector<Rational> row(static_cast<std::size_t>(n + 1));
  row[0] = (k == 0) ? Rational(1, 2) : Rational(0);
  for (int j = 1; j <= n; ++j) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(k));
    row[static_cast<std::size_t>(j)] = Rational(p);
  }
  return row;
}

void check_optimal(const OptimalScheme& o, const char* route) {
  const auto fail = [&](const std::string& what) {
    throw std::logic_error(std::string(route) + " (" + std::to_string(o.l) + "," + std::to_string(o.m) + "): " + what);
  };
  if (o.d.radius() != o.l + 1) fail("tau(d) != l+1");
  if (o.s.radius() != o.m) fail("tau(s) != m");
  if (moment(o.d, 2) != -2) fail("sum_j d_j j^2 != -2");
}

}  // namespace

TruncatedSeries series_C(int K) {
  if (K < 0) throw std::invalid_argument("series_C: negative truncation order");
  std::vector<Rational> c(static_cast<std::size_t>(K + 1));
  for (int n = 0; n <= K; ++n) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * n + 2), static_cast<unsigned long>(n + 1));
    c[static_cast<std::size_t>(n)] = Rational(2) / (Rational((n + 1) * (n + 1)) * Rational(binom));
  }
  return {std::move(c), K};
}

PadePair pade(int l, int m) {
  if (l < 0 || m < 0) throw std::invalid_argument("pade: l and m must be non-negative");
  const auto c = series_C(l + m);
  const std::size_t unknowns = static_cast<std::size_t>(l + m + 2);
  RationalMatrix sys(static_cast<std::size_t>(l + m + 1), unknowns);
  for (int k = 0; k <= l + m; ++k) {
    if (k <= l) sys(k, k) = 1;
    for (int i = 0; i <= std::min(k, m); ++i) sys(k, l + 1 + i) = -c[k - i];
  }
  const auto basis = nullspace_exact(sys);
  if (basis.size() != 1) {
    throw std::logic_error("pade(" + std::to_string(l) + "," + std::to_string(m) + "): solution space of dimension " +
                           std::to_string(basis.size()));
  }
  const auto& v = basis.front();
  if (sgn(v[0]) == 0) throw std::logic_error("pade: R(0) = 0");
  const Rational scale = 1 / v[0];
  std::vector<Rational> r(v.begin(), v.begin() + l + 1), q(v.begin() + l + 1, v.end());
  for (auto& x : r) x *= scale;
  for (auto& x : q) x *= scale;
  PadePair out{RationalPolynomial(std::move(r)), RationalPolynomial(std::move(q)), l, m};
  if (out.R.degree() != l || out.Q.degree() != m || sgn(out.Q[0]) == 0) {
    throw std::logic_error("pade(" + std::to_string(l) + "," + std::to_string(m) + "): degenerate degrees");
  }
  return out;
}

OptimalScheme optimal_formulas(int l, int m) {
  const auto pq = pade(l, m);
  OptimalScheme o{eval_poly_at_a(RationalPolynomial::x() * pq.R), eval_poly_at_a(pq.Q), l, m};
  check_optimal(o, "optimal_formulas");
  return o;
}

OptimalScheme optimal_formulas_direct(int l, int m) {
  if (l < 0 || m < 0) throw std::invalid_argument("optimal_formulas_direct: l and m must be non-negative");
  const std::size_t nd = static_cast<std::size_t>(l + 2);
  const std::size_t ns = static_cast<std::size_t>(m + 1);
  const std::size_t n = nd + ns;
  RationalMatrix sys(n, n);
  std::vector<Rational> rhs(n);

  auto put = [&](std::size_t row, const std::vector<Rational>& dpart, const std::vector<Rational>& spart) {
    for (std::size_t j = 0; j < dpart.size(); ++j) sys(row, j) = dpart[j];
    for (std::size_t j = 0; j < spart.size(); ++j) sys(row, nd + j) = spart[j];
  };
  put(0, moment_row(l + 1, 0), {});
  put(1, moment_row(l + 1, 2), {});
  rhs[1] = -1;
  for (int k = 1; k <= l + m + 1; ++k) {
    auto spart = moment_row(m, 2 * k - 2);
    for (auto& x : spart) x *= Rational(2 * k * (2 * k - 1));
    put(static_cast<std::size_t>(k + 1), moment_row(l + 1, 2 * k), spart);
  }
  auto x = solve_exact(sys, rhs);
  if (!x) throw std::logic_error("optimal_formulas_direct: singular system");
  OptimalScheme o{RationalFormula(std::vector<Rational>(x->begin(), x->begin() + static_cast<long>(nd))),
                  RationalFormula(std::vector<Rational>(x->begin() + static_cast<long>(nd), x->end())), l, m};
  check_optimal(o, "optimal_formulas_direct");
  return o;
}

}  // namespace cfd
