#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "cfd/pade.hpp"
#include "cfd/solver.hpp"
#include "cfd/stability.hpp"
#include "support.hpp"

using namespace cfd;
using P = RationalPolynomial;

namespace {

constexpr double kPi = std::numbers::pi;

// 4 sin^2(pi alpha / 2) for alpha = sqrt(2) - 1, as an exact dyadic rational.
P liouville_polynomial() {
  const double alpha = std::sqrt(2.0) - 1;
  const double s = std::sin(kPi * alpha / 2);
  const Rational lambda = exact_rational(4 * s * s);
  return P({Rational(0), Rational(-lambda), Rational(1)});
}

// Row sums of the min kernel, the closed form of A_N^{-1}.
double green_norm(int N) {
  const double h = 1.0 / (N + 1);
  double best = 0;
  for (int i = 1; i <= N; ++i) {
    double row = 0;
    for (int j = 1; j <= N; ++j) row += std::min(j * (1 - h * i), i * (1 - h * j));
    best = std::max(best, row);
  }
  return best;
}

}  // namespace

TEST_CASE("spectral roots") {
  const auto rs = spectral_roots(P::x());
  REQUIRE(rs.size() == 1);
  CHECK(rs.contains_zero());
  const auto two = spectral_roots(P({Rational(0), Rational(-2), Rational(1)}));
  CHECK(two.values() == std::vector<double>{0.0, 2.0});
  CHECK(spectral_roots(pade(2, 1).R).empty());

  // Complex: (X - 1)(X - i) has the real root 1; (X - i)(X + i) has none.
  const Polynomial<Complex> c1({Complex(0, 1), Complex(-1, -1), Complex(1)});
  CHECK(spectral_roots(c1).values() == std::vector<double>{1.0});
  const Polynomial<Complex> c2({Complex(1), Complex(0), Complex(1)});
  CHECK(spectral_roots(c2).empty());
  CHECK_THROWS(spectral_roots(P{}));
}

TEST_CASE("delta_q") {
  const auto zero = spectral_roots(P::x());
  CHECK(delta_q(zero, 4) == doctest::Approx(4 * std::pow(std::sin(kPi / 8), 2)));
  CHECK(delta_q(zero, 4) == doctest::Approx(0.5858).epsilon(1e-4));
  const auto two = spectral_roots(P({Rational(0), Rational(-2), Rational(1)}));
  CHECK(delta_q(two, 4) <= 1e-15);
  CHECK(delta_q(two, 5) > 0.1);
  CHECK_THROWS(delta_q(zero, 1));
  CHECK_THROWS(delta_q(RootSet{}, 4));

  // delta_q against brute force over every p.
  const auto lv = spectral_roots(liouville_polynomial());
  REQUIRE(lv.size() == 2);
  for (int q : {2, 3, 17, 99, 408, 1001}) {
    double brute = 1e300;
    for (double lambda : lv.values())
      for (int p = 1; p <= q - 1; ++p) brute = std::min(brute, std::abs(lambda - 4 * std::pow(std::sin(kPi * p / (2.0 * q)), 2)));
    CHECK(delta_q(lv, q) == brute);
  }
}

TEST_CASE("delta_q decays no faster than 1/q^2 for a quadratic irrational") {
  const auto lv = spectral_roots(liouville_polynomial());
  double lo = 1e300, hi = 0;
  for (int q = 10; q <= 5000; ++q) {
    const double c = delta_q(lv, q) * q * q;
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(lo > 1e-2);
  CHECK(hi <= 2 * kPi * kPi);
}

TEST_CASE("inverse sup norm of A_N") {
  CHECK(inverse_sup_norm(P::x(), 7) == doctest::Approx(green_norm(7)).epsilon(1e-12));
  CHECK(inverse_sup_norm(P::x(), 7, kernels::Backend::serial) == doctest::Approx(green_norm(7)).epsilon(1e-12));
  for (int N : {256, 511, 1024, 2048}) {
    const double h = 1.0 / (N + 1);
    CHECK(h * h * inverse_sup_norm(P::x(), N) == doctest::Approx(0.125).epsilon(0.01));
  }
  CHECK_THROWS_AS(inverse_sup_norm(P::x(), 4096), std::invalid_argument);
  CHECK_THROWS_AS(inverse_sup_norm(P({Rational(0), Rational(-2), Rational(1)}), 7), ResonanceError);
}

TEST_CASE("h^2 ||P(A_N)^{-1}|| stays bounded when P has no root in (0, 4]") {
  auto check_bounded = [](const P& p) {
    const double ref = inverse_sup_norm(p, 64) / (65.0 * 65.0);
    for (int N : {32, 100, 257, 512, 1024}) {
      const double h = 1.0 / (N + 1);
      const double v = h * h * inverse_sup_norm(p, N);
      CHECK(v < 10 * ref);
      CHECK(v > ref / 10);
    }
  };
  check_bounded(P({Rational(0), Rational(1), Rational(1)}));
  for (int l = 0; l <= 2; ++l)
    for (int m = 0; l + m <= 2; ++m) check_bounded(formula_to_poly(optimal_formulas(l, m).d));
}

TEST_CASE("strong stability probe") {
  for (int N : {31, 200}) {
    const double h = 1.0 / (N + 1);
    CHECK(strong_stability_probe(P::x(), N, 0) == doctest::Approx(1.0 / (h * h * inverse_sup_norm(P::x(), N))));
  }
  // P = X settles to 8 / (2l+1)^2 for every l.
  for (int l : {1, 2, 4}) {
    const double limit = 8.0 / ((2 * l + 1) * (2 * l + 1));
    for (int N : {16, 64, 256, 1024}) {
      const double c = strong_stability_probe(P::x(), N, l);
      CHECK(c >= limit);
      CHECK(c == doctest::Approx(limit).epsilon(0.02));
    }
  }

  for (int l = 0; l <= 2; ++l) {
    for (int m = 0; l + m <= 4 && m <= 2; ++m) {
      const auto p = formula_to_poly(optimal_formulas(l, m).d);
      double low = 1e300;
      for (int N : {32, 128, 512}) low = std::min(low, strong_stability_probe(p, N, l + 1));
      CHECK(low > 0.1);
    }
  }

  // The exact constant never exceeds any single probe.
  const auto p = formula_to_poly(optimal_formulas(1, 1).d);
  for (int N : {10, 50}) {
    CHECK(strong_stability_probe(p, N, 2) <= strong_stability_basis_probe(p, N, 2) * (1 + 1e-12));
    CHECK(strong_stability_probe(p, N, 2, kernels::Backend::serial) ==
          doctest::Approx(strong_stability_probe(p, N, 2)).epsilon(1e-10));
  }
}

TEST_CASE("relative stability probe") {
  const auto rep = relative_stability_probe(P::x(), {15, 63, 255, 1023}, eta_h_minus_2);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.infimum == doctest::Approx(8.0).epsilon(0.05));
  for (const auto& r : rep.rows) CHECK(r.constant > 7.5);

  const auto res = relative_stability_probe(P({Rational(0), Rational(-2), Rational(1)}), {7, 8, 9}, eta_log_corrected);
  CHECK(res.infimum == 0.0);
  CHECK(std::isinf(res.rows[0].inverse_norm));
  CHECK(res.rows[1].constant > 0);
  CHECK(res.argmin_N == 7);
}

TEST_CASE("diophantine sum bound") {
  const auto p = liouville_polynomial();
  const auto roots = spectral_roots(p);
  std::vector<double> products;
  for (int N : {64, 100, 169, 407, 985, 1500, 2000}) {
    const auto lambda = eigenvalues_of_scheme(p, N);
    double sum = 0;
    for (double l : lambda) sum += 2 / std::abs(l);
    products.push_back(sum * delta_q(roots, N + 1));
  }
  const double ref = products.front();
  for (double v : products) CHECK(v < 10 * ref);
}

TEST_CASE("random formulas") {
  for (auto field : {Field::real, Field::complex}) {
    const auto r = random_formula(2, field, 12345);
    CHECK(std::abs(moment(r.d, 0)) <= 1e-12);
    CHECK(r.d.radius_or_minus_one() == 3);
    const auto again = random_formula(2, field, 12345);
    CHECK(again.d == r.d);
    CHECK_FALSE(random_formula(2, field, 12346).d == r.d);
    for (const auto& c : r.R.coeffs()) CHECK((field == Field::complex || c.imag() == 0.0));
  }
  int complex_hits = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed)
    if (!spectral_roots(random_formula(2, Field::complex, seed).R).empty()) ++complex_hits;
  CHECK(complex_hits == 0);
}

TEST_CASE("stability report and csv") {
  const auto rep = stability_report(P::x(), {7, 31}, 0);
  REQUIRE(rep.rows.size() == 2);
  CHECK(rep.rows[0].min_abs_eig == doctest::Approx(4 * std::pow(std::sin(kPi / 16), 2)));
  CHECK(rep.rows[0].argmin_k == 1);
  CHECK(rep.rows[1].h2_inv_norm == doctest::Approx(std::pow(1.0 / 32, 2) * green_norm(31)));
  CHECK(rep.rows[1].delta == doctest::Approx(4 * std::pow(std::sin(kPi / 64), 2)));
  CHECK_FALSE(rep.rows[0].resonant);

  const auto bad = stability_report(P({Rational(0), Rational(-2), Rational(1)}), {7}, 1);
  CHECK(bad.rows[0].resonant);
  CHECK_FALSE(bad.rows[0].invertible);
  CHECK(std::isinf(bad.rows[0].h2_inv_norm));

  std::ostringstream os;
  write_csv(os, bad);
  CHECK(os.str().rfind("N,h,min_abs_eig,h2_inv_norm,strong_c_l,delta_q,resonant_flag\n", 0) == 0);
  CHECK(os.str().find(",inf,0,") != std::string::npos);
  CHECK(os.str().back() == '\n');
}
