#include "cfd/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>

#include "cfd/assembly.hpp"
#include "cfd/solver.hpp"

namespace cfd {

namespace {

template <class T>
void check_resonance(const Polynomial<T>& P, const std::vector<T>& lambda) {
  const double floor = eigenvalue_noise_floor(P);
  for (std::size_t k = 0; k < lambda.size(); ++k)
    if (std::abs(lambda[k]) <= floor) throw ResonanceError(static_cast<int>(k + 1), std::abs(lambda[k]));
}

template <class T>
double max_row_sum(const Polynomial<T>& P, int N, std::span<const double> column_weights, kernels::Backend backend,
                   int max_N) {
  if (N <= 0) throw std::invalid_argument("inverse norm: N must be positive");
  if (N > max_N) throw std::invalid_argument("inverse norm: N = " + std::to_string(N) + " above the cap " + std::to_string(max_N));
  const auto lambda = eigenvalues_of_scheme(P, N);
  check_resonance(P, lambda);
  const auto rows = kernels::inverse_abs_row_sums(std::span<const T>(lambda), column_weights, backend);
  return *std::max_element(rows.begin(), rows.end());
}

std::vector<double> inverted(std::vector<double> w) {
  for (auto& x : w) x = 1.0 / x;
  return w;
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RootSet spectral_roots(const RationalPolynomial& P) {
  if (P.is_zero()) throw std::invalid_argument("spectral_roots: zero polynomial");
  return isolate_roots(P, Rational(0), Rational(4));
}

RootSet spectral_roots(const Polynomial<double>& P) { return spectral_roots(polynomial_cast<Rational>(P)); }

RootSet spectral_roots(const Polynomial<Complex>& P) {
  std::vector<double> re, im;
  for (const auto& c : P.coeffs()) {
    re.push_back(c.real());
    im.push_back(c.imag());
  }
  const auto pr = polynomial_cast<Rational>(Polynomial<double>(re));
  const auto pi = polynomial_cast<Rational>(Polynomial<double>(im));
  const auto g = pi.is_zero() ? pr : (pr.is_zero() ? pi : gcd(pr, pi));
  if (g.is_zero()) throw std::invalid_argument("spectral_roots: zero polynomial");
  if (*g.degree() == 0) return {};
  return isolate_roots(g, Rational(0), Rational(4));
}

double delta_q(const RootSet& roots, int q) {
  if (roots.empty()) throw std::invalid_argument("delta_q: empty root set");
  if (q < 2) throw std::invalid_argument("delta_q: q must be at least 2");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : roots.roots) {
    const double lambda = r.value;
    // t in [0, q], so centre +- 1 always meets [1, q-1]
    const double t = 2.0 * q / std::numbers::pi * std::asin(std::sqrt(std::clamp(lambda, 0.0, 4.0)) / 2.0);
    const long centre = std::lround(t);
    for (long p = centre - 1; p <= centre + 1; ++p) {
      if (p < 1 || p > q - 1) continue;
      const double s = std::sin(std::numbers::pi * static_cast<double>(p) / (2.0 * q));
      best = std::min(best, std::abs(lambda - 4 * s * s));
    }
  }
  return best;
}

template <class T>
double inverse_sup_norm(const Polynomial<T>& P, int N, kernels::Backend backend, int max_N) {
  return max_row_sum(P, N, {}, backend, max_N);
}

double inverse_sup_norm(const RationalPolynomial& P, int N, kernels::Backend backend, int max_N) {
  return inverse_sup_norm(polynomial_cast<double>(P), N, backend, max_N);
}

std::vector<double> strong_weights(int N, int l) {
  if (N <= 0 || l < 0) throw std::invalid_argument("strong_weights: bad arguments");
  const double h = 1.0 / (N + 1);
  std::vector<double> w(static_cast<std::size_t>(N), 1.0);
  for (int j = 1; j <= N; ++j)
    if (j > l && j < N + 1 - l) w[static_cast<std::size_t>(j - 1)] = 1.0 / (h * h);
  return w;
}

template <class T>
double strong_stability_probe(const Polynomial<T>& P, int N, int l, kernels::Backend backend) {
  const auto inv_w = inverted(strong_weights(N, l));
  return 1.0 / max_row_sum(P, N, inv_w, backend, kMaxInverseNormN);
}

double strong_stability_probe(const RationalPolynomial& P, int N, int l, kernels::Backend backend) {
  return strong_stability_probe(polynomial_cast<double>(P), N, l, backend);
}

double strong_stability_basis_probe(const RationalPolynomial& P, int N, int l) {
  const auto D = build_D(formula_cast<double>(eval_poly_at_a(P)), N);
  const auto w = strong_weights(N, l);
  double best = std::numeric_limits<double>::infinity();
  for (int j = 0; j < N; ++j) {
    double norm = 0.0;
    for (int i = std::max(0, j - D.bandwidth()); i <= std::min(N - 1, j + D.bandwidth()); ++i)
      norm = std::max(norm, w[static_cast<std::size_t>(i)] * std::abs(D.at(i, j)));
    best = std::min(best, norm);
  }
  return best;
}

RelativeStabilityReport relative_stability_probe(const RationalPolynomial& P, const std::vector<int>& Ns,
                                                 const std::function<double(int)>& eta) {
  RelativeStabilityReport report;
  report.infimum = std::numeric_limits<double>::infinity();
  const auto Pd = polynomial_cast<double>(P);
  for (int N : Ns) {
    RelativeStabilityRow row{N, eta(N), 0.0, 0.0};
    try {
      row.inverse_norm = inverse_sup_norm(Pd, N);
      row.constant = row.eta / row.inverse_norm;
    } catch (const ResonanceError&) {
      row.inverse_norm = std::numeric_limits<double>::infinity();
      row.constant = 0.0;
    }
    if (row.constant < report.infimum) {
      report.infimum = row.constant;
      report.argmin_N = N;
    }
    report.rows.push_back(row);
  }
  if (report.rows.empty()) report.infimum = 0.0;
  return report;
}

double eta_h_minus_2(int N) { return static_cast<double>(N + 1) * static_cast<double>(N + 1); }

double eta_log_corrected(int N) {
  const double q = N + 1;
  const double v = q * std::log(q);
  return v * v;
}

RandomFormula random_formula(int l, Field field, std::uint64_t seed) {
  if (l < 0) throw std::invalid_argument("random_formula: l must be non-negative");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Complex> r;
  for (int k = 0; k <= l; ++k) {
    const double re = normal(rng);
    const double im = field == Field::complex ? normal(rng) : 0.0;
    r.emplace_back(re, im);
  }
  RandomFormula out;
  out.field = field;
  out.R = Polynomial<Complex>(std::move(r));
  out.P = Polynomial<Complex>::x() * out.R;
  out.d = eval_poly_at_a(out.P);
  return out;
}

template <class T>
StabilityReport stability_report(const Polynomial<T>& P, const std::vector<int>& Ns, int l, double resonance_threshold) {
  StabilityReport report;
  report.l = l;
  const auto roots = spectral_roots(P);
  const double floor = eigenvalue_noise_floor(P);
  report.rows.resize(Ns.size());
  for (std::size_t idx = 0; idx < Ns.size(); ++idx) {
    const int N = Ns[idx];
    StabilityRow row;
    row.N = N;
    row.h = 1.0 / (N + 1);
    const auto lambda = eigenvalues_of_scheme(P, N);
    row.min_abs_eig = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < lambda.size(); ++k) {
      if (std::abs(lambda[k]) < row.min_abs_eig) {
        row.min_abs_eig = std::abs(lambda[k]);
        row.argmin_k = static_cast<int>(k + 1);
      }
    }
    row.resonant = row.min_abs_eig < resonance_threshold;
    row.invertible = row.min_abs_eig > floor;
    if (row.invertible && N <= kMaxInverseNormN) {
      const auto plain = kernels::inverse_abs_row_sums(std::span<const T>(lambda), {}, kernels::Backend::parallel);
      row.h2_inv_norm = row.h * row.h * *std::max_element(plain.begin(), plain.end());
      const auto inv_w = inverted(strong_weights(N, l));
      const auto weighted = kernels::inverse_abs_row_sums(std::span<const T>(lambda), std::span<const double>(inv_w),
                                                          kernels::Backend::parallel);
      row.strong_c = 1.0 / *std::max_element(weighted.begin(), weighted.end());
    } else if (!row.invertible) {
      row.h2_inv_norm = std::numeric_limits<double>::infinity();
      row.strong_c = 0.0;
    } else {
      row.h2_inv_norm = std::numeric_limits<double>::quiet_NaN();
      row.strong_c = std::numeric_limits<double>::quiet_NaN();
    }
    row.delta = roots.empty() ? std::numeric_limits<double>::quiet_NaN() : delta_q(roots, N + 1);
    report.rows[idx] = row;
  }
  return report;
}

StabilityReport stability_report(const RationalPolynomial& P, const std::vector<int>& Ns, int l,
                                 double resonance_threshold) {
  return stability_report(polynomial_cast<double>(P), Ns, l, resonance_threshold);
}

void write_csv(std::ostream& os, const StabilityReport& report) {
  os << "N,h,min_abs_eig,h2_inv_norm,strong_c_l,delta_q,resonant_flag\n";
  for (const auto& r : report.rows) {
    os << r.N << ',' << fmt(r.h) << ',' << fmt(r.min_abs_eig) << ',' << fmt(r.h2_inv_norm) << ',' << fmt(r.strong_c)
       << ',' << fmt(r.delta) << ',' << (r.resonant ? 1 : 0) << '\n';
  }
}

template double inverse_sup_norm(const Polynomial<double>&, int, kernels::Backend, int);
template double inverse_sup_norm(const Polynomial<Complex>&, int, kernels::Backend, int);
template double strong_stability_probe(const Polynomial<double>&, int, int, kernels::Backend);
template double strong_stability_probe(const Polynomial<Complex>&, int, int, kernels::Backend);
template StabilityReport stability_report(const Polynomial<double>&, const std::vector<int>&, int, double);
template StabilityReport stability_report(const Polynomial<Complex>&, const std::vector<int>&, int, double);

}  // namespace cfd
