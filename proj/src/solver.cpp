#include "cfd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <type_traits>

#include <lapacke.h>

#include "cfd/kernels.hpp"

namespace cfd {

static_assert(std::is_same_v<lapack_int, int>);

namespace {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

template <class T>
double inf_norm(std::span<const T> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

template <class T>
double matrix_inf_norm(const BandedMatrix<T>& D) {
  double m = 0.0;
  const int n = D.size(), bw = D.bandwidth();
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j) row += std::abs(D.at(i, j));
    m = std::max(m, row);
  }
  return m;
}

lapack_int gbtrf(lapack_int n, lapack_int kl, lapack_int ku, double* ab, lapack_int ldab, lapack_int* ipiv) {
  return LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, ab, ldab, ipiv);
}
lapack_int gbtrf(lapack_int n, lapack_int kl, lapack_int ku, Complex* ab, lapack_int ldab, lapack_int* ipiv) {
  return LAPACKE_zgbtrf(LAPACK_COL_MAJOR, n, n, kl, ku, reinterpret_cast<lapack_complex_double*>(ab), ldab, ipiv);
}
lapack_int gbtrs(lapack_int n, lapack_int kl, lapack_int ku, const double* ab, lapack_int ldab, const lapack_int* ipiv,
                 double* b) {
  return LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, ab, ldab, ipiv, b, n);
}
lapack_int gbtrs(lapack_int n, lapack_int kl, lapack_int ku, const Complex* ab, lapack_int ldab, const lapack_int* ipiv,
                 Complex* b) {
  return LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', n, kl, ku, 1, reinterpret_cast<const lapack_complex_double*>(ab), ldab,
                        ipiv, reinterpret_cast<lapack_complex_double*>(b), n);
}

// DST-I of a real or complex vector, real and imaginary parts separately.
template <class T>
std::vector<T> transform(const kernels::SineTransform& dst, std::span<const T> x) {
  if constexpr (is_complex<T>::value) {
    const std::size_t n = x.size();
    std::vector<double> re(n), im(n);
    for (std::size_t j = 0; j < n; ++j) {
      re[j] = x[j].real();
      im[j] = x[j].imag();
    }
    const auto yr = dst(re), yi = dst(im);
    std::vector<T> y(n);
    for (std::size_t j = 0; j < n; ++j) y[j] = T(yr[j], yi[j]);
    return y;
  } else {
    return dst(x);
  }
}

template <class T>
T eval_at(const Polynomial<T>& P, double x) {
  T acc = T(0);
  const auto c = P.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
  return acc;
}

}  // namespace

SingularMatrixError::SingularMatrixError(int row_, double pivot_)
    : std::runtime_error("singular to working precision: pivot " + format_double(pivot_) + " at row " +
                         std::to_string(row_)),
      row(row_),
      pivot(pivot_) {}

ResonanceError::ResonanceError(int k_, double eigenvalue_)
    : std::runtime_error("exact resonance: eigenvalue k = " + std::to_string(k_) + " is " + format_double(eigenvalue_)),
      k(k_),
      eigenvalue(eigenvalue_) {}

template <class T>
BandedLU<T>::BandedLU(const BandedMatrix<T>& D) : n_(D.size()), bw_(D.bandwidth()), ldab_(3 * D.bandwidth() + 1) {
  // LAPACK band layout with room for fill-in: ldab = 2 kl + ku + 1.
  ab_.assign(static_cast<std::size_t>(ldab_) * static_cast<std::size_t>(n_), T(0));
  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - bw_); i <= std::min(n_ - 1, j + bw_); ++i)
      ab_[static_cast<std::size_t>(j) * ldab_ + static_cast<std::size_t>(2 * bw_ + i - j)] = D.at(i, j);

  ipiv_.resize(static_cast<std::size_t>(n_));
  const lapack_int info = gbtrf(n_, bw_, bw_, ab_.data(), ldab_, ipiv_.data());
  if (info < 0) throw std::logic_error("solve_banded: bad argument to gbtrf");

  norm_ = matrix_inf_norm(D);
  const double threshold = n_ * std::numeric_limits<double>::epsilon() * norm_;
  min_pivot_ = std::numeric_limits<double>::infinity();
  int min_row = 1;
  for (int i = 0; i < n_; ++i) {
    const double p = std::abs(ab_[static_cast<std::size_t>(i) * ldab_ + static_cast<std::size_t>(2 * bw_)]);
    if (p < min_pivot_) {
      min_pivot_ = p;
      min_row = i + 1;
    }
  }
  if (info > 0) throw SingularMatrixError(static_cast<int>(info), 0.0);
  if (min_pivot_ <= threshold) throw SingularMatrixError(min_row, min_pivot_);
}

template <class T>
std::vector<T> BandedLU<T>::solve(std::span<const T> rhs) const {
  if (static_cast<int>(rhs.size()) != n_) throw std::invalid_argument("solve_banded: size mismatch");
  std::vector<T> x(rhs.begin(), rhs.end());
  if (gbtrs(n_, bw_, bw_, ab_.data(), ldab_, ipiv_.data(), x.data()) != 0) throw std::logic_error("solve_banded: gbtrs failed");
  return x;
}

template <class T>
BandedSolution<T> solve_banded(const BandedMatrix<T>& D, std::span<const T> rhs) {
  if (static_cast<int>(rhs.size()) != D.size()) throw std::invalid_argument("solve_banded: size mismatch");
  const BandedLU<T> lu(D);
  BandedSolution<T> out;
  out.x = lu.solve(rhs);
  const auto dx = D.multiply(std::span<const T>(out.x));
  double res = 0.0;
  for (int i = 0; i < D.size(); ++i) res = std::max(res, std::abs(dx[i] - rhs[i]));
  out.residual = res;
  const double scale = lu.norm() * inf_norm(std::span<const T>(out.x)) + inf_norm(rhs);
  out.relative_residual = scale > 0 ? res / scale : 0.0;
  out.min_pivot = lu.min_pivot();
  return out;
}

BandedSolution<long double> solve_banded_refined(const BandedMatrix<long double>& D, std::span<const long double> rhs,
                                                 int max_steps) {
  using Wide = __float128;
  const int n = D.size(), bw = D.bandwidth();
  if (static_cast<int>(rhs.size()) != n) throw std::invalid_argument("solve_banded_refined: size mismatch");
  BandedMatrix<double> Dd(n, bw);
  for (int i = 0; i < n; ++i)
    for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j) Dd.set(i, j, static_cast<double>(D.at(i, j)));
  const BandedLU<double> lu(Dd);

  std::vector<long double> x(static_cast<std::size_t>(n), 0.0L);
  std::vector<double> r(static_cast<std::size_t>(n));
  double res = 0.0, prev = std::numeric_limits<double>::infinity();
  for (int step = 0; step <= max_steps; ++step) {
    res = 0.0;
    for (int i = 0; i < n; ++i) {
      Wide acc = static_cast<Wide>(rhs[i]);
      for (int j = std::max(0, i - bw); j <= std::min(n - 1, i + bw); ++j)
        acc -= static_cast<Wide>(D.at(i, j)) * static_cast<Wide>(x[j]);
      r[i] = static_cast<double>(acc);
      res = std::max(res, std::abs(r[i]));
    }
    if (res == 0.0 || res >= prev) break;
    prev = res;
    const auto dx = lu.solve(std::span<const double>(r));
    for (int i = 0; i < n; ++i) x[i] += dx[i];
  }
  BandedSolution<long double> out;
  out.x = std::move(x);
  out.residual = res;
  double xn = 0.0, bn = 0.0;
  for (int i = 0; i < n; ++i) {
    xn = std::max(xn, static_cast<double>(std::abs(out.x[i])));
    bn = std::max(bn, static_cast<double>(std::abs(rhs[i])));
  }
  const double scale = lu.norm() * xn + bn;
  out.relative_residual = scale > 0 ? res / scale : 0.0;
  out.min_pivot = lu.min_pivot();
  return out;
}

template <class T>
std::vector<T> eigenvalues_of_scheme(const Polynomial<T>& P, int N) {
  if (N <= 0) throw std::invalid_argument("eigenvalues_of_scheme: N must be positive");
  std::vector<T> out(static_cast<std::size_t>(N));
  const double h = 1.0 / (N + 1);
  for (int k = 1; k <= N; ++k) {
    const double s = std::sin(std::numbers::pi * k * h / 2);
    out[static_cast<std::size_t>(k - 1)] = eval_at(P, 4 * s * s);
  }
  return out;
}

std::vector<double> eigenvalues_of_scheme(const RationalPolynomial& P, int N) {
  return eigenvalues_of_scheme(polynomial_cast<double>(P), N);
}

template <class T>
double eigenvalue_noise_floor(const Polynomial<T>& P) {
  // Horner error at |x| <= 4 is at most 2 deg eps sum |c_k| 4^k.
  double sum = 0.0, scale = 1.0;
  for (const auto& c : P.coeffs()) {
    sum += std::abs(c) * scale;
    scale *= 4.0;
  }
  const double deg = std::max<double>(1.0, static_cast<double>(P.size()));
  return 2.0 * deg * std::numeric_limits<double>::epsilon() * sum;
}

template <class T>
std::vector<T> solve_spectral(const Polynomial<T>& P, std::span<const T> rhs, int N) {
  if (static_cast<int>(rhs.size()) != N) throw std::invalid_argument("solve_spectral: size mismatch");
  const auto lambda = eigenvalues_of_scheme(P, N);
  const double floor = eigenvalue_noise_floor(P);
  for (int k = 1; k <= N; ++k)
    if (std::abs(lambda[static_cast<std::size_t>(k - 1)]) <= floor) throw ResonanceError(k, std::abs(lambda[static_cast<std::size_t>(k - 1)]));

  // v = (h/2) S (S rhs / lambda), S the unnormalised DST-I.
  const kernels::SineTransform dst(N);
  const double h = 1.0 / (N + 1);
  auto g = transform(dst, rhs);
  for (int k = 0; k < N; ++k) g[k] /= lambda[k];
  auto out = transform(dst, std::span<const T>(g));
  for (auto& v : out) v *= h / 2;
  return out;
}

std::vector<double> solve_spectral(const RationalPolynomial& P, std::span<const double> rhs, int N) {
  return solve_spectral(polynomial_cast<double>(P), rhs, N);
}

template class BandedLU<double>;
template class BandedLU<Complex>;
template BandedSolution<double> solve_banded(const BandedMatrix<double>&, std::span<const double>);
template BandedSolution<Complex> solve_banded(const BandedMatrix<Complex>&, std::span<const Complex>);
template std::vector<double> eigenvalues_of_scheme(const Polynomial<double>&, int);
template std::vector<Complex> eigenvalues_of_scheme(const Polynomial<Complex>&, int);
template double eigenvalue_noise_floor(const Polynomial<double>&);
template double eigenvalue_noise_floor(const Polynomial<Complex>&);
template std::vector<double> solve_spectral(const Polynomial<double>&, std::span<const double>, int);
template std::vector<Complex> solve_spectral(const Polynomial<Complex>&, std::span<const Complex>, int);

}  // namespace cfd
