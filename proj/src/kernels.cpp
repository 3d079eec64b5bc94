#include "cfd/kernels.hpp"

#include <cmath>
#include <complex>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <fftw3.h>
#include <omp.h>

#include "cfd/assembly.hpp"

namespace cfd::kernels {

namespace {

// v on 1-based indices 1-tau .. N+tau, stored from offset 0.
std::vector<double> extended(std::span<const double> v, long tau) {
  const long N = static_cast<long>(v.size());
  std::vector<double> ext(static_cast<std::size_t>(N + 2 * tau));
  for (long j = 1 - tau; j <= N + tau; ++j) ext[static_cast<std::size_t>(j - 1 + tau)] = odd_extension_value(v, j);
  return ext;
}

double convolve_row(const std::vector<double>& ext, std::span<const double> d, long i, long tau) {
  // centre of row i sits at ext[i - 1 + tau]
  const double* c = ext.data() + (i - 1 + tau);
  double acc = d[0] * c[0];
  for (long k = 1; k <= tau; ++k) acc += d[static_cast<std::size_t>(k)] * (c[k] + c[-k]);
  return acc;
}

// sin(pi m / (N+1)) for m = 0 .. 2N+1; index products modulo 2N+2.
std::vector<double> sine_table(long N) {
  const long period = 2 * (N + 1);
  std::vector<double> t(static_cast<std::size_t>(period));
  for (long m = 0; m < period; ++m) t[static_cast<std::size_t>(m)] = std::sin(std::numbers::pi * m / (N + 1));
  return t;
}

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

template <class T>
void check_eigenvalues(std::span<const T> eigenvalues, std::span<const double> weights) {
  if (eigenvalues.empty()) throw std::invalid_argument("inverse_abs_row_sums: empty spectrum");
  if (!weights.empty() && weights.size() != eigenvalues.size())
    throw std::invalid_argument("inverse_abs_row_sums: weight count mismatch");
  for (const auto& l : eigenvalues)
    if (l == T(0)) throw std::domain_error("inverse_abs_row_sums: zero eigenvalue");
}

double weight(std::span<const double> w, std::size_t j) { return w.empty() ? 1.0 : w[j]; }

}  // namespace

std::vector<double> apply_D_serial(const SymmetricFormula<double>& d, std::span<const double> v) {
  const long N = static_cast<long>(v.size());
  const long tau = d.radius_or_minus_one();
  std::vector<double> out(v.size(), 0.0);
  if (tau < 0 || N == 0) return out;
  const auto ext = extended(v, tau);
  for (long i = 1; i <= N; ++i) out[static_cast<std::size_t>(i - 1)] = convolve_row(ext, d.coeffs(), i, tau);
  return out;
}

std::vector<double> apply_D_parallel(const SymmetricFormula<double>& d, std::span<const double> v) {
  const long N = static_cast<long>(v.size());
  const long tau = d.radius_or_minus_one();
  std::vector<double> out(v.size(), 0.0);
  if (tau < 0 || N == 0) return out;
  const auto ext = extended(v, tau);
  const auto coeffs = d.coeffs();
#pragma omp parallel for schedule(static)
  for (long i = 1; i <= N; ++i) out[static_cast<std::size_t>(i - 1)] = convolve_row(ext, coeffs, i, tau);
  return out;
}

std::vector<double> dst1_naive_serial(std::span<const double> x) {
  const long n = static_cast<long>(x.size());
  const auto table = sine_table(n);
  const long period = 2 * (n + 1);
  std::vector<double> y(x.size(), 0.0);
  for (long k = 0; k < n; ++k) {
    double acc = 0.0;
    for (long j = 0; j < n; ++j) acc += x[static_cast<std::size_t>(j)] * table[static_cast<std::size_t>(((j + 1) * (k + 1)) % period)];
    y[static_cast<std::size_t>(k)] = 2.0 * acc;
  }
  return y;
}

std::vector<double> dst1_naive_parallel(std::span<const double> x) {
  const long n = static_cast<long>(x.size());
  const auto table = sine_table(n);
  const long period = 2 * (n + 1);
  std::vector<double> y(x.size(), 0.0);
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) {
    double acc = 0.0;
    for (long j = 0; j < n; ++j) acc += x[static_cast<std::size_t>(j)] * table[static_cast<std::size_t>(((j + 1) * (k + 1)) % period)];
    y[static_cast<std::size_t>(k)] = 2.0 * acc;
  }
  return y;
}

struct SineTransform::Plan {
  fftw_plan plan = nullptr;
};

SineTransform::SineTransform(int n) : n_(n), plan_(std::make_unique<Plan>()) {
  if (n <= 0) throw std::invalid_argument("SineTransform: size must be positive");
  std::vector<double> in(static_cast<std::size_t>(n)), out(static_cast<std::size_t>(n));
  std::lock_guard lock(planner_mutex());
  plan_->plan = fftw_plan_r2r_1d(n, in.data(), out.data(), FFTW_RODFT00, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (plan_->plan == nullptr) throw std::runtime_error("SineTransform: FFTW planning failed");
}

SineTransform::~SineTransform() {
  std::lock_guard lock(planner_mutex());
  if (plan_ && plan_->plan) fftw_destroy_plan(plan_->plan);
}

void SineTransform::execute(const double* in, double* out) const {
  // FFTW's new-array execute never writes to the input for r2r 1-d transforms.
  fftw_execute_r2r(plan_->plan, const_cast<double*>(in), out);
}

std::vector<double> SineTransform::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != n_) throw std::invalid_argument("SineTransform: size mismatch");
  std::vector<double> y(x.size());
  execute(x.data(), y.data());
  return y;
}

template <class T>
std::vector<double> inverse_abs_row_sums(std::span<const T> eigenvalues, std::span<const double> weights,
                                         Backend backend) {
  check_eigenvalues(eigenvalues, weights);
  const long N = static_cast<long>(eigenvalues.size());
  const double h = 1.0 / static_cast<double>(N + 1);
  const long period = 2 * (N + 1);
  const auto table = sine_table(N);
  std::vector<double> rows(static_cast<std::size_t>(N), 0.0);

  if (backend == Backend::serial) {
    for (long c = 1; c <= N; ++c) {
      double sum = 0.0;
      for (long j = 1; j <= N; ++j) {
        T entry = T(0);
        for (long k = 1; k <= N; ++k) {
          const double sk = table[static_cast<std::size_t>((k * j) % period)] * table[static_cast<std::size_t>((k * c) % period)];
          entry += sk / eigenvalues[static_cast<std::size_t>(k - 1)];
        }
        sum += std::abs(2.0 * h * entry) * weight(weights, static_cast<std::size_t>(j - 1));
      }
      rows[static_cast<std::size_t>(c - 1)] = sum;
    }
    return rows;
  }

  const SineTransform dst(static_cast<int>(N));
#pragma omp parallel
  {
    std::vector<double> g_re(static_cast<std::size_t>(N)), g_im(static_cast<std::size_t>(N));
    std::vector<double> col_re(static_cast<std::size_t>(N)), col_im(static_cast<std::size_t>(N));
#pragma omp for schedule(dynamic, 16)
    for (long c = 1; c <= N; ++c) {
      for (long k = 1; k <= N; ++k) {
        const T g = table[static_cast<std::size_t>((k * c) % period)] / eigenvalues[static_cast<std::size_t>(k - 1)];
        if constexpr (is_complex<T>::value) {
          g_re[static_cast<std::size_t>(k - 1)] = g.real();
          g_im[static_cast<std::size_t>(k - 1)] = g.imag();
        } else {
          g_re[static_cast<std::size_t>(k - 1)] = g;
        }
      }
      dst.execute(g_re.data(), col_re.data());
      if constexpr (is_complex<T>::value) dst.execute(g_im.data(), col_im.data());
      double sum = 0.0;
      for (long j = 0; j < N; ++j) {
        double mag = std::abs(col_re[static_cast<std::size_t>(j)]);
        if constexpr (is_complex<T>::value) mag = std::hypot(col_re[static_cast<std::size_t>(j)], col_im[static_cast<std::size_t>(j)]);
        sum += h * mag * weight(weights, static_cast<std::size_t>(j));
      }
      rows[static_cast<std::size_t>(c - 1)] = sum;
    }
  }
  return rows;
}

template std::vector<double> inverse_abs_row_sums<double>(std::span<const double>, std::span<const double>, Backend);
template std::vector<double> inverse_abs_row_sums<Complex>(std::span<const Complex>, std::span<const double>, Backend);

}  // namespace cfd::kernels
