#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include "cfd/formula.hpp"
#include "cfd/polynomial.hpp"

namespace cfd {

/// N interior points x_j = j h, h = 1/(N+1).
struct Grid {
  explicit Grid(int n);

  int N;
  double h;
  Rational h_exact;

  double x(long j) const { return node<double>(j); }
  template <class T>
  T node(long j) const {
    return static_cast<T>(j) / static_cast<T>(N + 1);
  }
};

/// A complete discretisation: interior pair (d, s), boundary corrections
/// b^1..b^{tau(d)}, interior order n and boundary order mu in {n-2, n}.
struct Scheme {
  RationalFormula d;
  RationalFormula s;
  std::vector<RationalFormula> boundary;
  int n = 2;
  int mu = 2;

  /// Validates (d, s) against n and computes the boundary corrections.
  static Scheme build(RationalFormula d, RationalFormula s, int n, int mu);
  /// s is the unique interior right-hand side of order n for d.
  static Scheme from_interior(RationalFormula d, int n, int mu);
  /// Optimal pair (d^{l,m}, s^{l,m}), n = 2(l+m+1).
  static Scheme optimal(int l, int m, int mu);

  RationalPolynomial polynomial() const;
  int closure_rows() const { return std::max(d.radius_or_minus_one(), 0); }
};

/// Square banded matrix with equal lower and upper bandwidth.
template <class T>
class BandedMatrix {
 public:
  BandedMatrix(int n, int bandwidth)
      : n_(n), bw_(bandwidth), data_(static_cast<std::size_t>(n) * static_cast<std::size_t>(2 * bandwidth + 1), from_int<T>(0)) {
    if (n <= 0 || bandwidth < 0) throw std::invalid_argument("BandedMatrix: bad dimensions");
  }

  int size() const { return n_; }
  int bandwidth() const { return bw_; }

  // 0-based indices.
  T at(int i, int j) const {
    if (std::abs(i - j) > bw_) return from_int<T>(0);
    return data_[index(i, j)];
  }
  void set(int i, int j, T value) {
    if (std::abs(i - j) > bw_) throw std::out_of_range("BandedMatrix: entry outside band");
    data_[index(i, j)] = std::move(value);
  }

  std::vector<T> multiply(std::span<const T> v) const {
    if (static_cast<int>(v.size()) != n_) throw std::invalid_argument("BandedMatrix::multiply: size mismatch");
    std::vector<T> out(static_cast<std::size_t>(n_), from_int<T>(0));
    for (int i = 0; i < n_; ++i) {
      T acc = from_int<T>(0);
      for (int j = std::max(0, i - bw_); j <= std::min(n_ - 1, i + bw_); ++j) acc += data_[index(i, j)] * v[j];
      out[static_cast<std::size_t>(i)] = acc;
    }
    return out;
  }

  std::vector<std::vector<T>> to_dense() const {
    std::vector<std::vector<T>> m(static_cast<std::size_t>(n_), std::vector<T>(static_cast<std::size_t>(n_), from_int<T>(0)));
    for (int i = 0; i < n_; ++i)
      for (int j = std::max(0, i - bw_); j <= std::min(n_ - 1, i + bw_); ++j) m[i][j] = data_[index(i, j)];
    return m;
  }

 private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(2 * bw_ + 1) + static_cast<std::size_t>(j - i + bw_);
  }

  int n_;
  int bw_;
  std::vector<T> data_;
};

/// Entry (i, j), 1-based, of D_N(d): the matrix of convolution by d on
/// sequences odd about 0 and about N+1.
template <class T>
T odd_extension_entry(const SymmetricFormula<T>& d, int N, long i, long j) {
  const long period = 2L * (N + 1);
  const long tau = d.radius_or_minus_one();
  T acc = from_int<T>(0);
  if (tau < 0) return acc;
  const long reach = tau / period + 2;
  for (long m = -reach; m <= reach; ++m) {
    const long shift = m * period;
    const long direct = i - j - shift;
    const long mirrored = i + j - shift;
    if (direct >= -tau && direct <= tau) acc += d[direct];
    if (mirrored >= -tau && mirrored <= tau) acc -= d[mirrored];
  }
  return acc;
}

/// D_N(d): Toeplitz band of d minus the reflected corner blocks d_{i+j}.
template <class T>
BandedMatrix<T> build_D(const SymmetricFormula<T>& d, int N) {
  if (N <= 0) throw std::invalid_argument("build_D: N must be positive");
  const int bw = std::min(std::max(d.radius_or_minus_one(), 0), N - 1);
  BandedMatrix<T> m(N, bw);
  for (int i = 1; i <= N; ++i) {
    for (int j = std::max(1, i - bw); j <= std::min(N, i + bw); ++j) m.set(i - 1, j - 1, odd_extension_entry(d, N, i, j));
  }
  return m;
}

/// Value at index j in Z of the odd, (2N+2)-periodic extension of v.
template <class T>
T odd_extension_value(std::span<const T> v, long j) {
  const long N = static_cast<long>(v.size());
  const long period = 2 * (N + 1);
  long r = j % period;
  if (r < 0) r += period;
  if (r == 0 || r == N + 1) return from_int<T>(0);
  if (r <= N) return v[static_cast<std::size_t>(r - 1)];
  return -v[static_cast<std::size_t>(period - r - 1)];
}

/// D_N(d) v through the odd extension and a plain convolution.
template <class T>
std::vector<T> apply_D(const SymmetricFormula<T>& d, std::span<const T> v) {
  const long N = static_cast<long>(v.size());
  const long tau = d.radius_or_minus_one();
  std::vector<T> out(v.size(), from_int<T>(0));
  for (long i = 1; i <= N; ++i) {
    T acc = from_int<T>(0);
    for (long k = -tau; k <= tau; ++k) acc += d[k] * odd_extension_value(v, i - k);
    out[static_cast<std::size_t>(i - 1)] = acc;
  }
  return out;
}

template <class T>
using Function = std::function<T(T)>;
using RealFunction = Function<double>;

/// Samples a source term on the grid, including the few nodes outside [0, 1]
/// that the right-hand side stencils reach.
template <class T>
class BasicSourceSampler {
 public:
  BasicSourceSampler(const Function<T>& f, const Grid& grid, int margin) : margin_(margin) {
    if (margin < 0) throw std::invalid_argument("SourceSampler: negative margin");
    samples_.reserve(static_cast<std::size_t>(grid.N + 2 + 2 * margin));
    for (long j = -margin; j <= grid.N + 1 + margin; ++j) samples_.push_back(f(grid.node<T>(j)));
  }

  /// f(x_j) for -margin <= j <= N + 1 + margin.
  T operator()(long j) const {
    const long k = j + margin_;
    if (k < 0 || k >= static_cast<long>(samples_.size())) throw std::out_of_range("SourceSampler: node outside window");
    return samples_[static_cast<std::size_t>(k)];
  }
  int margin() const { return margin_; }

 private:
  std::vector<T> samples_;
  int margin_;
};
using SourceSampler = BasicSourceSampler<double>;

/// Number of grid nodes beyond each wall that S_N needs.
int source_margin(const Scheme& scheme);

/// S_N f: s centred at x_i, plus b^i centred at x_0 for rows i <= tau(d) and
/// the mirrored correction centred at x_{N+1} for the last tau(d) rows.
/// Instantiated for double and long double.
template <class T>
std::vector<T> build_S_action(const Scheme& scheme, const BasicSourceSampler<T>& f, int N);

/// (fn(x_j)) for first <= j <= last.
template <class T = double>
std::vector<T> discretize(const std::type_identity_t<Function<T>>& fn, const Grid& grid, long first, long last) {
  std::vector<T> out;
  if (last < first) return out;
  out.reserve(static_cast<std::size_t>(last - first + 1));
  for (long j = first; j <= last; ++j) out.push_back(fn(grid.node<T>(j)));
  return out;
}

/// |(D_N u)_j - h^2 (S_N f)_j| for j = 1..N.
std::vector<double> consistency_residual(const Scheme& scheme, const RealFunction& u, const RealFunction& f, int N);

/// Coordinate-format text dump of a real banded matrix.
void write_matrix_market(std::ostream& os, const BandedMatrix<double>& m);

}  // namespace cfd
