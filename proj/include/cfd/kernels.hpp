#pragma once

#include <memory>
#include <span>
#include <vector>

#include "cfd/formula.hpp"
#include "cfd/rational.hpp"

// Hot loops, each in two flavours: a plain serial reference kept for testing
// and an OpenMP (and, for the sine transform, FFTW) version used by the
// experiments. Both must agree to rounding.
namespace cfd::kernels {

enum class Backend { serial, parallel };

/// D_N(d) v by odd extension. Serial version is the reference.
std::vector<double> apply_D_serial(const SymmetricFormula<double>& d, std::span<const double> v);
std::vector<double> apply_D_parallel(const SymmetricFormula<double>& d, std::span<const double> v);

/// DST-I, unnormalised: Y_k = 2 sum_j X_j sin(pi (j+1)(k+1)/(n+1)).
/// Applying it twice multiplies by 2(n+1).
std::vector<double> dst1_naive_serial(std::span<const double> x);
std::vector<double> dst1_naive_parallel(std::span<const double> x);

/// FFTW-backed DST-I of a fixed size. Planning is serialised internally;
/// execute() may be called concurrently from several threads.
class SineTransform {
 public:
  explicit SineTransform(int n);
  ~SineTransform();
  SineTransform(const SineTransform&) = delete;
  SineTransform& operator=(const SineTransform&) = delete;

  int size() const { return n_; }
  void execute(const double* in, double* out) const;
  std::vector<double> operator()(std::span<const double> x) const;

 private:
  struct Plan;
  int n_;
  std::unique_ptr<Plan> plan_;
};

/// Row sums r_i = sum_j |M_ij| w_j of M = P(A_N)^{-1}, given the eigenvalues
/// lambda_k = P(4 sin^2(pi k h / 2)), k = 1..N, and column weights w
/// (empty means all ones). Uses M = 2h sum_k e_k e_k^T / lambda_k with
/// (e_k)_j = sin(pi k h j), one column at a time. Requires lambda_k != 0.
/// serial: naive O(N^3) reference. parallel: FFTW columns under OpenMP.
template <class T>
std::vector<double> inverse_abs_row_sums(std::span<const T> eigenvalues, std::span<const double> weights,
                                         Backend backend);

}  // namespace cfd::kernels
