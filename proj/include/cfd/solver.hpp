#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cfd/assembly.hpp"
#include "cfd/polynomial.hpp"

namespace cfd {

/// LU met a pivot that is zero to working precision.
class SingularMatrixError : public std::runtime_error {
 public:
  SingularMatrixError(int row, double pivot);
  int row;       // 1-based
  double pivot;  // |U_row,row|
};

/// An eigenvalue P(4 sin^2(pi k h / 2)) vanished (to rounding).
class ResonanceError : public std::runtime_error {
 public:
  ResonanceError(int k, double eigenvalue);
  int k;
  double eigenvalue;
};

template <class T>
struct BandedSolution {
  std::vector<T> x;
  double residual = 0.0;           // ||D x - rhs||_inf
  double relative_residual = 0.0;  // residual / (||D||_inf ||x||_inf + ||rhs||_inf)
  double min_pivot = 0.0;
};

/// Banded LU with partial pivoting (LAPACK gbtrf). Throws SingularMatrixError
/// when a pivot drops below N * eps * ||D||_inf.
template <class T>
class BandedLU {
 public:
  explicit BandedLU(const BandedMatrix<T>& D);
  std::vector<T> solve(std::span<const T> rhs) const;
  double norm() const { return norm_; }
  double min_pivot() const { return min_pivot_; }

 private:
  int n_, bw_, ldab_;
  std::vector<T> ab_;
  std::vector<int> ipiv_;
  double norm_ = 0.0;
  double min_pivot_ = 0.0;
};

template <class T>
BandedSolution<T> solve_banded(const BandedMatrix<T>& D, std::span<const T> rhs);

/// Double LU plus iterative refinement with residuals accumulated in quad
/// precision; converges to the long double solution while cond(D) * eps < 1.
BandedSolution<long double> solve_banded_refined(const BandedMatrix<long double>& D, std::span<const long double> rhs,
                                                 int max_steps = 6);

/// P(4 sin^2(pi k h / 2)), k = 1..N.
std::vector<double> eigenvalues_of_scheme(const RationalPolynomial& P, int N);
template <class T>
std::vector<T> eigenvalues_of_scheme(const Polynomial<T>& P, int N);

/// Bound on the rounding error of evaluating P anywhere in [0, 4].
template <class T>
double eigenvalue_noise_floor(const Polynomial<T>& P);

/// P(A_N)^{-1} rhs through the sine basis. Throws ResonanceError naming the
/// first k whose eigenvalue is below the evaluation noise floor.
template <class T>
std::vector<T> solve_spectral(const Polynomial<T>& P, std::span<const T> rhs, int N);
std::vector<double> solve_spectral(const RationalPolynomial& P, std::span<const double> rhs, int N);

}  // namespace cfd
