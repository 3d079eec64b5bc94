#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "cfd/formula.hpp"
#include "cfd/kernels.hpp"
#include "cfd/polynomial.hpp"
#include "cfd/sturm.hpp"

namespace cfd {

inline constexpr int kMaxInverseNormN = 2048;

/// Roots of a real polynomial in [0, 4], by exact Sturm bisection.
RootSet spectral_roots(const RationalPolynomial& P);
/// Float coefficients are converted exactly to dyadic rationals first.
RootSet spectral_roots(const Polynomial<double>& P);
/// A complex polynomial has a real root iff gcd(Re P, Im P) does.
RootSet spectral_roots(const Polynomial<Complex>& P);

/// min over lambda in roots, 1 <= p <= q-1 of |lambda - 4 sin^2(pi p / (2q))|.
/// Requires a nonempty root set and q >= 2.
double delta_q(const RootSet& roots, int q);

/// ||P(A_N)^{-1}||_inf, exact up to rounding (column solves). Throws
/// ResonanceError when an eigenvalue is zero to rounding and
/// std::invalid_argument beyond max_N.
template <class T>
double inverse_sup_norm(const Polynomial<T>& P, int N, kernels::Backend backend = kernels::Backend::parallel,
                        int max_N = kMaxInverseNormN);
double inverse_sup_norm(const RationalPolynomial& P, int N, kernels::Backend backend = kernels::Backend::parallel,
                        int max_N = kMaxInverseNormN);

/// Weights of the strong-stability norm: h^-2 on rows l < j < N+1-l, 1 elsewhere.
std::vector<double> strong_weights(int N, int l);

/// Largest c with c ||v||_inf <= max_j w_j |(P(A_N) v)_j| for all v.
/// The extremal sign vectors w_j = sgn(M_ij) / w_j of M = P(A_N)^{-1} attain
/// it, so the value equals 1 / max_i sum_j |M_ij| / w_j.
template <class T>
double strong_stability_probe(const Polynomial<T>& P, int N, int l,
                              kernels::Backend backend = kernels::Backend::parallel);
double strong_stability_probe(const RationalPolynomial& P, int N, int l,
                              kernels::Backend backend = kernels::Backend::parallel);

/// Same ratio, restricted to basis vectors e_j. Never below the exact value.
double strong_stability_basis_probe(const RationalPolynomial& P, int N, int l);

struct RelativeStabilityRow {
  int N = 0;
  double eta = 0.0;
  double inverse_norm = 0.0;  // +inf at an exact resonance
  double constant = 0.0;      // eta_N / ||P(A_N)^{-1}||_inf, 0 at a resonance
};

struct RelativeStabilityReport {
  std::vector<RelativeStabilityRow> rows;
  double infimum = 0.0;
  int argmin_N = 0;
};

/// c_N = eta_N / ||P(A_N)^{-1}||_inf is the best constant in
/// c ||v|| <= eta_N ||P(A_N) v||; reports every N and the infimum.
RelativeStabilityReport relative_stability_probe(const RationalPolynomial& P, const std::vector<int>& Ns,
                                                 const std::function<double(int)>& eta);

double eta_h_minus_2(int N);
double eta_log_corrected(int N);

enum class Field { real, complex };

/// Random member of the zero-mean class with tau(d) <= l+1: R has i.i.d.
/// standard normal coefficients (complex: independent parts), P = X R and
/// d = P(a). Deterministic in (l, field, seed).
struct RandomFormula {
  Field field = Field::real;
  Polynomial<Complex> R;
  Polynomial<Complex> P;
  SymmetricFormula<Complex> d;
};
RandomFormula random_formula(int l, Field field, std::uint64_t seed);

/// One row per N of a stability sweep.
struct StabilityRow {
  int N = 0;
  double h = 0.0;
  double min_abs_eig = 0.0;
  int argmin_k = 0;
  double h2_inv_norm = 0.0;  // +inf when not invertible
  double strong_c = 0.0;
  double delta = 0.0;        // delta_{N+1}; NaN when P has no root in [0, 4]
  bool invertible = true;
  bool resonant = false;     // min |eigenvalue| below the resonance threshold
};

struct StabilityReport {
  std::vector<StabilityRow> rows;
  int l = 0;
};

inline constexpr double kResonanceThreshold = 1e-8;

/// Sweeps N, filling every column. Rows come back in the order of Ns.
template <class T>
StabilityReport stability_report(const Polynomial<T>& P, const std::vector<int>& Ns, int l,
                                 double resonance_threshold = kResonanceThreshold);
StabilityReport stability_report(const RationalPolynomial& P, const std::vector<int>& Ns, int l,
                                 double resonance_threshold = kResonanceThreshold);

/// CSV: N,h,min_abs_eig,h2_inv_norm,strong_c_l,delta_q,resonant_flag
void write_csv(std::ostream& os, const StabilityReport& report);

}  // namespace cfd
