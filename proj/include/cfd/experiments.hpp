#pragma once

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfd/assembly.hpp"
#include "cfd/stability.hpp"

namespace cfd {

/// Working precision of the convergence runs.
using Real = long double;
inline constexpr double kWorkingEpsilon = std::numeric_limits<Real>::epsilon();

/// u with u(0) = u(1) = 0 and its analytic source f = -u''.
struct ManufacturedProblem {
  std::string name;
  std::string formula;
  Function<Real> u;
  Function<Real> f;

  /// Throws std::logic_error unless the boundary values vanish and f agrees
  /// with a fourth-order central difference of -u'' at 11 interior points.
  void validate() const;
};

/// oscillatory, exp2x, sin, quadratic.
const ManufacturedProblem& manufactured_problem(std::string_view name);
std::vector<std::string> manufactured_problem_names();

enum class MuMode { n, n_minus_2 };
MuMode parse_mu_mode(std::string_view text);
int boundary_order(int n, MuMode mode);

/// (l, m) with l + m + 1 = n/2 and m - l in {0, 1}: n = 4 gives Numerov,
/// n = 10 gives (2, 2).
std::pair<int, int> optimal_indices_for_order(int n);

enum class RowStatus { ok, floor, resonant, singular };
std::string_view to_string(RowStatus s);

struct ConvergenceRow {
  int N = 0;
  double h = 0.0;
  double error = 0.0;        // ||u^N - u^{N,ex}||_inf, NaN when unsolved
  double min_abs_eig = 0.0;
  RowStatus status = RowStatus::ok;
};

struct OrderFit {
  double slope = 0.0;
  double residual = 0.0;  // 1 - R^2
  int rows_used = 0;
};

/// Least squares of log E against log h over rows with status ok.
/// Throws std::invalid_argument with fewer than three usable rows.
OrderFit fit_order(const std::vector<ConvergenceRow>& rows);
OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& error);

struct ConvergenceReport {
  std::string label;
  std::vector<ConvergenceRow> rows;
  std::optional<OrderFit> fit;  // empty when too few usable rows
};

inline constexpr double kFloorFactor = 100.0;

/// Solves D_N u = h^2 S_N f in working precision (refined banded LU) for
/// every N, in the order given. Rows below kFloorFactor * kWorkingEpsilon *
/// ||u||_inf are marked floor, rows with min |eigenvalue| < kResonanceThreshold
/// resonant; neither enters the fit.
ConvergenceReport run_convergence(const Scheme& scheme, const ManufacturedProblem& problem, const std::vector<int>& Ns,
                                  std::string label = {});

/// d = (2-6z, 4z-1, -z), i.e. P = X - z X^2.
RationalFormula quasi_resonant_formula(const Rational& z);

struct ResonanceComparison {
  Rational z;
  int n = 2;
  ConvergenceReport reference;   // d = a
  ConvergenceReport resonant;    // d = (X - z X^2)(a)
  StabilityReport reference_spectrum;
  StabilityReport resonant_spectrum;
  double min_eig_reference = 0.0;  // min over the sweep
  double min_eig_resonant = 0.0;
  double min_root_gap = 0.0;       // min over the sweep of min_k |1 - z mu_k|
};

/// Both schemes use the interior right-hand side of order n and mu = n.
ResonanceComparison run_resonance(const Rational& z, int n, const ManufacturedProblem& problem,
                                  const std::vector<int>& Ns);

struct RandomSample {
  int index = 0;
  std::uint64_t seed = 0;
  bool root_in_interval = false;  // R has a real root in [0, 4]
  double min_abs_eig = 0.0;       // over the N-list
  double h2_inv_norm_first = 0.0;
  double h2_inv_norm_last = 0.0;
};

struct RandomStabilitySummary {
  int l = 0;
  Field field = Field::real;
  std::uint64_t seed = 0;
  std::vector<int> Ns;
  std::vector<RandomSample> samples;
  int roots_in_interval = 0;
  double fraction() const { return samples.empty() ? 0.0 : static_cast<double>(roots_in_interval) / samples.size(); }
};

/// Seed of sample i, derived from the master seed.
std::uint64_t sample_seed(std::uint64_t master, int index);

/// M independent draws; results depend only on (l, field, M, seed, Ns).
RandomStabilitySummary run_random_stability(int l, Field field, int M, std::uint64_t seed, const std::vector<int>& Ns);

/// (p + q sqrt(r)) / s with r not a perfect square, q != 0, s != 0.
struct QuadraticIrrational {
  long p = 0, q = 1, r = 2, s = 1;

  /// Parses "p,q,r,s". Throws std::invalid_argument for rational or
  /// non-real values.
  static QuadraticIrrational parse(std::string_view text);
  double value() const;
  /// Partial quotients a_0, a_1, ... (exact integer recurrence).
  std::vector<long> continued_fraction(int terms) const;
  /// Denominators of the convergents up to max_q.
  std::vector<long> convergent_denominators(long max_q) const;
};

struct LiouvilleReport {
  QuadraticIrrational alpha;
  Rational lambda;                    // 4 sin^2(pi alpha / 2), as a dyadic rational
  RationalPolynomial P;               // X (X - lambda)
  RelativeStabilityReport relative;   // eta_N = h^-2
  std::vector<double> min_abs_eig;    // per N
  double min_q2_delta = 0.0;          // min over the N-list of (N+1)^2 delta_{N+1}
};

/// Geometric grid up to max_N merged with kq - 1, k = 1, 2, 3, for the
/// convergent denominators q of alpha: the N where the spectrum passes
/// closest to lambda.
std::vector<int> liouville_N_list(const QuadraticIrrational& alpha, int max_N);

/// Requires 0 < alpha < 1.
LiouvilleReport run_liouville(const QuadraticIrrational& alpha, const std::vector<int>& Ns);

/// "a,b,c" or "start:stop:step" pieces, comma separated.
std::vector<int> parse_N_list(std::string_view text);

/// 200, 235, ..., 500: nine irregularly spaced N.
std::vector<int> default_convergence_N_list();

// Output files.
nlohmann::json scheme_json(const Scheme& scheme, int l, int m);
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports);
void write_random_stability_csv(std::ostream& os, const RandomStabilitySummary& summary);
void write_relative_stability_csv(std::ostream& os, const LiouvilleReport& report);
void write_resonance_stability_csv(std::ostream& os, const ResonanceComparison& cmp);
/// gnuplot script: log-log E_N against N for every report in convergence.csv.
std::string convergence_plot_script(const std::vector<ConvergenceReport>& reports, const std::string& title);
/// gnuplot script over stability.csv; columns is a "using" spec such as "1:5".
std::string stability_plot_script(const std::string& title, const std::string& columns, const std::string& ylabel);

}  // namespace cfd
