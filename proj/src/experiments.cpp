#include "cfd/experiments.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "cfd/consistency.hpp"
#include "cfd/pade.hpp"
#include "cfd/solver.hpp"

namespace cfd {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// u = x (1 - x) g  =>  -u'' = 2 g - 2 (1 - 2x) g' - x (1 - x) g''.
ManufacturedProblem bubble_times(std::string name, std::string formula, Function<Real> g, Function<Real> dg,
                                 Function<Real> ddg) {
  ManufacturedProblem p;
  p.name = std::move(name);
  p.formula = std::move(formula);
  p.u = [g](Real x) { return x * (1 - x) * g(x); };
  p.f = [g, dg, ddg](Real x) { return 2 * g(x) - 2 * (1 - 2 * x) * dg(x) - x * (1 - x) * ddg(x); };
  return p;
}

std::vector<ManufacturedProblem> make_problems() {
  constexpr Real pi = std::numbers::pi_v<Real>;
  std::vector<ManufacturedProblem> out;
  out.push_back(bubble_times(
      "oscillatory", "x(1-x)exp(4cos(41x))", [](Real x) { return std::exp(4 * std::cos(41 * x)); },
      [](Real x) { return -164 * std::sin(41 * x) * std::exp(4 * std::cos(41 * x)); },
      [](Real x) {
        const Real s = std::sin(41 * x), c = std::cos(41 * x);
        return (164 * 164 * s * s - 6724 * c) * std::exp(4 * c);
      }));
  out.push_back(bubble_times(
      "exp2x", "x(1-x)exp(2x)", [](Real x) { return std::exp(2 * x); }, [](Real x) { return 2 * std::exp(2 * x); },
      [](Real x) { return 4 * std::exp(2 * x); }));
  ManufacturedProblem sine;
  sine.name = "sin";
  sine.formula = "sin(pi x)";
  sine.u = [](Real x) { return std::sin(pi * x); };
  sine.f = [](Real x) { return pi * pi * std::sin(pi * x); };
  out.push_back(sine);
  out.push_back(bubble_times(
      "quadratic", "x(1-x)", [](Real) { return Real(1); }, [](Real) { return Real(0); }, [](Real) { return Real(0); }));
  return out;
}

const std::vector<ManufacturedProblem>& problems() {
  static const std::vector<ManufacturedProblem> all = make_problems();
  return all;
}

template <class T>
double sup_norm(const std::vector<T>& v) {
  double m = 0.0;
  for (const T& x : v) m = std::max(m, static_cast<double>(std::abs(x)));
  return m;
}

RowStatus classify(double error, double u_norm, double min_eig) {
  if (min_eig < kResonanceThreshold) return RowStatus::resonant;
  if (error < kFloorFactor * kWorkingEpsilon * u_norm) return RowStatus::floor;
  return RowStatus::ok;
}

int parse_int(std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return v;
}

long parse_long(std::string_view text) {
  long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

// Row of a sweep, independent of the others.
// D is built from scale * d, which has integer weights.
ConvergenceRow convergence_row(const Scheme& scheme, const BandedMatrix<Real>& D, Real scale,
                               const ManufacturedProblem& problem, const RationalPolynomial& P, int N) {
  const Grid grid(N);
  ConvergenceRow row;
  row.N = N;
  row.h = grid.h;
  const auto lambda = eigenvalues_of_scheme(P, N);
  row.min_abs_eig = kInf;
  for (double v : lambda) row.min_abs_eig = std::min(row.min_abs_eig, std::abs(v));

  const BasicSourceSampler<Real> sampler(problem.f, grid, source_margin(scheme));
  auto rhs = build_S_action(scheme, sampler, N);
  const Real h = grid.node<Real>(1);
  for (auto& v : rhs) v *= scale * h * h;
  const auto exact = discretize<Real>(problem.u, grid, 1, N);
  try {
    const auto sol = solve_banded_refined(D, std::span<const Real>(rhs));
    double err = 0.0;
    for (int j = 0; j < N; ++j) err = std::max(err, static_cast<double>(std::abs(sol.x[j] - exact[j])));
    row.error = err;
    row.status = classify(err, sup_norm(exact), row.min_abs_eig);
  } catch (const SingularMatrixError&) {
    row.error = kNaN;
    row.status = row.min_abs_eig < kResonanceThreshold ? RowStatus::resonant : RowStatus::singular;
  }
  return row;
}

// Continued fraction of (P + sqrt(D)) / Q with Q | D - P^2, exact.
struct SurdState {
  mpz_class P, Q, D, root;  // root = floor(sqrt(D))

  mpz_class next_quotient() {
    mpz_class num = P + root;
    if (Q < 0) num += 1;
    mpz_class a;
    mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), Q.get_mpz_t());
    P = a * Q - P;
    Q = (D - P * P) / Q;
    return a;
  }
};

SurdState surd_of(const QuadraticIrrational& x) {
  SurdState st;
  const long sign = x.q > 0 ? 1 : -1;
  st.P = sign * x.p;
  st.Q = sign * x.s;
  st.D = mpz_class(x.q) * x.q * x.r;
  mpz_class rem = (st.D - st.P * st.P) % st.Q;
  if (rem != 0) {
    const mpz_class aq = abs(st.Q);
    st.P *= aq;
    st.D *= aq * aq;
    st.Q *= aq;
  }
  mpz_sqrt(st.root.get_mpz_t(), st.D.get_mpz_t());
  return st;
}

}  // namespace

void ManufacturedProblem::validate() const {
  for (Real x : {Real(0), Real(1)})
    if (std::abs(u(x)) > 1e-15L) throw std::logic_error(name + ": u does not vanish at x = " + fmt(static_cast<double>(x)));
  const Real step = 1e-4L;
  std::vector<Real> xs, fd, fv;
  for (int i = 1; i <= 11; ++i) {
    const Real x = i / Real(12);
    const Real d2 = (-u(x + 2 * step) + 16 * u(x + step) - 30 * u(x) + 16 * u(x - step) - u(x - 2 * step)) /
                    (12 * step * step);
    xs.push_back(x);
    fd.push_back(-d2);
    fv.push_back(f(x));
  }
  const Real tol = 1e-6L * std::max(1.0, sup_norm(fv));
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (std::abs(fd[i] - fv[i]) > tol)
      throw std::logic_error(name + ": f differs from -u'' at x = " + fmt(static_cast<double>(xs[i])) + " by " +
                             fmt(static_cast<double>(std::abs(fd[i] - fv[i]))));
}

const ManufacturedProblem& manufactured_problem(std::string_view name) {
  for (const auto& p : problems())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown problem '" + std::string(name) + "'");
}

std::vector<std::string> manufactured_problem_names() {
  std::vector<std::string> out;
  for (const auto& p : problems()) out.push_back(p.name);
  return out;
}

MuMode parse_mu_mode(std::string_view text) {
  if (text == "n") return MuMode::n;
  if (text == "n-2") return MuMode::n_minus_2;
  throw std::invalid_argument("mu mode must be 'n' or 'n-2', got '" + std::string(text) + "'");
}

int boundary_order(int n, MuMode mode) { return mode == MuMode::n ? n : n - 2; }

std::pair<int, int> optimal_indices_for_order(int n) {
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("order must be even and at least 2");
  const int total = n / 2 - 1;
  return {total / 2, total - total / 2};
}

std::string_view to_string(RowStatus s) {
  switch (s) {
    case RowStatus::ok: return "ok";
    case RowStatus::floor: return "floor";
    case RowStatus::resonant: return "resonant";
    case RowStatus::singular: return "singular";
  }
  return "?";
}

OrderFit fit_order(const std::vector<double>& h, const std::vector<double>& error) {
  if (h.size() != error.size()) throw std::invalid_argument("fit_order: size mismatch");
  if (h.size() < 3) throw std::invalid_argument("fit_order: needs at least 3 usable rows, got " + std::to_string(h.size()));
  const double n = static_cast<double>(h.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (!(h[i] > 0) || !(error[i] > 0)) throw std::invalid_argument("fit_order: h and E must be positive");
    sx += std::log(h[i]);
    sy += std::log(error[i]);
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double dx = std::log(h[i]) - mx, dy = std::log(error[i]) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0) throw std::invalid_argument("fit_order: all h equal");
  OrderFit fit;
  fit.slope = sxy / sxx;
  fit.rows_used = static_cast<int>(h.size());
  const double ss_res = std::max(0.0, syy - fit.slope * sxy);
  fit.residual = syy > 0 ? ss_res / syy : 0.0;
  return fit;
}

OrderFit fit_order(const std::vector<ConvergenceRow>& rows) {
  std::vector<double> h, e;
  for (const auto& r : rows)
    if (r.status == RowStatus::ok) {
      h.push_back(r.h);
      e.push_back(r.error);
    }
  return fit_order(h, e);
}

ConvergenceReport run_convergence(const Scheme& scheme, const ManufacturedProblem& problem, const std::vector<int>& Ns,
                                  std::string label) {
  ConvergenceReport report;
  report.label = std::move(label);
  report.rows.resize(Ns.size());
  const auto P = scheme.polynomial();
  // Integer weights keep D exact, so its rows still sum to zero in floating point.
  mpz_class lcm = 1;
  for (const auto& c : scheme.d.coeffs()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  const Real scale = to_long_double(Rational(lcm));
  const auto d = formula_cast<Real>(Rational(lcm) * scheme.d);
  for (int N : Ns)
    if (N < 2 * scheme.closure_rows() || N < 1)
      throw std::invalid_argument("run_convergence: N = " + std::to_string(N) + " too small for the scheme");
  const long count = static_cast<long>(Ns.size());
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < count; ++i) {
    const int N = Ns[static_cast<std::size_t>(i)];
    report.rows[static_cast<std::size_t>(i)] = convergence_row(scheme, build_D(d, N), scale, problem, P, N);
  }
  try {
    report.fit = fit_order(report.rows);
  } catch (const std::invalid_argument&) {
    report.fit.reset();
  }
  return report;
}

RationalFormula quasi_resonant_formula(const Rational& z) {
  return RationalFormula{Rational(2) - 6 * z, 4 * z - 1, Rational(-z)};
}

ResonanceComparison run_resonance(const Rational& z, int n, const ManufacturedProblem& problem,
                                  const std::vector<int>& Ns) {
  ResonanceComparison out;
  out.z = z;
  out.n = n;
  const auto base = Scheme::from_interior(base_stencil<Rational>(), n, n);
  const auto res = Scheme::from_interior(quasi_resonant_formula(z), n, n);
  out.reference = run_convergence(base, problem, Ns, "reference");
  out.resonant = run_convergence(res, problem, Ns, "resonant");
  out.reference_spectrum = stability_report(base.polynomial(), Ns, 0);
  out.resonant_spectrum = stability_report(res.polynomial(), Ns, 1);
  auto sweep_min = [](const StabilityReport& r) {
    double m = kInf;
    for (const auto& row : r.rows) m = std::min(m, row.min_abs_eig);
    return m;
  };
  out.min_eig_reference = sweep_min(out.reference_spectrum);
  out.min_eig_resonant = sweep_min(out.resonant_spectrum);
  const double zd = to_double(z);
  out.min_root_gap = kInf;
  for (int N : Ns) {
    const double h = 1.0 / (N + 1);
    for (int k = 1; k <= N; ++k) {
      const double s = std::sin(std::numbers::pi * k * h / 2);
      out.min_root_gap = std::min(out.min_root_gap, std::abs(1 - zd * 4 * s * s));
    }
  }
  return out;
}

std::uint64_t sample_seed(std::uint64_t master, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

RandomStabilitySummary run_random_stability(int l, Field field, int M, std::uint64_t seed, const std::vector<int>& Ns) {
  if (M < 1) throw std::invalid_argument("random stability: M must be at least 1");
  if (Ns.empty()) throw std::invalid_argument("random stability: empty N-list");
  RandomStabilitySummary summary;
  summary.l = l;
  summary.field = field;
  summary.seed = seed;
  summary.Ns = Ns;
  summary.samples.resize(static_cast<std::size_t>(M));
  const int first = Ns.front(), last = Ns.back();
#pragma omp parallel for schedule(dynamic, 4)
  for (int i = 0; i < M; ++i) {
    RandomSample s;
    s.index = i;
    s.seed = sample_seed(seed, i);
    const auto rf = random_formula(l, field, s.seed);
    s.root_in_interval = !spectral_roots(rf.R).empty();
    s.min_abs_eig = kInf;
    for (int N : Ns)
      for (const auto& v : eigenvalues_of_scheme(rf.P, N)) s.min_abs_eig = std::min(s.min_abs_eig, std::abs(v));
    auto scaled_norm = [&](int N) {
      try {
        const double h = 1.0 / (N + 1);
        return h * h * inverse_sup_norm(rf.P, N);
      } catch (const ResonanceError&) {
        return kInf;
      }
    };
    s.h2_inv_norm_first = scaled_norm(first);
    s.h2_inv_norm_last = scaled_norm(last);
    summary.samples[static_cast<std::size_t>(i)] = s;
  }
  for (const auto& s : summary.samples) summary.roots_in_interval += s.root_in_interval ? 1 : 0;
  return summary;
}

QuadraticIrrational QuadraticIrrational::parse(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 4) throw std::invalid_argument("alpha must be given as p,q,r,s for (p + q sqrt(r)) / s");
  QuadraticIrrational x{parse_long(parts[0]), parse_long(parts[1]), parse_long(parts[2]), parse_long(parts[3])};
  if (x.s == 0) throw std::invalid_argument("alpha: s must be nonzero");
  if (x.r < 0) throw std::invalid_argument("alpha: r must be non-negative for a real number");
  if (x.q == 0) throw std::invalid_argument("alpha: q = 0 gives a rational number");
  mpz_class root;
  mpz_class r(x.r);
  mpz_sqrt(root.get_mpz_t(), r.get_mpz_t());
  if (root * root == r) throw std::invalid_argument("alpha: r is a perfect square, so alpha is rational");
  return x;
}

double QuadraticIrrational::value() const {
  return (static_cast<double>(p) + static_cast<double>(q) * std::sqrt(static_cast<double>(r))) / static_cast<double>(s);
}

std::vector<long> QuadraticIrrational::continued_fraction(int terms) const {
  auto st = surd_of(*this);
  std::vector<long> out;
  for (int i = 0; i < terms; ++i) {
    const mpz_class a = st.next_quotient();
    if (!a.fits_slong_p()) throw std::overflow_error("continued fraction term out of range");
    out.push_back(a.get_si());
  }
  return out;
}

std::vector<long> QuadraticIrrational::convergent_denominators(long max_q) const {
  auto st = surd_of(*this);
  std::vector<long> out;
  mpz_class q_prev = 0, q_cur = 1;
  st.next_quotient();  // a_0 does not change denominators
  while (true) {
    const mpz_class a = st.next_quotient();
    const mpz_class q_next = a * q_cur + q_prev;
    if (q_next > max_q) break;
    out.push_back(q_next.get_si());
    q_prev = q_cur;
    q_cur = q_next;
  }
  return out;
}

std::vector<int> liouville_N_list(const QuadraticIrrational& alpha, int max_N) {
  std::set<int> Ns;
  for (double N = 8; N <= max_N; N *= 1.25) Ns.insert(static_cast<int>(std::lround(N)));
  Ns.insert(max_N);
  for (long q : alpha.convergent_denominators(static_cast<long>(max_N) + 1))
    for (long k = 1; k <= 3; ++k)
      if (k * q - 1 >= 2 && k * q - 1 <= max_N) Ns.insert(static_cast<int>(k * q - 1));
  return {Ns.begin(), Ns.end()};
}

LiouvilleReport run_liouville(const QuadraticIrrational& alpha, const std::vector<int>& Ns) {
  const double a = alpha.value();
  if (!(a > 0 && a < 1)) throw std::invalid_argument("alpha must lie in (0, 1), got " + fmt(a));
  LiouvilleReport rep;
  rep.alpha = alpha;
  const double s = std::sin(std::numbers::pi * a / 2);
  rep.lambda = exact_rational(4 * s * s);
  const auto X = RationalPolynomial::x();
  rep.P = X * (X - RationalPolynomial::constant(rep.lambda));
  rep.relative = relative_stability_probe(rep.P, Ns, eta_h_minus_2);
  for (int N : Ns) {
    double m = kInf;
    for (double v : eigenvalues_of_scheme(rep.P, N)) m = std::min(m, std::abs(v));
    rep.min_abs_eig.push_back(m);
  }
  const auto roots = spectral_roots(X - RationalPolynomial::constant(rep.lambda));
  rep.min_q2_delta = kInf;
  for (int N : Ns) {
    const double q = N + 1;
    rep.min_q2_delta = std::min(rep.min_q2_delta, q * q * delta_q(roots, N + 1));
  }
  return rep;
}

std::vector<int> parse_N_list(std::string_view text) {
  std::vector<int> out;
  for (auto piece : split(text, ',')) {
    if (piece.empty()) throw std::invalid_argument("N-list: empty entry");
    const auto range = split(piece, ':');
    if (range.size() == 1) {
      out.push_back(parse_int(piece));
    } else if (range.size() == 3) {
      const int lo = parse_int(range[0]), hi = parse_int(range[1]), step = parse_int(range[2]);
      if (step <= 0 || hi < lo) throw std::invalid_argument("N-list: bad range '" + std::string(piece) + "'");
      for (int N = lo; N <= hi; N += step) out.push_back(N);
    } else {
      throw std::invalid_argument("N-list: use start:stop:step, got '" + std::string(piece) + "'");
    }
  }
  for (int N : out)
    if (N < 1) throw std::invalid_argument("N-list: N must be positive");
  return out;
}

std::vector<int> default_convergence_N_list() { return {200, 235, 271, 300, 341, 372, 401, 447, 500}; }

nlohmann::json scheme_json(const Scheme& scheme, int l, int m) {
  nlohmann::json j;
  j["l"] = l;
  j["m"] = m;
  j["n"] = scheme.n;
  j["mu"] = scheme.mu;
  j["d"] = to_json(scheme.d);
  j["s"] = to_json(scheme.s);
  auto b = nlohmann::json::array();
  for (const auto& c : scheme.boundary) b.push_back(to_json(c));
  j["boundary"] = b;
  const auto pq = pade(l, m);
  j["R"] = to_json(pq.R);
  j["Q"] = to_json(pq.Q);
  return j;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceReport>& reports) {
  os << "scheme,N,h,E_N,min_abs_eig,status\n";
  for (const auto& rep : reports)
    for (const auto& r : rep.rows)
      os << rep.label << ',' << r.N << ',' << fmt(r.h) << ',' << fmt(r.error) << ',' << fmt(r.min_abs_eig) << ','
         << to_string(r.status) << '\n';
}

void write_random_stability_csv(std::ostream& os, const RandomStabilitySummary& summary) {
  os << "sample,seed,root_in_0_4,min_abs_eig,h2_inv_norm_N" << summary.Ns.front() << ",h2_inv_norm_N"
     << summary.Ns.back() << '\n';
  for (const auto& s : summary.samples)
    os << s.index << ',' << s.seed << ',' << (s.root_in_interval ? 1 : 0) << ',' << fmt(s.min_abs_eig) << ','
       << fmt(s.h2_inv_norm_first) << ',' << fmt(s.h2_inv_norm_last) << '\n';
}

void write_relative_stability_csv(std::ostream& os, const LiouvilleReport& report) {
  os << "N,h,eta_N,inv_norm,c_N,min_abs_eig,q2_delta_q\n";
  const auto roots = spectral_roots(RationalPolynomial::x() - RationalPolynomial::constant(report.lambda));
  for (std::size_t i = 0; i < report.relative.rows.size(); ++i) {
    const auto& r = report.relative.rows[i];
    const double q = r.N + 1;
    os << r.N << ',' << fmt(1.0 / q) << ',' << fmt(r.eta) << ',' << fmt(r.inverse_norm) << ',' << fmt(r.constant) << ','
       << fmt(report.min_abs_eig[i]) << ',' << fmt(q * q * delta_q(roots, r.N + 1)) << '\n';
  }
}

void write_resonance_stability_csv(std::ostream& os, const ResonanceComparison& cmp) {
  os << "scheme,N,h,min_abs_eig,argmin_k,resonant_flag\n";
  for (const auto* rep : {&cmp.reference_spectrum, &cmp.resonant_spectrum}) {
    const char* label = rep == &cmp.reference_spectrum ? "reference" : "resonant";
    for (const auto& r : rep->rows)
      os << label << ',' << r.N << ',' << fmt(r.h) << ',' << fmt(r.min_abs_eig) << ',' << r.argmin_k << ','
         << (r.resonant ? 1 : 0) << '\n';
  }
}

std::string convergence_plot_script(const std::vector<ConvergenceReport>& reports, const std::string& title) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set xlabel 'N'\n"
     << "set ylabel 'E_N'\n"
     << "set title '" << title << "'\n"
     << "set key outside\n"
     << "plot ";
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i) os << ", \\\n     ";
    os << "'convergence.csv' skip 1 using 2:(strcol(1) eq '" << reports[i].label << "' ? $4 : 1/0) with linespoints title '"
       << reports[i].label << "'";
  }
  os << "\npause -1\n";
  return os.str();
}

std::string stability_plot_script(const std::string& title, const std::string& columns, const std::string& ylabel) {
  std::ostringstream os;
  os << "set datafile separator ','\n"
     << "set logscale xy\n"
     << "set ylabel '" << ylabel << "'\n"
     << "set title '" << title << "'\n"
     << "plot 'stability.csv' skip 1 using " << columns << " with points title '" << ylabel << "'\n"
     << "pause -1\n";
  return os.str();
}

}  // namespace cfd
