#include "cfd/assembly.hpp"

#include <ostream>
#include <string>

#include "cfd/consistency.hpp"
#include "cfd/pade.hpp"

namespace cfd {

Grid::Grid(int n) : N(n), h(1.0 / (n + 1)), h_exact(1, n + 1) {
  if (n <= 0) throw std::invalid_argument("Grid: N must be positive");
}

Scheme Scheme::build(RationalFormula d, RationalFormula s, int n, int mu) {
  if (n <= 0 || n % 2 != 0) throw std::invalid_argument("Scheme: n must be even and positive");
  if (mu != n && mu != n - 2) throw std::invalid_argument("Scheme: mu must be n or n-2");
  const auto ord = order_of_consistency(d, s);
  if (!ord.reaches(n)) {
    throw std::invalid_argument("Scheme: (d, s) is not consistent of order " + std::to_string(n));
  }
  Scheme out;
  out.boundary = solve_boundary_corrections(d, mu);
  out.d = std::move(d);
  out.s = std::move(s);
  out.n = n;
  out.mu = mu;
  return out;
}

Scheme Scheme::from_interior(RationalFormula d, int n, int mu) {
  auto s = solve_interior_rhs(d, n);
  return build(std::move(d), std::move(s), n, mu);
}

Scheme Scheme::optimal(int l, int m, int mu) {
  auto o = optimal_formulas(l, m);
  return build(std::move(o.d), std::move(o.s), o.order(), mu);
}

RationalPolynomial Scheme::polynomial() const { return formula_to_poly(d); }

int source_margin(const Scheme& scheme) {
  int margin = std::max(scheme.s.radius_or_minus_one(), 0);
  for (const auto& b : scheme.boundary) margin = std::max(margin, b.radius_or_minus_one());
  return margin;
}

template <class T>
std::vector<T> build_S_action(const Scheme& scheme, const BasicSourceSampler<T>& f, int N) {
  const int rows = scheme.closure_rows();
  if (N < 2 * rows) {
    throw std::invalid_argument("build_S_action: N = " + std::to_string(N) + " too small for " +
                                std::to_string(rows) + " closure rows per wall");
  }
  const auto s = formula_cast<T>(scheme.s);
  std::vector<SymmetricFormula<T>> b;
  for (const auto& bi : scheme.boundary) b.push_back(formula_cast<T>(bi));

  auto centred = [&f](const SymmetricFormula<T>& w, long centre) {
    T acc = 0;
    const long t = w.radius_or_minus_one();
    for (long k = -t; k <= t; ++k) acc += w[k] * f(centre + k);
    return acc;
  };

  std::vector<T> out(static_cast<std::size_t>(N));
  for (long i = 1; i <= N; ++i) {
    T acc = centred(s, i);
    if (i <= rows) acc += centred(b[static_cast<std::size_t>(i - 1)], 0);
    if (N + 1 - i <= rows) acc += centred(b[static_cast<std::size_t>(N - i)], N + 1);
    out[static_cast<std::size_t>(i - 1)] = acc;
  }
  return out;
}

template std::vector<double> build_S_action(const Scheme&, const BasicSourceSampler<double>&, int);
template std::vector<long double> build_S_action(const Scheme&, const BasicSourceSampler<long double>&, int);

std::vector<double> consistency_residual(const Scheme& scheme, const RealFunction& u, const RealFunction& f, int N) {
  const Grid grid(N);
  const auto v = discretize(u, grid, 1, N);
  const auto dv = apply_D(formula_cast<double>(scheme.d), std::span<const double>(v));
  const SourceSampler sampler(f, grid, source_margin(scheme));
  const auto sf = build_S_action(scheme, sampler, N);
  std::vector<double> out(static_cast<std::size_t>(N));
  for (int j = 0; j < N; ++j) out[j] = std::abs(dv[j] - grid.h * grid.h * sf[j]);
  return out;
}

void write_matrix_market(std::ostream& os, const BandedMatrix<double>& m) {
  std::size_t nnz = 0;
  for (int i = 0; i < m.size(); ++i)
    for (int j = std::max(0, i - m.bandwidth()); j <= std::min(m.size() - 1, i + m.bandwidth()); ++j)
      if (m.at(i, j) != 0.0) ++nnz;
  os << "%%MatrixMarket matrix coordinate real general\n";
  os << m.size() << ' ' << m.size() << ' ' << nnz << '\n';
  os.precision(17);
  for (int i = 0; i < m.size(); ++i)
    for (int j = std::max(0, i - m.bandwidth()); j <= std::min(m.size() - 1, i + m.bandwidth()); ++j)
      if (m.at(i, j) != 0.0) os << i + 1 << ' ' << j + 1 << ' ' << m.at(i, j) << '\n';
}

}  // namespace cfd
