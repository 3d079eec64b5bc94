#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "cfd/polynomial.hpp"
#include "cfd/rational.hpp"

namespace cfd {

/// Finitely supported even sequence b with b_{-j} = b_j, stored as
/// (b_0, ..., b_T). The representation is trimmed after every operation, so
/// the last stored coefficient is nonzero; the zero formula stores nothing and
/// has no stencil radius.
template <class T>
class SymmetricFormula {
 public:
  SymmetricFormula() = default;
  explicit SymmetricFormula(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  SymmetricFormula(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  /// The unit 1_{0}.
  static SymmetricFormula identity() { return SymmetricFormula(std::vector<T>{from_int<T>(1)}); }

  /// tau(b): largest index with a nonzero weight; empty for the zero formula.
  std::optional<int> radius() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<int>(coeffs_.size()) - 1;
  }
  /// Radius with the zero formula mapped to -1, for loop bounds only.
  int radius_or_minus_one() const { return static_cast<int>(coeffs_.size()) - 1; }

  bool is_zero() const { return coeffs_.empty(); }
  std::span<const T> coeffs() const { return coeffs_; }

  /// b_j for any j in Z.
  T operator[](long j) const {
    const std::size_t k = static_cast<std::size_t>(j < 0 ? -j : j);
    return k < coeffs_.size() ? coeffs_[k] : from_int<T>(0);
  }

  friend SymmetricFormula operator+(const SymmetricFormula& a, const SymmetricFormula& b) {
    std::vector<T> out(std::max(a.coeffs_.size(), b.coeffs_.size()), from_int<T>(0));
    for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
    return SymmetricFormula(std::move(out));
  }
  friend SymmetricFormula operator-(const SymmetricFormula& a, const SymmetricFormula& b) {
    return a + from_int<T>(-1) * b;
  }
  friend SymmetricFormula operator*(const T& c, const SymmetricFormula& b) {
    std::vector<T> out(b.coeffs_);
    for (auto& v : out) v = c * v;
    return SymmetricFormula(std::move(out));
  }
  friend bool operator==(const SymmetricFormula& a, const SymmetricFormula& b) { return a.coeffs_ == b.coeffs_; }

 private:
  void trim() {
    while (!coeffs_.empty() && cfd::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalFormula = SymmetricFormula<Rational>;

template <class To, class From>
SymmetricFormula<To> formula_cast(const SymmetricFormula<From>& f) {
  std::vector<To> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    if constexpr (is_rational_v<From> && !is_rational_v<To>) {
      out.push_back(from_rational<To>(c));
    } else {
      out.push_back(To(c));
    }
  }
  return SymmetricFormula<To>(std::move(out));
}

/// a = 2*1_{0} - 1_{-1,1}, the three-point second difference.
template <class T>
SymmetricFormula<T> base_stencil() {
  return SymmetricFormula<T>{from_int<T>(2), from_int<T>(-1)};
}

/// (f * g)_i = sum_j f_j g_{i-j}.
template <class T>
SymmetricFormula<T> convolve(const SymmetricFormula<T>& f, const SymmetricFormula<T>& g) {
  if (f.is_zero() || g.is_zero()) return {};
  const long tf = *f.radius();
  const long tg = *g.radius();
  std::vector<T> out(static_cast<std::size_t>(tf + tg + 1), from_int<T>(0));
  for (long i = 0; i <= tf + tg; ++i) {
    T acc = from_int<T>(0);
    for (long j = -tf; j <= tf; ++j) {
      const long k = i - j;
      if (k < -tg || k > tg) continue;
      acc += f[j] * g[k];
    }
    out[static_cast<std::size_t>(i)] = acc;
  }
  return SymmetricFormula<T>(std::move(out));
}

/// a^{*n}; the weight on 1_{+-k} is (-1)^k (2n)! / ((n+k)! (n-k)!).
RationalFormula a_power_exact(int n);

template <class T>
SymmetricFormula<T> a_power(int n) {
  return formula_cast<T>(a_power_exact(n));
}

/// P(a) = sum_k P_k a^{*k}, by Horner's rule in the convolution algebra.
template <class T>
SymmetricFormula<T> eval_poly_at_a(const Polynomial<T>& p) {
  const auto a = base_stencil<T>();
  SymmetricFormula<T> acc;
  const auto c = p.coeffs();
  for (std::size_t k = c.size(); k-- > 0;) {
    acc = convolve(acc, a) + SymmetricFormula<T>{c[k]};
  }
  return acc;
}

/// Inverse of eval_poly_at_a. The leading weight of a^{*n} is (-1)^n, so the
/// coefficients are peeled off from the top of the stencil downwards.
template <class T>
Polynomial<T> formula_to_poly(const SymmetricFormula<T>& d) {
  if (d.is_zero()) return {};
  const int top = *d.radius();
  std::vector<T> p(static_cast<std::size_t>(top + 1), from_int<T>(0));
  SymmetricFormula<T> rest = d;
  for (int k = top; k >= 0; --k) {
    const T coeff = (k % 2 == 0 ? from_int<T>(1) : from_int<T>(-1)) * rest[k];
    p[static_cast<std::size_t>(k)] = coeff;
    if (!cfd::is_zero(coeff)) rest = rest - coeff * a_power<T>(k);
  }
  return Polynomial<T>(std::move(p));
}

/// sum_{j in Z} d_j j^k; exactly zero for odd k.
template <class T>
T moment(const SymmetricFormula<T>& d, int k) {
  T acc = from_int<T>(0);
  if (k % 2 == 1) return acc;
  const auto c = d.coeffs();
  if (k == 0 && !c.empty()) acc = c[0];
  for (std::size_t j = 1; j < c.size(); ++j) {
    T jk = from_int<T>(1);
    for (int e = 0; e < k; ++e) jk = jk * from_int<T>(static_cast<long>(j));
    acc += from_int<T>(2) * c[j] * jk;
  }
  return acc;
}

// JSON: {"coeffs": ["2/1", "-1/1"]} for rationals, decimal literals for reals.
nlohmann::json to_json(const RationalFormula& f);
nlohmann::json to_json(const SymmetricFormula<double>& f);
nlohmann::json to_json(const RationalPolynomial& p);
RationalFormula rational_formula_from_json(const nlohmann::json& j);
SymmetricFormula<double> real_formula_from_json(const nlohmann::json& j);

}  // namespace cfd
