#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cfd/rational.hpp"

namespace cfd {

/// Dense univariate polynomial, coefficients indexed by degree.
///
/// Kept canonical: the leading coefficient is nonzero unless the polynomial
/// is zero, in which case the coefficient list is empty and degree() is
/// empty as well.
template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) { trim(); }
  Polynomial(std::initializer_list<T> coeffs) : coeffs_(coeffs) { trim(); }

  static Polynomial constant(T c) { return Polynomial(std::vector<T>{std::move(c)}); }
  static Polynomial x() { return Polynomial(std::vector<T>{from_int<T>(0), from_int<T>(1)}); }

  std::optional<int> degree() const {
    if (coeffs_.empty()) return std::nullopt;
    return static_cast<int>(coeffs_.size()) - 1;
  }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const T> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  T operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : from_int<T>(0); }
  T leading() const { return coeffs_.empty() ? from_int<T>(0) : coeffs_.back(); }

  template <class U>
  U operator()(const U& x) const {
    U acc = U(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
      if constexpr (is_rational_v<T> && !is_rational_v<U>) {
        acc = acc * x + U(it->get_d());
      } else {
        acc = acc * x + U(*it);
      }
    }
    return acc;
  }

  Polynomial derivative() const {
    std::vector<T> out;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) out.push_back(coeffs_[k] * from_int<T>(static_cast<long>(k)));
    return Polynomial(std::move(out));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> out(std::max(a.size(), b.size()), from_int<T>(0));
    for (std::size_t k = 0; k < a.size(); ++k) out[k] += a.coeffs_[k];
    for (std::size_t k = 0; k < b.size(); ++k) out[k] += b.coeffs_[k];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a) {
    std::vector<T> out(a.coeffs_);
    for (auto& c : out) c = -c;
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> out(a.size() + b.size() - 1, from_int<T>(0));
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const T& c, const Polynomial& p) {
    std::vector<T> out(p.coeffs_);
    for (auto& v : out) v = c * v;
    return Polynomial(std::move(out));
  }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division over a field; throws on division by zero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const {
    if (divisor.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<T> rem(coeffs_);
    const std::size_t dn = divisor.size();
    if (rem.size() < dn) return {Polynomial(), *this};
    std::vector<T> quot(rem.size() - dn + 1, from_int<T>(0));
    const T lead = divisor.leading();
    for (std::size_t shift = quot.size(); shift-- > 0;) {
      T factor = rem[shift + dn - 1] / lead;
      quot[shift] = factor;
      for (std::size_t j = 0; j < dn; ++j) rem[shift + j] -= factor * divisor.coeffs_[j];
    }
    rem.resize(dn - 1);
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  /// Substitutes c*X^k for X.
  Polynomial compose_monomial(const T& c, int k) const {
    std::vector<T> out(coeffs_.empty() ? 0 : (coeffs_.size() - 1) * k + 1, from_int<T>(0));
    T power = from_int<T>(1);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
      out[i * k] = coeffs_[i] * power;
      power = power * c;
    }
    return Polynomial(std::move(out));
  }

 private:
  void trim() {
    while (!coeffs_.empty() && cfd::is_zero(coeffs_.back())) coeffs_.pop_back();
  }

  std::vector<T> coeffs_;
};

using RationalPolynomial = Polynomial<Rational>;

/// Monic gcd over a field.
template <class T>
Polynomial<T> gcd(Polynomial<T> a, Polynomial<T> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return (from_int<T>(1) / a.leading()) * a;
}

template <class To, class From>
Polynomial<To> polynomial_cast(const Polynomial<From>& p) {
  std::vector<To> out;
  out.reserve(p.size());
  for (const auto& c : p.coeffs()) {
    if constexpr (is_rational_v<From> && !is_rational_v<To>) {
      out.push_back(To(c.get_d()));
    } else if constexpr (is_rational_v<To> && !is_rational_v<From>) {
      static_assert(!is_complex<From>::value, "no exact conversion from complex");
      out.push_back(exact_rational(c));
    } else {
      out.push_back(To(c));
    }
  }
  return Polynomial<To>(std::move(out));
}

/// Truncated power series c_0 + ... + c_K X^K.
class TruncatedSeries {
 public:
  TruncatedSeries(std::vector<Rational> coeffs, int order);

  int order() const { return order_; }
  Rational operator[](int k) const;
  std::span<const Rational> coeffs() const { return coeffs_; }

  static TruncatedSeries from_polynomial(const RationalPolynomial& p, int order);

  // Arithmetic truncates to the smaller of the two orders.
  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);

  /// Smallest k with c_k != 0, or empty when every known coefficient is zero.
  std::optional<int> valuation() const;

 private:
  std::vector<Rational> coeffs_;  // exactly order_ + 1 entries
  int order_;
};

}  // namespace cfd
