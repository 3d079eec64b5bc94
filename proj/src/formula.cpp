#include "cfd/formula.hpp"

#include <stdexcept>

namespace cfd {

RationalFormula a_power_exact(int n) {
  if (n < 0) throw std::invalid_argument("a_power: negative exponent");
  std::vector<Rational> out(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) {
    mpz_class binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(2 * n), static_cast<unsigned long>(n + k));
    out[static_cast<std::size_t>(k)] = Rational(k % 2 == 0 ? binom : mpz_class(-binom));
  }
  return RationalFormula(std::move(out));
}

nlohmann::json to_json(const RationalFormula& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : f.coeffs()) coeffs.push_back(to_string(c));
  return {{"coeffs", coeffs}};
}

nlohmann::json to_json(const SymmetricFormula<double>& f) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (double c : f.coeffs()) coeffs.push_back(c);
  return {{"coeffs", coeffs}};
}

nlohmann::json to_json(const RationalPolynomial& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(to_string(c));
  return {{"coeffs", coeffs}};
}

RationalFormula rational_formula_from_json(const nlohmann::json& j) {
  std::vector<Rational> out;
  for (const auto& c : j.at("coeffs")) {
    if (c.is_string()) {
      out.push_back(parse_rational(c.get<std::string>()));
    } else if (c.is_number_integer()) {
      out.emplace_back(c.get<long>());
    } else {
      throw std::invalid_argument("rational formula coefficients must be \"p/q\" strings");
    }
  }
  return RationalFormula(std::move(out));
}

SymmetricFormula<double> real_formula_from_json(const nlohmann::json& j) {
  std::vector<double> out;
  for (const auto& c : j.at("coeffs")) {
    out.push_back(c.is_string() ? parse_rational(c.get<std::string>()).get_d() : c.get<double>());
  }
  return SymmetricFormula<double>(std::move(out));
}

TruncatedSeries::TruncatedSeries(std::vector<Rational> coeffs, int order) : coeffs_(std::move(coeffs)), order_(order) {
  if (order < 0) throw std::invalid_argument("TruncatedSeries: negative order");
  coeffs_.resize(static_cast<std::size_t>(order + 1));
}

Rational TruncatedSeries::operator[](int k) const {
  if (k < 0 || k > order_) throw std::out_of_range("TruncatedSeries: coefficient beyond truncation order");
  return coeffs_[static_cast<std::size_t>(k)];
}

TruncatedSeries TruncatedSeries::from_polynomial(const RationalPolynomial& p, int order) {
  std::vector<Rational> c(static_cast<std::size_t>(order + 1));
  for (int k = 0; k <= order; ++k) c[static_cast<std::size_t>(k)] = p[static_cast<std::size_t>(k)];
  return {std::move(c), order};
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int K = std::min(a.order_, b.order_);
  std::vector<Rational> c(static_cast<std::size_t>(K + 1));
  for (int k = 0; k <= K; ++k) c[static_cast<std::size_t>(k)] = a.coeffs_[k] + b.coeffs_[k];
  return {std::move(c), K};
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int K = std::min(a.order_, b.order_);
  std::vector<Rational> c(static_cast<std::size_t>(K + 1));
  for (int k = 0; k <= K; ++k) c[static_cast<std::size_t>(k)] = a.coeffs_[k] - b.coeffs_[k];
  return {std::move(c), K};
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  const int K = std::min(a.order_, b.order_);
  std::vector<Rational> c(static_cast<std::size_t>(K + 1));
  for (int k = 0; k <= K; ++k) {
    Rational acc = 0;
    for (int i = 0; i <= k; ++i) acc += a.coeffs_[i] * b.coeffs_[k - i];
    c[static_cast<std::size_t>(k)] = acc;
  }
  return {std::move(c), K};
}

std::optional<int> TruncatedSeries::valuation() const {
  for (int k = 0; k <= order_; ++k) {
    if (sgn(coeffs_[static_cast<std::size_t>(k)]) != 0) return k;
  }
  return std::nullopt;
}

}  // namespace cfd
