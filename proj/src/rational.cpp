#include "cfd/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace cfd {

std::string to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace {

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  std::size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  for (std::size_t k = i; k < s.size(); ++k) {
    if (s[k] < '0' || s[k] > '9') {
      throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
    }
  }
  std::string digits(s.substr(s[0] == '+' ? 1 : 0));
  return mpz_class(digits, 10);
}

}  // namespace

long double to_long_double(const Rational& r) {
  const double hi = r.get_d();
  const Rational rest = r - exact_rational(hi);
  return static_cast<long double>(hi) + static_cast<long double>(rest.get_d());
}

Rational parse_rational(std::string_view text) {
  const std::string_view whole = text;
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class p = parse_integer(text.substr(0, slash), whole);
    mpz_class q = parse_integer(text.substr(slash + 1), whole);
    if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(whole) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
  }

  // Decimal with optional exponent.
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    exponent = parse_integer(text.substr(e + 1), whole).get_si();
    text = text.substr(0, e);
  }
  std::string mantissa;
  bool negative = false;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) {
    negative = text[0] == '-';
    text.remove_prefix(1);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    mantissa = std::string(text.substr(0, dot)) + std::string(text.substr(dot + 1));
    exponent -= static_cast<long>(text.size() - dot - 1);
  } else {
    mantissa = std::string(text);
  }
  if (mantissa.empty()) throw std::invalid_argument("malformed rational: '" + std::string(whole) + "'");
  mpz_class m = parse_integer(mantissa, whole);
  if (negative) m = -m;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
  Rational r = exponent >= 0 ? Rational(m * scale) : Rational(m, scale);
  r.canonicalize();
  return r;
}

Rational exact_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("exact_rational: non-finite value");
  // mpq_set_d is exact for finite doubles.
  return Rational(x);
}

}  // namespace cfd
