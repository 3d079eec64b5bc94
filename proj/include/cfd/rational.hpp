#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace cfd {

// Arbitrary-precision rational; GMP keeps it canonical (q > 0, gcd(p, q) = 1).
using Rational = mpq_class;
using Complex = std::complex<double>;

// "p/q", always with an explicit denominator.
std::string to_string(const Rational& r);

// Accepts "p/q", "p", and plain decimals such as "-0.358946420670826" or
// "1.5e-3"; decimals are converted exactly (no binary rounding).
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) { return r.get_d(); }

// Nearest-ish long double: the double part plus the double-rounded remainder.
long double to_long_double(const Rational& r);

// Exact conversion: every finite double is a dyadic rational.
Rational exact_rational(double x);

template <class T>
struct is_complex : std::false_type {};
template <class T>
struct is_complex<std::complex<T>> : std::true_type {};

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

// Scalar conversions used by the generic formula/polynomial code.
template <class T>
T from_rational(const Rational& r) {
  if constexpr (is_rational_v<T>) {
    return r;
  } else if constexpr (std::is_same_v<T, long double>) {
    return to_long_double(r);
  } else {
    return T(r.get_d());
  }
}

template <class T>
T from_int(long v) {
  if constexpr (is_rational_v<T>) {
    return Rational(v);
  } else {
    return T(static_cast<double>(v));
  }
}

template <class T>
bool is_zero(const T& v) {
  if constexpr (is_rational_v<T>) {
    return sgn(v) == 0;
  } else {
    return v == T(0);
  }
}

template <class T>
double magnitude(const T& v) {
  if constexpr (is_rational_v<T>) {
    return std::abs(v.get_d());
  } else {
    return std::abs(v);
  }
}

}  // namespace cfd
