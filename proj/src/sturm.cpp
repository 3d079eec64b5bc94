#include "cfd/sturm.hpp"

#include <algorithm>
#include <stdexcept>

namespace cfd {

namespace {

RationalPolynomial square_free_part(const RationalPolynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("square_free_part: zero polynomial");
  if (*p.degree() == 0) return p;
  const auto g = gcd(p, p.derivative());
  return p.divmod(g).first;
}

// Roots of the square-free chain head in (a, b].
int count_half_open(const std::vector<RationalPolynomial>& chain, const Rational& a, const Rational& b) {
  return sign_variations(chain, a) - sign_variations(chain, b);
}

}  // namespace

std::vector<RationalPolynomial> sturm_sequence(const RationalPolynomial& p) {
  std::vector<RationalPolynomial> chain{square_free_part(p)};
  chain.push_back(chain.front().derivative());
  while (!chain.back().is_zero()) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    chain.push_back(-r);
  }
  chain.pop_back();
  return chain;
}

int sign_variations(const std::vector<RationalPolynomial>& chain, const Rational& x) {
  int variations = 0;
  int last = 0;
  for (const auto& q : chain) {
    const int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++variations;
    last = s;
  }
  return variations;
}

int count_real_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  if (hi < lo) throw std::invalid_argument("count_real_roots: empty interval");
  const auto chain = sturm_sequence(p);
  const int at_lo = sgn(chain.front()(lo)) == 0 ? 1 : 0;
  return at_lo + count_half_open(chain, lo, hi);
}

bool roots_outside_interval(const RationalPolynomial& p, const Rational& lo, const Rational& hi) {
  return count_real_roots(p, lo, hi) == 0;
}

std::vector<double> RootSet::values() const {
  std::vector<double> out;
  for (const auto& r : roots) out.push_back(r.value);
  return out;
}

bool RootSet::contains_zero() const {
  return std::any_of(roots.begin(), roots.end(), [](const IsolatedRoot& r) { return sgn(r.lo) == 0 && sgn(r.hi) == 0; });
}

RootSet isolate_roots(const RationalPolynomial& p, const Rational& lo, const Rational& hi, int width_bits) {
  if (hi < lo) throw std::invalid_argument("isolate_roots: empty interval");
  const auto chain = sturm_sequence(p);
  const auto& head = chain.front();
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(width_bits));
  const Rational max_width = Rational(mpz_class(1), scale);

  std::vector<IsolatedRoot> found;
  auto exact = [&](const Rational& x) { found.push_back({x, x, x.get_d()}); };

  if (sgn(head(lo)) == 0) exact(lo);

  struct Work {
    Rational a, b;
    int count;
  };
  std::vector<Work> stack{{lo, hi, count_half_open(chain, lo, hi)}};
  while (!stack.empty()) {
    Work w = stack.back();
    stack.pop_back();
    if (w.count == 0) continue;
    if (w.count > 1) {
      Rational m = (w.a + w.b) / 2;
      const int left = count_half_open(chain, w.a, m);
      stack.push_back({m, w.b, w.count - left});
      stack.push_back({w.a, m, left});
      continue;
    }
    Rational a = w.a, b = w.b;
    if (sgn(head(b)) == 0) {
      exact(b);
      continue;
    }
    bool hit = false;
    while (b - a > max_width) {
      Rational m = (a + b) / 2;
      if (sgn(head(m)) == 0) {
        exact(m);
        hit = true;
        break;
      }
      if (count_half_open(chain, a, m) == 1) {
        b = m;
      } else {
        a = m;
      }
    }
    if (!hit) found.push_back({a, b, Rational((a + b) / 2).get_d()});
  }

  if (*p.degree() >= 1) {
    const auto g = gcd(p, p.derivative());
    if (g.degree().value_or(0) >= 1) {
      for (auto& r : found) r.multiple = count_real_roots(g, r.lo, r.hi) > 0;
    }
  }
  std::sort(found.begin(), found.end(), [](const IsolatedRoot& x, const IsolatedRoot& y) { return x.lo < y.lo; });
  return {std::move(found)};
}

}  // namespace cfd
