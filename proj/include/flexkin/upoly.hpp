#ifndef FLEXKIN_UPOLY_HPP
#define FLEXKIN_UPOLY_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "flexkin/error.hpp"
#include "flexkin/rational.hpp"

namespace flexkin {

/// Approximate a coefficient in a floating type.
template <class T>
T to_approx(const Rational& r) {
  if constexpr (std::is_same_v<T, long double> || std::is_same_v<T, std::complex<long double>>)
    return T(r.to_long_double());
  else
    return T(r.to_double());
}

/// Dense univariate polynomial, ascending coefficients. K must be a field for division.
template <class K>
class UPoly {
 public:
  UPoly() = default;
  UPoly(const K& c) {  // NOLINT(google-explicit-constructor)
    if (!detail::zero(c)) c_.push_back(c);
  }
  UPoly(int c) : UPoly(K(c)) {}  // NOLINT(google-explicit-constructor)
  explicit UPoly(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }
  UPoly(std::initializer_list<K> coeffs) : c_(coeffs) { trim(); }

  static UPoly x() { return UPoly(std::vector<K>{K(0), K(1)}); }
  /// c * x^k
  static UPoly monomial(const K& c, std::size_t k) {
    std::vector<K> v(k + 1, K(0));
    v[k] = c;
    return UPoly(std::move(v));
  }

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const K& lead() const {
    if (c_.empty()) throw UsageError("lead() of zero polynomial");
    return c_.back();
  }
  K coeff(std::size_t i) const { return i < c_.size() ? c_[i] : K(0); }
  const std::vector<K>& coeffs() const { return c_; }

  UPoly& operator+=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), K(0));
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator-(const UPoly& a) {
    UPoly r = a;
    for (auto& c : r.c_) c = -c;
    return r;
  }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<K> v(a.c_.size() + b.c_.size() - 1, K(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (detail::zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(std::move(v));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }
  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division; divisor must be nonzero.
  friend std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("UPoly: division by zero polynomial");
    if (a.degree() < b.degree()) return {UPoly{}, a};
    std::vector<K> r = a.c_;
    std::vector<K> q(a.c_.size() - b.c_.size() + 1, K(0));
    const K& lb = b.c_.back();
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
      const std::size_t top = static_cast<std::size_t>(k) + b.c_.size() - 1;
      if (detail::zero(r[top])) continue;
      K f = r[top] / lb;
      q[static_cast<std::size_t>(k)] = f;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * b.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
  }

  /// Division that must leave no remainder.
  friend UPoly exact_div(const UPoly& a, const UPoly& b) {
    auto [q, r] = divmod(a, b);
    if (!r.is_zero()) throw std::domain_error("UPoly: inexact division");
    return q;
  }
  friend bool divides(const UPoly& d, const UPoly& a) {
    if (d.is_zero()) return a.is_zero();
    return divmod(a, d).second.is_zero();
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<K> v(c_.size() - 1, K(0));
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * K(static_cast<long>(i));
    return UPoly(std::move(v));
  }

  UPoly monic() const {
    if (is_zero()) return {};
    UPoly r = *this;
    K l = r.c_.back();
    for (auto& c : r.c_) c /= l;
    return r;
  }

  /// p(x) -> p(-x)
  UPoly reflected() const {
    UPoly r = *this;
    for (std::size_t i = 1; i < r.c_.size(); i += 2) r.c_[i] = -r.c_[i];
    return r;
  }

  /// Horner evaluation in the coefficient field.
  K operator()(const K& x) const {
    K acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// Horner evaluation in a floating (or complex) type.
  template <class T>
  T eval_approx(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_approx<T>(*it);
    return acc;
  }

  std::string str(const std::string& var = "x") const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const K& c = c_[static_cast<std::size_t>(k)];
      if (detail::zero(c)) continue;
      if (!first) os << " + ";
      first = false;
      if (k == 0) {
        os << c;
      } else {
        if (!(c == K(1))) os << "(" << c << ")*";
        os << var;
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const UPoly& p) { return os << p.str(); }

 private:
  void trim() {
    while (!c_.empty() && detail::zero(c_.back())) c_.pop_back();
  }
  std::vector<K> c_;
};

template <class K>
bool is_zero(const UPoly<K>& p) {
  return p.is_zero();
}

using QPoly = UPoly<Rational>;

/// Monic greatest common divisor; gcd(0, 0) is rejected.
template <class K>
UPoly<K> gcd(UPoly<K> a, UPoly<K> b) {
  if (a.is_zero() && b.is_zero()) throw UsageError("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

/// Yun's square-free decomposition: p = lead * prod_k factors[k].first^factors[k].second.
/// Every returned factor is monic, square-free, non-constant, and pairwise coprime.
template <class K>
std::vector<std::pair<UPoly<K>, int>> squarefree_decomposition(const UPoly<K>& p) {
  if (p.is_zero()) throw UsageError("square-free decomposition of the zero polynomial");
  std::vector<std::pair<UPoly<K>, int>> out;
  if (p.degree() == 0) return out;
  UPoly<K> f = p.monic();
  UPoly<K> d = f.derivative();
  UPoly<K> a = gcd(f, d);
  UPoly<K> b = exact_div(f, a);
  UPoly<K> c = exact_div(d, a);
  UPoly<K> dd = c - b.derivative();
  int k = 1;
  while (b.degree() > 0) {
    UPoly<K> g = gcd(b, dd);
    if (g.degree() > 0) out.emplace_back(g, k);
    b = exact_div(b, g);
    c = exact_div(dd, g);
    dd = c - b.derivative();
    ++k;
  }
  return out;
}

template <class K>
UPoly<K> squarefree_part(const UPoly<K>& p) {
  UPoly<K> out(K(1));
  for (auto& [f, m] : squarefree_decomposition(p)) out *= f;
  return out;
}

/// Largest k with (x - root)^k | p, for a root in the coefficient field.
template <class K>
int root_multiplicity(UPoly<K> p, const K& root) {
  if (p.is_zero()) throw UsageError("root multiplicity in the zero polynomial");
  const UPoly<K> lin({-root, K(1)});
  int m = 0;
  while (true) {
    auto [q, r] = divmod(p, lin);
    if (!r.is_zero()) return m;
    p = std::move(q);
    ++m;
  }
}

/// Repeatedly strips the factor d from p; returns the stripped polynomial and the count.
template <class K>
std::pair<UPoly<K>, int> strip_factor(UPoly<K> p, const UPoly<K>& d) {
  if (d.degree() <= 0 || p.is_zero()) return {p, 0};
  int n = 0;
  while (true) {
    auto [q, r] = divmod(p, d);
    if (!r.is_zero()) return {p, n};
    p = std::move(q);
    ++n;
  }
}

}  // namespace flexkin

#endif  // FLEXKIN_UPOLY_HPP
