#ifndef FLEXKIN_MPOLY_HPP
#define FLEXKIN_MPOLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "flexkin/error.hpp"
#include "flexkin/rational.hpp"

namespace flexkin {

inline constexpr std::size_t kMaxArity = 8;
using Exponents = std::array<std::uint8_t, kMaxArity>;

/// Sparse multivariate polynomial over a commutative ring R; arity <= 8.
/// Terms are kept in lex order (q0 > q1 > ...); no stored zero coefficients.
template <class R>
class MPoly {
 public:
  using TermMap = std::map<Exponents, R>;

  MPoly() = default;
  explicit MPoly(std::size_t arity) : arity_(arity) { check_arity(arity); }
  MPoly(std::size_t arity, const R& c) : MPoly(arity) {
    if (!detail::zero(c)) terms_[Exponents{}] = c;
  }

  static MPoly var(std::size_t arity, std::size_t i) {
    if (i >= arity) throw UsageError("variable index out of range");
    MPoly p(arity);
    Exponents e{};
    e[i] = 1;
    p.terms_[e] = R(1);
    return p;
  }
  static MPoly monomial(std::size_t arity, const R& c, const Exponents& e) {
    MPoly p(arity);
    for (std::size_t i = arity; i < kMaxArity; ++i)
      if (e[i] != 0) throw UsageError("exponent beyond arity");
    if (!detail::zero(c)) p.terms_[e] = c;
    return p;
  }

  std::size_t arity() const { return arity_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  int total_degree() const {
    int d = -1;
    for (auto& [e, c] : terms_) {
      int s = 0;
      for (auto x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  R coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? R(0) : it->second;
  }

  MPoly& operator+=(const MPoly& o) {
    adopt_arity(o);
    for (auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    adopt_arity(o);
    for (auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a) {
    MPoly r = a;
    r.terms_.clear();
    for (auto& [e, c] : a.terms_) r.terms_[e] = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.same_arity(b);
    MPoly r;
    r.arity_ = std::max(a.arity_, b.arity_);
    for (auto& [ea, ca] : a.terms_)
      for (auto& [eb, cb] : b.terms_) {
        Exponents e;
        for (std::size_t i = 0; i < kMaxArity; ++i) e[i] = static_cast<std::uint8_t>(ea[i] + eb[i]);
        r.add_term(e, ca * cb);
      }
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  friend MPoly operator*(const R& s, const MPoly& a) {
    MPoly r = a;
    r.terms_.clear();
    if (detail::zero(s)) return r;
    for (auto& [e, c] : a.terms_) r.add_term(e, s * c);
    return r;
  }
  friend bool operator==(const MPoly& a, const MPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    return a.arity_ == b.arity_ && a.terms_ == b.terms_;
  }

  /// Formal partial derivative with respect to variable i.
  MPoly partial(std::size_t i) const {
    if (i >= arity_) throw UsageError("partial: variable index out of range");
    MPoly r(arity_);
    for (auto& [e, c] : terms_) {
      if (e[i] == 0) continue;
      Exponents f = e;
      f[i] = static_cast<std::uint8_t>(f[i] - 1);
      r.add_term(f, c * R(static_cast<long>(e[i])));
    }
    return r;
  }

  std::vector<MPoly> gradient() const {
    std::vector<MPoly> g;
    for (std::size_t i = 0; i < arity_; ++i) g.push_back(partial(i));
    return g;
  }

  /// Evaluate at a point whose coordinates live in S; coefficients are mapped by conv.
  template <class S, class Conv>
  S eval_with(const std::vector<S>& pt, Conv conv) const {
    if (pt.size() != arity_) throw UsageError("evaluation point has wrong dimension");
    S acc = S(0);
    for (auto& [e, c] : terms_) {
      S t = conv(c);
      for (std::size_t i = 0; i < arity_; ++i)
        for (int k = 0; k < e[i]; ++k) t = t * pt[i];
      acc = acc + t;
    }
    return acc;
  }
  R operator()(const std::vector<R>& pt) const {
    return eval_with<R>(pt, [](const R& c) { return c; });
  }

  /// Map coefficients into another ring.
  template <class S, class Conv>
  MPoly<S> map_coefficients(Conv conv) const {
    MPoly<S> r(arity_);
    for (auto& [e, c] : terms_) r += MPoly<S>::monomial(arity_, conv(c), e);
    return r;
  }

  /// Exact division; throws std::domain_error when b does not divide *this.
  friend MPoly exact_div(const MPoly& a, const MPoly& b) {
    a.same_arity(b);
    if (b.is_zero()) throw std::domain_error("MPoly: division by zero");
    MPoly q, r = a;
    const auto& [lb, cb] = *b.terms_.rbegin();
    while (!r.is_zero()) {
      const auto [lr, cr] = *r.terms_.rbegin();
      Exponents e;
      for (std::size_t i = 0; i < kMaxArity; ++i) {
        if (lr[i] < lb[i]) throw std::domain_error("MPoly: inexact division");
        e[i] = static_cast<std::uint8_t>(lr[i] - lb[i]);
      }
      MPoly t = monomial(a.arity_, cr / cb, e);
      q += t;
      r -= t * b;
    }
    return q;
  }

  std::string str(const std::vector<std::string>& names = {}) const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      os << "(" << it->second << ")";
      for (std::size_t i = 0; i < arity_; ++i) {
        if (it->first[i] == 0) continue;
        os << "*" << (i < names.size() ? names[i] : "q" + std::to_string(i));
        if (it->first[i] > 1) os << "^" << static_cast<int>(it->first[i]);
      }
    }
    return os.str();
  }
  friend std::ostream& operator<<(std::ostream& os, const MPoly& p) { return os << p.str(); }

 private:
  static void check_arity(std::size_t a) {
    if (a == 0 || a > kMaxArity) throw UsageError("MPoly arity must be in 1..8");
  }
  // A default-constructed polynomial (arity 0) is a zero compatible with every arity.
  void same_arity(const MPoly& o) const {
    if (arity_ != o.arity_ && arity_ != 0 && o.arity_ != 0) throw UsageError("MPoly arity mismatch");
  }
  void adopt_arity(const MPoly& o) {
    same_arity(o);
    if (arity_ == 0) arity_ = o.arity_;
  }
  void add_term(const Exponents& e, const R& c) {
    if (detail::zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (inserted) return;
    it->second += c;
    if (detail::zero(it->second)) terms_.erase(it);
  }

  std::size_t arity_ = 0;
  TermMap terms_;
};

template <class R>
bool is_zero(const MPoly<R>& p) {
  return p.is_zero();
}

using QMPoly = MPoly<Rational>;

/// Exact division in a field, matching the ring interface used by Bareiss.
inline Rational exact_div(const Rational& a, const Rational& b) { return a / b; }

}  // namespace flexkin

#endif  // FLEXKIN_MPOLY_HPP
