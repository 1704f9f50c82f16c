#ifndef FLEXKIN_ROOTS_HPP
#define FLEXKIN_ROOTS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "flexkin/error.hpp"
#include "flexkin/rational.hpp"
#include "flexkin/upoly.hpp"

namespace flexkin {

/// Signals that a root query was made on the zero polynomial.
class IdenticallyZero : public std::domain_error {
 public:
  IdenticallyZero() : std::domain_error("polynomial vanishes identically") {}
};

/// Sturm chain p, p', -rem(...), ...
class SturmSequence {
 public:
  explicit SturmSequence(const QPoly& p) {
    if (p.is_zero()) throw IdenticallyZero();
    seq_.push_back(p);
    QPoly d = p.derivative();
    if (d.is_zero()) return;
    seq_.push_back(d);
    while (true) {
      QPoly r = -divmod(seq_[seq_.size() - 2], seq_.back()).second;
      if (r.is_zero()) break;
      seq_.push_back(r);
    }
  }

  int variations_at(const Rational& x) const {
    int v = 0, last = 0;
    for (const auto& q : seq_) {
      int s = q(x).sign();
      if (s == 0) continue;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
  int variations_at_infinity(bool positive) const {
    int v = 0, last = 0;
    for (const auto& q : seq_) {
      int s = q.lead().sign();
      if (!positive && q.degree() % 2 == 1) s = -s;
      if (last != 0 && s != last) ++v;
      last = s;
    }
    return v;
  }
  /// Distinct real roots in (a, b].
  int count(const Rational& a, const Rational& b) const { return variations_at(a) - variations_at(b); }
  int count_all() const { return variations_at_infinity(false) - variations_at_infinity(true); }

 private:
  std::vector<QPoly> seq_;
};

/// Bound on |root| (Cauchy).
inline Rational root_bound(const QPoly& p) {
  Rational m(0);
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs(p.coeff(static_cast<std::size_t>(i)) / p.lead()));
  return m + Rational(1);
}

/// Real root of a square-free polynomial, enclosed in [lo, hi] (lo == hi means exact).
class AlgebraicReal {
 public:
  AlgebraicReal() = default;
  explicit AlgebraicReal(const Rational& exact) : poly_({-exact, Rational(1)}), lo_(exact), hi_(exact) {}
  /// poly must be square-free with exactly one root in (lo, hi].
  AlgebraicReal(QPoly poly, Rational lo, Rational hi) : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    normalize();
  }

  const QPoly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }
  bool is_rational() const { return lo_ == hi_; }
  const Rational& exact() const {
    if (!is_rational()) throw UsageError("algebraic number is not rational");
    return lo_;
  }

  /// Bisect until hi - lo <= rel * max(|lo|, |hi|) (or width <= rel when the root is 0-adjacent).
  void refine(const Rational& rel_width) {
    for (int it = 0; it < 2000 && !is_rational(); ++it) {
      Rational w = hi_ - lo_;
      Rational mag = std::max(abs(lo_), abs(hi_));
      bool straddles_zero = lo_.sign() < 0 && hi_.sign() > 0;
      if (!straddles_zero && w <= rel_width * mag) return;
      if (straddles_zero && mag == Rational(0)) return;
      bisect();
    }
  }
  void refine_default() { refine(Rational(mpz_class(1), mpz_class(1) << 64)); }

  long double to_long_double() const {
    if (is_rational()) return lo_.to_long_double();
    AlgebraicReal c = *this;
    c.refine(Rational(mpz_class(1), mpz_class(1) << 70));
    return ((c.lo_ + c.hi_) / Rational(2)).to_long_double();
  }
  double to_double() const { return static_cast<double>(to_long_double()); }

  /// Exact test g(root) == 0.
  bool is_root_of(const QPoly& g) const {
    if (g.is_zero()) return true;
    if (is_rational()) return g(lo_).is_zero();
    QPoly h = gcd(poly_, g);
    if (h.degree() <= 0) return false;
    return SturmSequence(h).count(lo_, hi_) > 0;
  }

  /// Exact sign of g at the root.
  int sign_of(const QPoly& g) const {
    if (is_root_of(g)) return 0;
    if (is_rational()) return g(lo_).sign();
    AlgebraicReal c = *this;
    QPoly gs = squarefree_part(g);
    SturmSequence sg(gs);
    while (sg.count(c.lo_, c.hi_) > 0) c.bisect();
    return g(c.hi_).sign();
  }

  /// Exact comparison with a rational.
  int compare(const Rational& x) const {
    AlgebraicReal c = *this;
    while (true) {
      if (c.is_rational()) return c.lo_ < x ? -1 : (c.lo_ == x ? 0 : 1);
      if (x <= c.lo_) return 1;
      if (x >= c.hi_) return -1;  // hi is never a root unless exact
      c.bisect();
    }
  }

 private:
  void normalize() {
    if (lo_ != hi_ && poly_(hi_).is_zero()) lo_ = hi_;
  }
  void bisect() {
    if (is_rational()) return;
    Rational mid = (lo_ + hi_) / Rational(2);
    Rational pm = poly_(mid);
    if (pm.is_zero()) {
      lo_ = hi_ = mid;
      return;
    }
    Rational pl = poly_(lo_);
    if (!pl.is_zero()) {
      if (pl.sign() != pm.sign()) hi_ = mid;
      else lo_ = mid;
      return;
    }
    // lo is a neighbouring root; fall back on counting.
    if (SturmSequence(poly_).count(lo_, mid) > 0) hi_ = mid;
    else lo_ = mid;
  }

  QPoly poly_;
  Rational lo_{0}, hi_{0};
};

struct RealRoot {
  AlgebraicReal value;
  int multiplicity = 1;
};

/// Real roots of a square-free polynomial, ascending, each refined to relative width 2^-64.
/// Rational with the smallest denominator in [lo, hi] (continued fractions).
inline Rational simplest_between(Rational lo, Rational hi) {
  if (hi < lo) std::swap(lo, hi);
  if (lo <= Rational(0) && Rational(0) <= hi) return Rational(0);
  if (hi < Rational(0)) return -simplest_between(-hi, -lo);
  mpz_class fl;
  mpz_fdiv_q(fl.get_mpz_t(), lo.raw().get_num_mpz_t(), lo.raw().get_den_mpz_t());
  const Rational f{mpq_class(fl)};
  if (f == lo) return lo;
  if (f + Rational(1) <= hi) return f + Rational(1);
  // lo, hi in (f, f + 1): recurse on the reciprocals of the fractional parts
  return f + Rational(1) / simplest_between(Rational(1) / (hi - f), Rational(1) / (lo - f));
}

inline std::vector<AlgebraicReal> isolate_squarefree(const QPoly& p) {
  std::vector<AlgebraicReal> out;
  if (p.is_zero()) throw IdenticallyZero();
  if (p.degree() <= 0) return out;
  if (p.degree() == 1) {
    out.emplace_back(-p.coeff(0) / p.coeff(1));
    return out;
  }
  SturmSequence st(p);
  Rational b = root_bound(p);
  struct Item {
    Rational a, b;
    int n;
  };
  std::vector<Item> stack{{-b, b, st.count(-b, b)}};
  std::vector<std::pair<Rational, Rational>> found;
  while (!stack.empty()) {
    Item it = stack.back();
    stack.pop_back();
    if (it.n == 0) continue;
    if (it.n == 1) {
      found.emplace_back(it.a, it.b);
      continue;
    }
    Rational mid = (it.a + it.b) / Rational(2);
    int left = st.count(it.a, mid);
    stack.push_back({mid, it.b, it.n - left});
    stack.push_back({it.a, mid, left});
  }
  std::sort(found.begin(), found.end());
  for (auto& [lo, hi] : found) {
    AlgebraicReal r(p, lo, hi);
    r.refine_default();
    const Rational q = simplest_between(r.lo(), r.hi());
    if (p(q).is_zero()) r = AlgebraicReal(q);
    out.push_back(std::move(r));
  }
  return out;
}

/// All real roots with exact multiplicities; throws IdenticallyZero on the zero polynomial.
inline std::vector<RealRoot> real_roots(const QPoly& p) {
  if (p.is_zero()) throw IdenticallyZero();
  std::vector<RealRoot> out;
  for (auto& [f, m] : squarefree_decomposition(p))
    for (auto& r : isolate_squarefree(f)) out.push_back({std::move(r), m});
  std::sort(out.begin(), out.end(), [](const RealRoot& x, const RealRoot& y) {
    if (x.value.is_rational() && y.value.is_rational()) return x.value.lo() < y.value.lo();
    return x.value.to_long_double() < y.value.to_long_double();
  });
  return out;
}

struct ComplexRoot {
  std::complex<long double> z;
  int multiplicity = 1;
  bool is_real = false;
};

namespace detail {
inline std::vector<std::complex<long double>> companion_roots(const QPoly& f) {
  const int n = f.degree();
  std::vector<std::complex<long double>> zs;
  if (n <= 0) return zs;
  if (n == 1) {
    zs.emplace_back((-f.coeff(0) / f.coeff(1)).to_long_double(), 0.0L);
    return zs;
  }
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  const Rational lead = f.lead();
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -(f.coeff(static_cast<std::size_t>(i)) / lead).to_double();
  Eigen::ComplexEigenSolver<Eigen::MatrixXd> es(c, false);
  for (int i = 0; i < n; ++i) {
    std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    // Newton polish in extended precision.
    const QPoly df = f.derivative();
    for (int k = 0; k < 8; ++k) {
      auto fz = f.eval_approx(z);
      auto dz = df.eval_approx(z);
      if (std::abs(dz) == 0.0L) break;
      auto step = fz / dz;
      z -= step;
      if (std::abs(step) <= 1e-19L * std::max(1.0L, std::abs(z))) break;
    }
    zs.push_back(z);
  }
  return zs;
}
}  // namespace detail

/// Complex roots with multiplicities (square-free decomposition, then companion eigenvalues).
/// Real roots are taken from exact isolation so the is_real flag is exact.
inline std::vector<ComplexRoot> complex_roots(const QPoly& p) {
  if (p.is_zero()) throw IdenticallyZero();
  std::vector<ComplexRoot> out;
  for (auto& [f, m] : squarefree_decomposition(p)) {
    auto reals = isolate_squarefree(f);
    for (auto& r : reals) out.push_back({{r.to_long_double(), 0.0L}, m, true});
    const int ncomplex = f.degree() - static_cast<int>(reals.size());
    if (ncomplex == 0) continue;
    auto zs = detail::companion_roots(f);
    std::sort(zs.begin(), zs.end(), [](auto& a, auto& b) { return std::abs(a.imag()) > std::abs(b.imag()); });
    for (int i = 0; i < ncomplex && i < static_cast<int>(zs.size()); ++i) out.push_back({zs[static_cast<std::size_t>(i)], m, false});
  }
  return out;
}

}  // namespace flexkin

#endif  // FLEXKIN_ROOTS_HPP
