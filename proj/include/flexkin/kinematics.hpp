#ifndef FLEXKIN_KINEMATICS_HPP
#define FLEXKIN_KINEMATICS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "flexkin/design.hpp"
#include "flexkin/error.hpp"
#include "flexkin/mpoly.hpp"
#include "flexkin/roots.hpp"
#include "flexkin/upoly.hpp"

namespace flexkin {

/// c0 = q0^2 + q1^2 - 1 and the three leg constraints c1..c3 in q0..q3.
template <class R>
struct ConstraintSystem {
  std::array<MPoly<R>, 4> c;
  ManipulatorDesign<R> design;
};

namespace detail {
template <class R>
MPoly<R> qvar(std::size_t i) {
  return MPoly<R>::var(4, i);
}
template <class R>
MPoly<R> qconst(const R& v) {
  return MPoly<R>(4, v);
}
}  // namespace detail

/// Leg constraint for base point xi, platform point xj (moving frame) and squared length r2.
template <class R>
MPoly<R> leg_constraint(const Point2<R>& xi, const Point2<R>& xj, const R& r2) {
  using P = MPoly<R>;
  const P q0 = detail::qvar<R>(0), q1 = detail::qvar<R>(1), q2 = detail::qvar<R>(2), q3 = detail::qvar<R>(3);
  auto k = [](const R& v) { return detail::qconst<R>(v); };
  const R &ai = xi.a, &bi = xi.b, &aj = xj.a, &bj = xj.b;
  const R two(2), four(4);
  P c = k(two * ai * aj) * (q1 * q1 - q0 * q0);
  c += k(four * ai * bj - four * bi * aj) * q0 * q1;
  c += k(two * bi * bj) * (q1 * q1 - q0 * q0);
  c += k(aj * aj + bj * bj) * (q0 * q0 + q1 * q1);
  c -= k(four * ai) * (q0 * q3 + q1 * q2);
  c += k(four * bi) * (q0 * q2 - q1 * q3);
  c += k(four * aj) * (q0 * q3 - q1 * q2);
  c -= k(four * bj) * (q0 * q2 + q1 * q3);
  c += k(ai * ai + bi * bi - r2);
  c += k(four) * (q2 * q2 + q3 * q3);
  return c;
}

template <class R>
ConstraintSystem<R> build_constraints(const ManipulatorDesign<R>& d) {
  ConstraintSystem<R> cs;
  cs.design = d;
  const MPoly<R> q0 = detail::qvar<R>(0), q1 = detail::qvar<R>(1);
  cs.c[0] = q0 * q0 + q1 * q1 - detail::qconst<R>(R(1));
  for (std::size_t i = 0; i < 3; ++i) cs.c[i + 1] = leg_constraint(d.base[i], d.platform[i], d.leg2[i]);
  return cs;
}

/// Constant Hessian of a polynomial of total degree <= 2 in q0..q3.
template <class R>
std::array<std::array<R, 4>, 4> hessian(const MPoly<R>& c) {
  std::array<std::array<R, 4>, 4> h{};
  for (std::size_t i = 0; i < 4; ++i) {
    MPoly<R> di = c.partial(i);
    for (std::size_t j = 0; j < 4; ++j) h[i][j] = di.partial(j).coefficient(Exponents{});
  }
  return h;
}

/// Binary form sum_k c[k] q0^(n-k) q1^k with formal degree n = c.size() - 1.
template <class R>
struct BinaryForm {
  std::vector<R> c;

  BinaryForm() = default;
  explicit BinaryForm(std::size_t degree) : c(degree + 1) {}

  std::size_t degree() const { return c.empty() ? 0 : c.size() - 1; }
  bool is_zero() const {
    return std::all_of(c.begin(), c.end(), [](const R& x) { return detail::zero(x); });
  }
  friend BinaryForm operator+(const BinaryForm& x, const BinaryForm& y) {
    if (x.c.size() != y.c.size()) throw UsageError("BinaryForm degree mismatch");
    BinaryForm r = x;
    for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] += y.c[k];
    return r;
  }
  friend BinaryForm operator-(const BinaryForm& x, const BinaryForm& y) {
    if (x.c.size() != y.c.size()) throw UsageError("BinaryForm degree mismatch");
    BinaryForm r = x;
    for (std::size_t k = 0; k < r.c.size(); ++k) r.c[k] -= y.c[k];
    return r;
  }
  friend BinaryForm operator-(const BinaryForm& x) {
    BinaryForm r = x;
    for (auto& v : r.c) v = -v;
    return r;
  }
  friend BinaryForm operator*(const BinaryForm& x, const BinaryForm& y) {
    BinaryForm r(x.degree() + y.degree());
    for (std::size_t i = 0; i < x.c.size(); ++i)
      for (std::size_t j = 0; j < y.c.size(); ++j) r.c[i + j] += x.c[i] * y.c[j];
    return r;
  }
  friend BinaryForm operator*(const R& s, const BinaryForm& x) {
    BinaryForm r = x;
    for (auto& v : r.c) v = s * v;
    return r;
  }

  /// Evaluate at (q0, q1) in any ring S that accepts R coefficients through conv.
  template <class S, class Conv>
  S eval_with(const S& q0, const S& q1, Conv conv) const {
    S acc(0);
    const std::size_t n = degree();
    for (std::size_t k = 0; k < c.size(); ++k) {
      S t = conv(c[k]);
      for (std::size_t e = 0; e < n - k; ++e) t = t * q0;
      for (std::size_t e = 0; e < k; ++e) t = t * q1;
      acc = acc + t;
    }
    return acc;
  }
  R operator()(const R& q0, const R& q1) const {
    return eval_with<R>(q0, q1, [](const R& v) { return v; });
  }

  /// Divides by (q0^2 + q1^2) if possible.
  std::optional<BinaryForm> div_circle() const {
    const std::size_t n = degree();
    if (n < 2) return std::nullopt;
    BinaryForm g(n - 2);
    for (std::size_t k = 0; k <= n - 2; ++k) {
      g.c[k] = c[k];
      if (k >= 2) g.c[k] -= g.c[k - 2];
    }
    R top1 = n >= 3 ? g.c[n - 3] : R(0);
    if (!(c[n - 1] == top1) || !(c[n] == g.c[n - 2])) return std::nullopt;
    return g;
  }

  /// f(t) = F(1, t).
  UPoly<R> dehomogenize() const { return UPoly<R>(std::vector<R>(c.begin(), c.end())); }
};

/// Splits a homogeneous quadratic leg constraint into Q + L2 q2 + L3 q3 + 4 (q2^2 + q3^2).
/// The constant is homogenized with (q0^2 + q1^2) so that Q is a binary quadratic form.
template <class R>
struct LegParts {
  BinaryForm<R> Q{2}, L2{1}, L3{1};
};

template <class R>
LegParts<R> split_leg(const MPoly<R>& c) {
  LegParts<R> p;
  for (auto& [e, v] : c.terms()) {
    const int e0 = e[0], e1 = e[1], e2 = e[2], e3 = e[3];
    if (e2 == 0 && e3 == 0) {
      if (e0 + e1 == 2) p.Q.c[static_cast<std::size_t>(e1)] += v;
      else if (e0 + e1 == 0) {
        p.Q.c[0] += v;
        p.Q.c[2] += v;
      } else throw UsageError("leg constraint has an unexpected term");
    } else if (e2 == 1 && e3 == 0) {
      p.L2.c[static_cast<std::size_t>(e1)] += v;
    } else if (e2 == 0 && e3 == 1) {
      p.L3.c[static_cast<std::size_t>(e1)] += v;
    }
  }
  return p;
}

/// Univariate elimination in the rotation part (q0:q1).
template <class R>
struct Eliminant {
  LegParts<R> leg1;
  BinaryForm<R> A11, A12, A21, A22, b1, b2;
  BinaryForm<R> D, N2, N3;
  BinaryForm<R> F;  // degree-6 form, before removing circle factors
};

/// q2 = N2/D, q3 = N3/D from c1 - c2 and c1 - c3, substituted into c1 and cleared of D^2.
template <class R>
Eliminant<R> eliminant(const ConstraintSystem<R>& cs) {
  Eliminant<R> e;
  std::array<LegParts<R>, 3> p{split_leg(cs.c[1]), split_leg(cs.c[2]), split_leg(cs.c[3])};
  e.leg1 = p[0];
  e.A11 = p[0].L2 - p[1].L2;
  e.A12 = p[0].L3 - p[1].L3;
  e.b1 = p[1].Q - p[0].Q;
  e.A21 = p[0].L2 - p[2].L2;
  e.A22 = p[0].L3 - p[2].L3;
  e.b2 = p[2].Q - p[0].Q;
  e.D = e.A11 * e.A22 - e.A12 * e.A21;
  e.N2 = e.b1 * e.A22 - e.A12 * e.b2;
  e.N3 = e.A11 * e.b2 - e.b1 * e.A21;
  e.F = p[0].Q * e.D * e.D + (p[0].L2 * e.N2 + p[0].L3 * e.N3) * e.D + R(4) * (e.N2 * e.N2 + e.N3 * e.N3);
  return e;
}

/// Removes every (q0^2 + q1^2) factor; returns the reduced form and the number removed.
template <class R>
std::pair<BinaryForm<R>, int> strip_circle(BinaryForm<R> f) {
  int k = 0;
  while (!f.is_zero()) {
    auto g = f.div_circle();
    if (!g) break;
    f = std::move(*g);
    ++k;
  }
  return {f, k};
}

enum class DKStatus { Ok, SelfMotion, DegenerateElimination };

inline const char* to_string(DKStatus s) {
  switch (s) {
    case DKStatus::Ok: return "ok";
    case DKStatus::SelfMotion: return "self-motion";
    case DKStatus::DegenerateElimination: return "degenerate elimination";
  }
  return "?";
}

using CPose = std::array<std::complex<long double>, 4>;

struct DKSolution {
  CPose pose{};
  int multiplicity = 1;  // multiplicity of the rotation root (q0:q1) in the eliminant
  bool is_real = false;
  bool shared_rotation = false;  // several poses share this rotation root
  long double residual = 0;
};

struct DKResult {
  DKStatus status = DKStatus::Ok;
  std::string note;
  QPoly eliminant;          // F(1, t) after removing circle factors
  int circle_factors = 0;   // number of (q0^2 + q1^2) factors removed
  int infinity_multiplicity = 0;  // multiplicity of (q0:q1) = (0:1)
  std::vector<DKSolution> solutions;

  int total_multiplicity() const {
    int m = infinity_multiplicity;
    for (auto& r : eliminant_roots) m += r;
    return m;
  }
  std::vector<int> eliminant_roots;  // multiplicities of the finite roots in t
};

namespace detail {

using cld = std::complex<long double>;

inline cld eval_form(const BinaryForm<Rational>& f, cld q0, cld q1) {
  return f.eval_with<cld>(q0, q1, [](const Rational& v) { return cld(v.to_long_double(), 0); });
}

/// Largest |c_i| relative to the magnitude of its terms, at the pose normalized to q0^2 + q1^2 = 1.
inline long double pose_residual(const ConstraintSystem<Rational>& cs, const CPose& q) {
  cld n = std::sqrt(q[0] * q[0] + q[1] * q[1]);
  std::vector<cld> pt{q[0] / n, q[1] / n, q[2] / n, q[3] / n};
  long double worst = 0;
  for (std::size_t i = 1; i < 4; ++i) {
    cld v = cs.c[i].eval_with<cld>(pt, [](const Rational& c) { return cld(c.to_long_double(), 0); });
    long double scale = 1;
    for (auto& [e, c] : cs.c[i].terms()) scale = std::max(scale, std::abs(c.to_long_double()));
    worst = std::max(worst, std::abs(v) / scale);
  }
  return worst;
}

/// Solutions over a rotation (q0:q1) at which the 2x2 block is singular.
/// Returns nullopt for a self-motion (all three legs agree along a curve).
inline std::optional<std::vector<std::array<cld, 2>>> rank_deficient_solutions(const Eliminant<Rational>& e, cld q0, cld q1,
                                                                               long double tol) {
  cld a11 = eval_form(e.A11, q0, q1), a12 = eval_form(e.A12, q0, q1), a21 = eval_form(e.A21, q0, q1),
      a22 = eval_form(e.A22, q0, q1), b1 = eval_form(e.b1, q0, q1), b2 = eval_form(e.b2, q0, q1);
  cld Q = eval_form(e.leg1.Q, q0, q1), L2 = eval_form(e.leg1.L2, q0, q1), L3 = eval_form(e.leg1.L3, q0, q1);
  long double scale = std::max({1.0L, std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
  long double r1 = std::abs(a11) + std::abs(a12), r2 = std::abs(a21) + std::abs(a22);
  std::vector<std::array<cld, 2>> out;
  if (std::max(r1, r2) <= tol * scale) {
    if (std::abs(b1) + std::abs(b2) <= tol * std::max({1.0L, std::abs(b1), std::abs(b2), std::abs(Q)})) return std::nullopt;
    return out;  // inconsistent: no solution over this rotation
  }
  cld a1 = r1 >= r2 ? a11 : a21, a2 = r1 >= r2 ? a12 : a22, beta = r1 >= r2 ? b1 : b2;
  cld o1 = r1 >= r2 ? a21 : a11, o2 = r1 >= r2 ? a22 : a12, obeta = r1 >= r2 ? b2 : b1;
  if (std::abs(o1 * beta - a1 * obeta) + std::abs(o2 * beta - a2 * obeta) > tol * std::max(1.0L, std::abs(beta) * scale))
    return out;
  cld n = a1 * a1 + a2 * a2;
  // (q2, q3) = (beta a1 - u a2, beta a2 + u a1) / n; c1 * n = 4u^2 + (L3 a1 - L2 a2) u + n Q + beta (L2 a1 + L3 a2) + 4 beta^2
  cld A = 4.0L, B = L3 * a1 - L2 * a2, C = n * Q + beta * (L2 * a1 + L3 * a2) + 4.0L * beta * beta;
  cld disc = std::sqrt(B * B - 4.0L * A * C);
  for (cld u : {(-B + disc) / (2.0L * A), (-B - disc) / (2.0L * A)}) out.push_back({(beta * a1 - u * a2) / n, (beta * a2 + u * a1) / n});
  if (std::abs(out[0][0] - out[1][0]) + std::abs(out[0][1] - out[1][1]) <= 1e-12L * (1 + std::abs(out[0][0]) + std::abs(out[0][1])))
    out.pop_back();
  return out;
}

/// Consistency minors of the translation block when it has rank one for every rotation:
/// A11 b2 - A21 b1 and A12 b2 - A22 b1. Their common roots are the admissible rotations.
inline std::pair<BinaryForm<Rational>, BinaryForm<Rational>> rank_one_minors(const Eliminant<Rational>& e) {
  return {e.A11 * e.b2 - e.A21 * e.b1, e.A12 * e.b2 - e.A22 * e.b1};
}

/// Common factor of the minors in t = q1/q0 and the multiplicity of (0:1) as a common root.
inline std::pair<QPoly, int> rank_one_rotations(const Eliminant<Rational>& e) {
  auto [M1, M2] = rank_one_minors(e);
  auto drop = [](const BinaryForm<Rational>& f) {
    if (f.is_zero()) return std::numeric_limits<int>::max();
    return static_cast<int>(f.degree()) - f.dehomogenize().degree();
  };
  QPoly g;
  if (M1.is_zero()) g = M2.dehomogenize();
  else if (M2.is_zero()) g = M1.dehomogenize();
  else g = gcd(M1.dehomogenize(), M2.dehomogenize());
  g = strip_factor(g, QPoly{Rational(1), Rational(0), Rational(1)}).first;  // rotations with q0^2 + q1^2 = 0
  return {g, std::min(drop(M1), drop(M2))};
}

/// Exact leg-1 quadratic 4u^2 + B u + C along the solution line of the pivot row at a rational rotation;
/// u = a1 q3 - a2 q2 for the pivot row (a1, a2 | beta). Returns (B, C, u).
inline std::array<Rational, 3> rank_one_quadratic(const Eliminant<Rational>& e, const Rational& q0, const Rational& q1,
                                                  const Rational& q2, const Rational& q3) {
  Rational a1 = e.A11(q0, q1), a2 = e.A12(q0, q1), beta = e.b1(q0, q1);
  if (a1.is_zero() && a2.is_zero()) {
    a1 = e.A21(q0, q1);
    a2 = e.A22(q0, q1);
    beta = e.b2(q0, q1);
  }
  if (a1.is_zero() && a2.is_zero()) throw UsageError("translation block vanishes at this rotation");
  const Rational Q = e.leg1.Q(q0, q1), L2 = e.leg1.L2(q0, q1), L3 = e.leg1.L3(q0, q1);
  const Rational n = a1 * a1 + a2 * a2;
  return {L3 * a1 - L2 * a2, n * Q + beta * (L2 * a1 + L3 * a2) + Rational(4) * beta * beta, a1 * q3 - a2 * q2};
}

}  // namespace detail

namespace detail {

/// Direct kinematics when the translation block has rank at most one for every rotation.
/// Every pairing of leg differences yields the same 2x2 determinant, so no other order helps.
inline DKResult solve_rank_one(const ConstraintSystem<Rational>& cs, const Eliminant<Rational>& e) {
  DKResult res;
  if (e.A11.is_zero() && e.A12.is_zero() && e.A21.is_zero() && e.A22.is_zero()) {
    res.status = DKStatus::DegenerateElimination;
    res.note = "linear block in (q2, q3) vanishes for every rotation";
    return res;
  }
  auto [M1, M2] = rank_one_minors(e);
  if (M1.is_zero() && M2.is_zero()) {
    res.status = DKStatus::SelfMotion;
    res.note = "leg differences are dependent for every rotation";
    return res;
  }
  auto [g, inf] = rank_one_rotations(e);
  res.note = "translation block has rank one; rotations from the consistency minors";
  res.eliminant = g;
  res.infinity_multiplicity = inf;
  struct Rot {
    cld q0, q1;
    int mult;
    bool real;
  };
  std::vector<Rot> rots;
  if (inf > 0) rots.push_back({cld(0), cld(1), inf, true});
  if (g.degree() > 0)
    for (auto& [f, m] : squarefree_decomposition(g)) {
      auto reals = isolate_squarefree(f);
      for (auto& r : reals) {
        rots.push_back({cld(1), cld(r.to_long_double(), 0), m, true});
        res.eliminant_roots.push_back(m);
      }
      const int nc = f.degree() - static_cast<int>(reals.size());
      if (nc > 0) {
        auto zs = companion_roots(f);
        std::sort(zs.begin(), zs.end(), [](auto& x, auto& y) { return std::abs(x.imag()) > std::abs(y.imag()); });
        for (int i = 0; i < nc; ++i) {
          rots.push_back({cld(1), zs[static_cast<std::size_t>(i)], m, false});
          res.eliminant_roots.push_back(m);
        }
      }
    }
  for (auto& rot : rots) {
    auto rd = rank_deficient_solutions(e, rot.q0, rot.q1, 1e-12L);
    if (!rd) {
      res.status = DKStatus::SelfMotion;
      res.note = "legs coincide along a curve of translations (circular translation)";
      res.solutions.clear();
      return res;
    }
    for (auto& t : *rd) {
      DKSolution s;
      s.pose = {rot.q0, rot.q1, t[0], t[1]};
      s.multiplicity = rd->size() == 1 ? 2 * rot.mult : rot.mult;
      s.shared_rotation = rd->size() > 1;
      s.is_real = rot.real && std::abs(t[0].imag()) <= 1e-12L * (1 + std::abs(t[0])) &&
                  std::abs(t[1].imag()) <= 1e-12L * (1 + std::abs(t[1]));
      s.residual = pose_residual(cs, s.pose);
      res.solutions.push_back(s);
    }
  }
  return res;
}

}  // namespace detail

/// Direct kinematics: all solutions over C with multiplicities of their rotation roots.
inline DKResult solve_direct_kinematics(const ConstraintSystem<Rational>& cs) {
  using detail::cld;
  DKResult res;
  const Eliminant<Rational> e = eliminant(cs);
  if (e.D.is_zero()) return detail::solve_rank_one(cs, e);
  if (e.F.is_zero()) {
    res.status = DKStatus::SelfMotion;
    res.note = "eliminant vanishes identically";
    return res;
  }
  auto [Fr, k] = strip_circle(e.F);
  res.circle_factors = k;
  res.eliminant = Fr.dehomogenize();
  res.infinity_multiplicity = static_cast<int>(Fr.degree()) - res.eliminant.degree();

  struct Rot {
    cld q0, q1;
    int mult;
    bool real;
    std::optional<Rational> exact_t;  // q1/q0 when rational
    bool at_infinity;
  };
  std::vector<Rot> rots;
  if (res.infinity_multiplicity > 0) rots.push_back({cld(0), cld(1), res.infinity_multiplicity, true, std::nullopt, true});
  if (res.eliminant.degree() > 0) {
    for (auto& [f, m] : squarefree_decomposition(res.eliminant)) {
      auto reals = isolate_squarefree(f);
      for (auto& r : reals) {
        std::optional<Rational> ex;
        if (r.is_rational()) ex = r.exact();
        rots.push_back({cld(1), cld(r.to_long_double(), 0), m, true, ex, false});
        res.eliminant_roots.push_back(m);
      }
      const int nc = f.degree() - static_cast<int>(reals.size());
      if (nc > 0) {
        auto zs = detail::companion_roots(f);
        std::sort(zs.begin(), zs.end(), [](auto& x, auto& y) { return std::abs(x.imag()) > std::abs(y.imag()); });
        for (int i = 0; i < nc; ++i) {
          rots.push_back({cld(1), zs[static_cast<std::size_t>(i)], m, false, std::nullopt, false});
          res.eliminant_roots.push_back(m);
        }
      }
    }
  }

  for (auto& rot : rots) {
    bool singular;
    if (rot.at_infinity) singular = e.D.c[2].is_zero();
    else if (rot.exact_t) singular = e.D(Rational(1), *rot.exact_t).is_zero();
    else {
      cld dv = detail::eval_form(e.D, rot.q0, rot.q1);
      long double sc = 0;
      for (auto& v : e.D.c) sc = std::max(sc, std::abs(v.to_long_double()));
      singular = std::abs(dv) <= 1e-12L * sc * std::max(1.0L, std::pow(std::abs(rot.q1), 2.0L));
    }
    std::vector<std::array<cld, 2>> trans;
    if (!singular) {
      cld d = detail::eval_form(e.D, rot.q0, rot.q1);
      trans.push_back({detail::eval_form(e.N2, rot.q0, rot.q1) / d, detail::eval_form(e.N3, rot.q0, rot.q1) / d});
    } else {
      auto rd = detail::rank_deficient_solutions(e, rot.q0, rot.q1, 1e-12L);
      if (!rd) {
        res.status = DKStatus::SelfMotion;
        res.note = "legs coincide along a curve of translations (circular translation)";
        res.solutions.clear();
        return res;
      }
      trans = *rd;
    }
    for (auto& t : trans) {
      DKSolution s;
      s.pose = {rot.q0, rot.q1, t[0], t[1]};
      s.multiplicity = rot.mult;
      s.shared_rotation = trans.size() > 1;
      s.is_real = rot.real && std::abs(t[0].imag()) <= 1e-12L * (1 + std::abs(t[0])) &&
                  std::abs(t[1].imag()) <= 1e-12L * (1 + std::abs(t[1]));
      s.residual = detail::pose_residual(cs, s.pose);
      res.solutions.push_back(s);
    }
  }
  return res;
}

/// Exact test that a rational pose solves c1 = c2 = c3 = 0 (c0 is imposed projectively).
inline bool is_solution(const ConstraintSystem<Rational>& cs, const PlanarPose& pose) {
  const Rational n = pose[0] * pose[0] + pose[1] * pose[1];
  std::vector<Rational> pt{pose[0], pose[1], pose[2], pose[3]};
  for (std::size_t i = 1; i < 4; ++i) {
    // homogenize the constant with n
    Rational v(0);
    for (auto& [e, c] : cs.c[i].terms()) {
      Rational t = c;
      int deg = 0;
      for (std::size_t j = 0; j < 4; ++j)
        for (int m = 0; m < e[j]; ++m) {
          t *= pt[j];
          ++deg;
        }
      if (deg == 0) t *= n;
      v += t;
    }
    if (!v.is_zero()) return false;
  }
  return true;
}

struct OrderResult {
  bool self_motion = false;
  int order = 0;
  int multiplicity = 1;
  bool shared_rotation = false;
};

/// Flexion order as (multiplicity of the pose's rotation root in the eliminant) - 1.
inline OrderResult flexion_order_by_multiplicity(const ConstraintSystem<Rational>& cs, const PlanarPose& pose) {
  if (!is_solution(cs, pose)) throw UsageError("pose is not a solution of the constraint system");
  OrderResult out;
  const Eliminant<Rational> e = eliminant(cs);
  if (e.D.is_zero()) {
    // rank-one block: multiplicity of the rotation in the consistency minors times that of u
    auto [M1, M2] = detail::rank_one_minors(e);
    if (M1.is_zero() && M2.is_zero()) {
      out.self_motion = true;
      return out;
    }
    auto [g, inf] = detail::rank_one_rotations(e);
    const int k = pose[0].is_zero() ? inf : root_multiplicity(g, pose[1] / pose[0]);
    auto [B, C, u] = detail::rank_one_quadratic(e, pose[0], pose[1], pose[2], pose[3]);
    if (!(Rational(4) * u * u + B * u + C).is_zero()) throw VerificationFailure("pose is off the rank-one solution line");
    const Rational disc = B * B - Rational(16) * C;
    out.shared_rotation = !disc.is_zero();
    out.multiplicity = k * (disc.is_zero() ? 2 : 1);
    out.order = out.multiplicity - 1;
    return out;
  }
  if (e.F.is_zero()) {
    out.self_motion = true;
    return out;
  }
  if (e.D(pose[0], pose[1]).is_zero()) {
    using detail::cld;
    auto rd = detail::rank_deficient_solutions(e, cld(pose[0].to_long_double()), cld(pose[1].to_long_double()), 1e-15L);
    if (!rd) {
      out.self_motion = true;
      return out;
    }
    out.shared_rotation = rd->size() > 1;
  }
  auto [Fr, k] = strip_circle(e.F);
  if (pose[0].is_zero()) {
    out.multiplicity = static_cast<int>(Fr.degree()) - Fr.dehomogenize().degree();
  } else {
    out.multiplicity = root_multiplicity(Fr.dehomogenize(), pose[1] / pose[0]);
  }
  out.order = out.multiplicity - 1;
  return out;
}

}  // namespace flexkin

#endif  // FLEXKIN_KINEMATICS_HPP
