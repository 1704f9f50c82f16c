#ifndef FLEXKIN_FLEXION_HPP
#define FLEXKIN_FLEXION_HPP

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "flexkin/det.hpp"
#include "flexkin/kinematics.hpp"
#include "flexkin/roots.hpp"

namespace flexkin {

enum class FlexionClass { Order0, Order1, OrderAtLeast2, SingularV1 };

inline const char* to_string(FlexionClass c) {
  switch (c) {
    case FlexionClass::Order0: return "Order0";
    case FlexionClass::Order1: return "Order1";
    case FlexionClass::OrderAtLeast2: return "OrderAtLeast2";
    case FlexionClass::SingularV1: return "SingularV1";
  }
  return "?";
}

/// s = det(grad c0, .., grad c3) as a polynomial in q0..q3.
template <class R>
MPoly<R> rigidity_det(const ConstraintSystem<R>& cs) {
  Matrix<MPoly<R>> m;
  for (auto& c : cs.c) m.push_back(c.gradient());
  return determinant(m);
}

/// s_k = det of the three gradients other than grad c_k, bordered by grad s.
template <class R>
std::array<MPoly<R>, 4> second_order_generators(const ConstraintSystem<R>& cs, const MPoly<R>& s) {
  std::array<std::vector<MPoly<R>>, 4> g;
  for (std::size_t i = 0; i < 4; ++i) g[i] = cs.c[i].gradient();
  const auto gs = s.gradient();
  std::array<MPoly<R>, 4> out;
  for (std::size_t k = 0; k < 4; ++k) {
    Matrix<MPoly<R>> m;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != k) m.push_back(g[i]);
    m.push_back(gs);
    out[k] = determinant(m);
  }
  return out;
}
template <class R>
std::array<MPoly<R>, 4> second_order_generators(const ConstraintSystem<R>& cs) {
  return second_order_generators(cs, rigidity_det(cs));
}

/// Values of s, grad s and s_0..s_3 at one pose.
template <class R>
struct GeneratorValues {
  R s{};
  std::array<R, 4> grad_s{};
  std::array<R, 4> s_i{};
};

/// Pointwise evaluation. Each c_i is a quadratic form plus a constant, so grad c_i = H_i q and
/// ds/dq_k = sum_r det(rows with row r replaced by column k of H_r) (Jacobi's formula).
template <class R>
GeneratorValues<R> generators_at(const ConstraintSystem<R>& cs, const std::array<R, 4>& q) {
  std::array<std::array<std::array<R, 4>, 4>, 4> H;
  for (std::size_t i = 0; i < 4; ++i) H[i] = hessian(cs.c[i]);
  Matrix<R> G(4, std::vector<R>(4));
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t j = 0; j < 4; ++j) {
      R acc{};
      for (std::size_t l = 0; l < 4; ++l)
        if (!detail::zero(q[l])) acc += H[r][j][l] * q[l];
      G[r][j] = acc;
    }
  GeneratorValues<R> v;
  v.s = det_cofactor(G);
  for (std::size_t k = 0; k < 4; ++k) {
    R acc{};
    for (std::size_t r = 0; r < 4; ++r) {
      Matrix<R> m = G;
      for (std::size_t j = 0; j < 4; ++j) m[r][j] = H[r][j][k];
      acc += det_cofactor(m);
    }
    v.grad_s[k] = acc;
  }
  for (std::size_t k = 0; k < 4; ++k) {
    Matrix<R> m;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != k) m.push_back(G[i]);
    m.push_back(std::vector<R>(v.grad_s.begin(), v.grad_s.end()));
    v.s_i[k] = det_cofactor(m);
  }
  return v;
}

/// Same values through the full polynomials (slow path, used for cross-checks).
template <class R>
GeneratorValues<R> generators_at_via_polynomials(const ConstraintSystem<R>& cs, const std::array<R, 4>& q) {
  const MPoly<R> s = rigidity_det(cs);
  const auto si = second_order_generators(cs, s);
  std::vector<R> pt(q.begin(), q.end());
  GeneratorValues<R> v;
  v.s = s(pt);
  for (std::size_t k = 0; k < 4; ++k) {
    v.grad_s[k] = s.partial(k)(pt);
    v.s_i[k] = si[k](pt);
  }
  return v;
}

/// Classification from values and a zero predicate.
template <class R, class IsZero>
FlexionClass classify_values(const GeneratorValues<R>& v, IsZero is_zero_at) {
  if (!is_zero_at(v.s)) return FlexionClass::Order0;
  bool grad_zero = true;
  for (auto& g : v.grad_s) grad_zero = grad_zero && is_zero_at(g);
  if (grad_zero) return FlexionClass::SingularV1;
  for (auto& g : v.s_i)
    if (!is_zero_at(g)) return FlexionClass::Order1;
  return FlexionClass::OrderAtLeast2;
}

struct FlexionReport {
  Rational s_at_pose;
  std::array<Rational, 4> grad_s_at_pose;
  std::array<Rational, 4> s_i_at_pose;
  FlexionClass classification = FlexionClass::Order0;
};

template <class R>
std::array<R, 4> identity_pose() {
  return {R(1), R(0), R(0), R(0)};
}

template <class R>
ConstraintSystem<R> induced_system(const SixConfig<R>& config) {
  return build_constraints(ManipulatorDesign<R>::from_config(config));
}

/// Evaluates s, grad s, s_i at (1:0:0:0) of the design induced by the configuration.
inline FlexionReport classify_configuration(const QConfig& config) {
  for (std::size_t i = 0; i < 3; ++i)
    if (config.pts[i] == config.pts[i + 3]) throw InvalidConfig("leg " + std::to_string(i + 1) + " has zero length");
  auto v = generators_at(induced_system(config), identity_pose<Rational>());
  FlexionReport r;
  r.s_at_pose = v.s;
  r.grad_s_at_pose = v.grad_s;
  r.s_i_at_pose = v.s_i;
  r.classification = classify_values(v, [](const Rational& x) { return x.is_zero(); });
  return r;
}

/// A one-parameter pencil of configurations with coordinates polynomial in a parameter.
using LineConfig = SixConfig<QPoly>;

inline GeneratorValues<QPoly> line_generators(const LineConfig& line) {
  return generators_at(induced_system(line), identity_pose<QPoly>());
}

/// Exact classification of the pencil member at an algebraic parameter value.
inline FlexionClass classify_at(const GeneratorValues<QPoly>& v, const AlgebraicReal& t) {
  return classify_values(v, [&](const QPoly& g) { return t.is_root_of(g); });
}
inline FlexionClass classify_at(const GeneratorValues<QPoly>& v, const Rational& t) {
  return classify_values(v, [&](const QPoly& g) { return g(t).is_zero(); });
}

template <class T>
SixConfig<T> evaluate_line(const LineConfig& line, const T& t) {
  SixConfig<T> c;
  for (std::size_t k = 0; k < 6; ++k) c.pts[k] = {line.pts[k].a.eval_approx(t), line.pts[k].b.eval_approx(t)};
  return c;
}
inline QConfig evaluate_line(const LineConfig& line, const Rational& t) {
  QConfig c;
  for (std::size_t k = 0; k < 6; ++k) c.pts[k] = {line.pts[k].a(t), line.pts[k].b(t)};
  return c;
}

/// Multiplicity of the identity rotation root in the eliminant of the pencil member at t.
/// Coefficients of the eliminant live in Q[t]; the multiplicity is the first index whose
/// coefficient does not vanish at t. Returns nullopt when the eliminant vanishes at t.
template <class ZeroAt>
std::optional<int> identity_multiplicity_on_line(const LineConfig& line, ZeroAt zero_at) {
  const Eliminant<QPoly> e = eliminant(induced_system(line));
  // the eliminant is only meaningful where the translation block is regular somewhere
  if (std::all_of(e.D.c.begin(), e.D.c.end(), [&](const QPoly& g) { return zero_at(g); })) return std::nullopt;
  for (std::size_t k = 0; k < e.F.c.size(); ++k)
    if (!zero_at(e.F.c[k])) return static_cast<int>(k);
  return std::nullopt;
}
inline std::optional<int> identity_multiplicity_on_line(const LineConfig& line, const AlgebraicReal& t) {
  return identity_multiplicity_on_line(line, [&](const QPoly& g) { return t.is_root_of(g); });
}

/// Relative size |g(z)| / sum |g_k| |z|^k, a scale-free zero measure.
inline long double relative_value(const QPoly& g, std::complex<long double> z) {
  if (g.is_zero()) return 0;
  long double scale = 0, zk = 1;
  for (auto& c : g.coeffs()) {
    scale += std::abs(c.to_long_double()) * zk;
    zk *= std::abs(z);
  }
  return std::abs(g.eval_approx(z)) / scale;
}

struct SpotcheckSample {
  std::complex<long double> t;
  long double s_residual = 0;
  long double grad_residual = 0;
  bool passes = false;
};

struct SpotcheckReport {
  bool identically_zero = false;  // all generators vanish on the pencil (self-motion family)
  bool division_ok = true;        // condition polynomial divides every generator
  std::string note;
  std::vector<SpotcheckSample> samples;  // common zeros of the reduced generators
  bool passes() const {
    if (!division_ok || identically_zero) return false;
    for (auto& s : samples)
      if (!s.passes) return false;
    return true;
  }
};

/// Divides every generator on the pencil by the condition polynomial and checks that each common
/// zero of the quotients s*, s_i* is a singular point: s = 0 and grad s = 0 (relative tol).
inline SpotcheckReport singularity_spotcheck(const LineConfig& line, const QPoly& condition, long double tol = 1e-9L) {
  SpotcheckReport rep;
  const auto v = line_generators(line);
  std::vector<QPoly> gens{v.s};
  for (auto& g : v.s_i) gens.push_back(g);
  std::vector<QPoly> reduced;
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (condition.degree() > 0) {
      if (!divides(condition, g)) {
        rep.division_ok = false;
        rep.note = "condition polynomial does not divide every generator";
        return rep;
      }
      reduced.push_back(exact_div(g, condition));
    } else {
      reduced.push_back(g);
    }
  }
  if (reduced.empty()) {
    rep.identically_zero = true;
    rep.note = "all generators vanish identically on the pencil";
    return rep;
  }
  QPoly common = reduced[0];
  for (std::size_t i = 1; i < reduced.size(); ++i) common = gcd(common, reduced[i]);
  if (common.degree() <= 0) {
    rep.note = "reduced generators have no common zero";
    return rep;
  }
  for (auto& r : complex_roots(squarefree_part(common))) {
    SpotcheckSample smp;
    smp.t = r.z;
    smp.s_residual = relative_value(v.s, r.z);
    for (auto& g : v.grad_s) smp.grad_residual = std::max(smp.grad_residual, relative_value(g, r.z));
    smp.passes = smp.s_residual < tol && smp.grad_residual < tol;
    rep.samples.push_back(smp);
  }
  return rep;
}

}  // namespace flexkin

#endif  // FLEXKIN_FLEXION_HPP
