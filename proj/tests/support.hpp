#ifndef FLEXKIN_TESTS_SUPPORT_HPP
#define FLEXKIN_TESTS_SUPPORT_HPP

#include <cmath>
#include <complex>
#include <random>
#include <string>

#include "flexkin/design.hpp"
#include "flexkin/geometry.hpp"
#include "flexkin/kinematics.hpp"
#include "flexkin/rational.hpp"

namespace testsupport {

using flexkin::QConfig;
using flexkin::QDesign;
using flexkin::QPoint;
using flexkin::Rational;

inline std::string data_path(const std::string& name) { return std::string(FLEXKIN_TEST_DATA) + "/" + name; }

inline Rational rand_q(std::mt19937_64& rng, int range = 20, int den = 10) {
  std::uniform_int_distribution<long> n(-range, range), d(1, den);
  return Rational(n(rng), d(rng));
}
inline QPoint rand_point(std::mt19937_64& rng) { return {rand_q(rng), rand_q(rng)}; }

inline QConfig rand_config(std::mt19937_64& rng) {
  QConfig c;
  for (auto& p : c.pts) p = rand_point(rng);
  return c;
}

inline flexkin::PlanarPose rand_pose(std::mt19937_64& rng) {
  for (;;) {
    Rational q0 = rand_q(rng), q1 = rand_q(rng);
    if (q0.is_zero() && q1.is_zero()) continue;
    return {q0, q1, rand_q(rng), rand_q(rng)};
  }
}

/// Random design whose leg lengths come from a random rational pose, so at least one real
/// assembly exists. Anchor triples are kept non-collinear.
inline QDesign rand_design(std::mt19937_64& rng) {
  for (;;) {
    QDesign d;
    for (std::size_t i = 0; i < 3; ++i) {
      d.base[i] = rand_point(rng);
      d.platform[i] = rand_point(rng);
    }
    if (flexkin::orient(d.base[0], d.base[1], d.base[2]).is_zero()) continue;
    if (flexkin::orient(d.platform[0], d.platform[1], d.platform[2]).is_zero()) continue;
    const auto pose = rand_pose(rng);
    bool ok = true;
    for (std::size_t i = 0; i < 3; ++i) {
      d.leg2[i] = flexkin::dist2(d.base[i], flexkin::bg_transform(pose, d.platform[i]));
      ok = ok && d.leg2[i] > Rational(0);
    }
    if (ok) return d;
  }
}

using LD = long double;
struct LPt {
  LD a, b;
};

inline LPt ld(const QPoint& p) { return {p.a.to_long_double(), p.b.to_long_double()}; }

/// Real pose applied to a platform point; the pose need not be normalized.
inline LPt image(const flexkin::CPose& q, const LPt& p) {
  const LD q0 = q[0].real(), q1 = q[1].real(), q2 = q[2].real(), q3 = q[3].real();
  const LD n = q0 * q0 + q1 * q1, c = q0 * q0 - q1 * q1, s = 2 * q0 * q1;
  return {(c * p.a - s * p.b + 2 * (q1 * q2 + q0 * q3)) / n, (s * p.a + c * p.b + 2 * (q1 * q3 - q0 * q2)) / n};
}

/// Largest |distance - leg length| over the three legs at a real pose.
inline LD leg_length_error(const QDesign& d, const flexkin::CPose& q) {
  LD worst = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    const LPt b = ld(d.base[i]), x = image(q, ld(d.platform[i]));
    const LD dist = std::hypot(b.a - x.a, b.b - x.b);
    worst = std::max(worst, std::fabs(dist - std::sqrt(d.leg2[i].to_long_double())));
  }
  return worst;
}

/// Number of real assemblies counted by sign changes over a sweep of the rotation angle.
/// For each angle the differences of the leg equations fix the translation linearly; the remaining
/// leg-1 equation, multiplied by the squared determinant, is a continuous function of the angle.
inline int sweep_real_count(const QDesign& d, int steps = 200000) {
  LPt b[3], p[3];
  LD r2[3];
  for (std::size_t i = 0; i < 3; ++i) {
    b[i] = ld(d.base[i]);
    p[i] = ld(d.platform[i]);
    r2[i] = d.leg2[i].to_long_double();
  }
  const LD pi = std::acos(-1.0L);
  auto g = [&](LD th) {
    const LD c = std::cos(th), s = std::sin(th);
    LPt w[3];
    for (int i = 0; i < 3; ++i) w[i] = {b[i].a - (c * p[i].a - s * p[i].b), b[i].b - (s * p[i].a + c * p[i].b)};
    auto n2 = [](const LPt& v) { return v.a * v.a + v.b * v.b; };
    // 2 (w_i - w_1) . v = |w_i|^2 - |w_1|^2 - r_i^2 + r_1^2
    const LD m11 = 2 * (w[1].a - w[0].a), m12 = 2 * (w[1].b - w[0].b);
    const LD m21 = 2 * (w[2].a - w[0].a), m22 = 2 * (w[2].b - w[0].b);
    const LD h1 = n2(w[1]) - n2(w[0]) - r2[1] + r2[0], h2 = n2(w[2]) - n2(w[0]) - r2[2] + r2[0];
    const LD det = m11 * m22 - m12 * m21;
    const LD va = m22 * h1 - m12 * h2, vb = -m21 * h1 + m11 * h2;  // det * v
    const LD ea = det * w[0].a - va, eb = det * w[0].b - vb;
    return ea * ea + eb * eb - det * det * r2[0];
  };
  int changes = 0;
  LD prev = g(0);
  for (int k = 1; k <= steps; ++k) {
    const LD cur = g(2 * pi * k / steps);
    if ((prev < 0) != (cur < 0)) ++changes;
    prev = cur;
  }
  return changes;
}

}  // namespace testsupport

#endif  // FLEXKIN_TESTS_SUPPORT_HPP
