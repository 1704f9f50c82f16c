#ifndef FLEXKIN_STACHEL_HPP
#define FLEXKIN_STACHEL_HPP

#include <cmath>
#include <optional>
#include <string>

#include "flexkin/design.hpp"
#include "flexkin/geometry.hpp"

namespace flexkin {

enum class StachelMode { Copunctal, Parallel, Inapplicable };

inline const char* to_string(StachelMode m) {
  switch (m) {
    case StachelMode::Copunctal: return "Copunctal";
    case StachelMode::Parallel: return "Parallel";
    case StachelMode::Inapplicable: return "Inapplicable";
  }
  return "?";
}

using LPoint = Point2<long double>;

struct StachelReport {
  StachelMode mode = StachelMode::Inapplicable;
  std::optional<LPoint> L, Q25, Q36;
  long double alpha = 0, beta = 0;  // oriented line angles (copunctal) or oriented distances (parallel)
  bool passes = false;
  long double residual = 0;
  std::optional<bool> exact_verdict;  // decided without rounding on rational input
  int relabel_shift = 0;              // cyclic shift of the leg labels that was used
  bool collinear_degenerate = false;  // five anchors on one line
  std::string note;
};

namespace detail {

inline long double ld(const Rational& x) { return x.to_long_double(); }
inline long double ld(long double x) { return x; }
template <class T>
LPoint ld(const Point2<T>& p) {
  return {ld(p.a), ld(p.b)};
}

/// Homogeneous line through two points.
template <class T>
struct HLine {
  T A, B, C;
};
template <class T>
HLine<T> line_through(const Point2<T>& p, const Point2<T>& q) {
  return {p.b - q.b, q.a - p.a, p.a * q.b - p.b * q.a};
}

template <class T>
struct HPoint {
  T x, y, w;
};
template <class T>
HPoint<T> meet(const HLine<T>& l, const HLine<T>& m) {
  return {l.B * m.C - l.C * m.B, l.C * m.A - l.A * m.C, l.A * m.B - l.B * m.A};
}

template <class T>
struct ZeroTest;
template <>
struct ZeroTest<Rational> {
  long double scale = 1;
  bool operator()(const Rational& x, int) const { return x.is_zero(); }
};
template <>
struct ZeroTest<long double> {
  long double scale = 1;  // coordinate magnitude
  bool operator()(long double x, int degree) const { return std::fabs(x) <= 1e-9L * std::pow(scale, degree); }
};

/// Oriented angle from line direction u to line direction v, reduced to (-pi/2, pi/2].
inline long double line_angle(const LPoint& u, const LPoint& v) {
  long double a = std::atan2(u.a * v.b - u.b * v.a, u.a * v.a + u.b * v.b);
  const long double pi = std::acos(-1.0L);
  while (a > pi / 2) a -= pi;
  while (a <= -pi / 2) a += pi;
  return a;
}

inline long double reduce_mod_pi(long double a) {
  const long double pi = std::acos(-1.0L);
  a = std::fmod(a, pi);
  if (a > pi / 2) a -= pi;
  if (a <= -pi / 2) a += pi;
  return a;
}

template <class T>
bool exact_verdict_supported() {
  return std::is_same<T, Rational>::value;
}

}  // namespace detail

/// Stachel's geometric second-order test on the leg lines [x1 x4], [x2 x5], [x3 x6].
template <class T>
StachelReport stachel_check(const SixConfig<T>& cfg, long double tol = 1e-9L) {
  using namespace detail;
  StachelReport rep;
  long double scale = 1;
  for (auto& p : cfg.pts) scale = std::max({scale, std::fabs(ld(p.a)), std::fabs(ld(p.b))});
  ZeroTest<T> zero;
  zero.scale = scale;

  for (std::size_t i = 0; i < 3; ++i)
    if (zero(cfg.pts[i].a - cfg.pts[i + 3].a, 1) && zero(cfg.pts[i].b - cfg.pts[i + 3].b, 1)) {
      rep.note = "leg " + std::to_string(i + 1) + " has zero length";
      return rep;
    }

  // five of the six anchors on one line: both angles vanish
  for (std::size_t skip = 0; skip < 6; ++skip) {
    std::vector<Point2<T>> pts;
    for (std::size_t k = 0; k < 6; ++k)
      if (k != skip) pts.push_back(cfg.pts[k]);
    std::size_t j = 1;
    while (j < pts.size() && zero(pts[j].a - pts[0].a, 1) && zero(pts[j].b - pts[0].b, 1)) ++j;
    if (j == pts.size()) continue;
    bool all = true;
    for (std::size_t k = 1; k < pts.size(); ++k) all = all && zero(orient(pts[0], pts[j], pts[k]), 2);
    if (all) {
      rep.mode = StachelMode::Copunctal;
      rep.passes = true;
      rep.collinear_degenerate = true;
      if (exact_verdict_supported<T>()) rep.exact_verdict = true;
      rep.note = "five anchor points collinear: alpha = beta = 0";
      return rep;
    }
  }

  std::array<HLine<T>, 3> leg;
  for (std::size_t i = 0; i < 3; ++i) leg[i] = line_through(cfg.pts[i], cfg.pts[i + 3]);
  auto parallel = [&](std::size_t i, std::size_t j) { return zero(leg[i].A * leg[j].B - leg[i].B * leg[j].A, 2); };
  std::optional<HPoint<T>> Lh;
  if (parallel(0, 1) && parallel(1, 2) && parallel(0, 2)) {
    rep.mode = StachelMode::Parallel;
  } else {
    const T det = leg[0].A * (leg[1].B * leg[2].C - leg[1].C * leg[2].B) - leg[0].B * (leg[1].A * leg[2].C - leg[1].C * leg[2].A) +
                  leg[0].C * (leg[1].A * leg[2].B - leg[1].B * leg[2].A);
    if (!zero(det, 4)) {
      rep.note = "leg lines are neither copunctal nor parallel";
      return rep;
    }
    rep.mode = StachelMode::Copunctal;
    for (auto [i, j] : {std::pair<int, int>{0, 1}, {0, 2}, {1, 2}})
      if (!parallel(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        Lh = meet(leg[static_cast<std::size_t>(i)], leg[static_cast<std::size_t>(j)]);
        break;
      }
    rep.L = LPoint{ld(Lh->x) / ld(Lh->w), ld(Lh->y) / ld(Lh->w)};
  }

  for (int shift = 0; shift < 3; ++shift) {
    auto X = [&](int k) {  // 1-based label after the cyclic shift
      const int leg_i = ((k - 1) % 3 + shift) % 3;
      return cfg.pts[static_cast<std::size_t>(leg_i + (k > 3 ? 3 : 0))];
    };
    const HPoint<T> q25 = meet(line_through(X(1), X(2)), line_through(X(4), X(5)));
    const HPoint<T> q36 = meet(line_through(X(1), X(3)), line_through(X(4), X(6)));
    if (zero(q25.w, 2) || zero(q36.w, 2)) continue;
    const LPoint Q25{ld(q25.x) / ld(q25.w), ld(q25.y) / ld(q25.w)};
    const LPoint Q36{ld(q36.x) / ld(q36.w), ld(q36.y) / ld(q36.w)};
    const LPoint d25 = ld(X(5) - X(2)), d36 = ld(X(6) - X(3));
    if (rep.mode == StachelMode::Copunctal) {
      // directions L -> Q as homogeneous differences, scaled by w_L * w_Q
      auto dir = [&](const HPoint<T>& q) {
        return Point2<T>{q.x * Lh->w - Lh->x * q.w, q.y * Lh->w - Lh->y * q.w};
      };
      const Point2<T> v25 = dir(q25), v36 = dir(q36);
      if ((zero(v25.a, 4) && zero(v25.b, 4)) || (zero(v36.a, 4) && zero(v36.b, 4))) continue;
      rep.alpha = line_angle(d25, ld(v25));
      rep.beta = line_angle(d36, ld(v36));
      rep.residual = std::fabs(reduce_mod_pi(rep.alpha - rep.beta));
      if (exact_verdict_supported<T>()) {
        const Point2<T> u2 = X(5) - X(2), u3 = X(6) - X(3);
        // sin(alpha - beta) = 0 up to positive factors
        const T lhs = cross(u2, v25) * dot(u3, v36) - cross(u3, v36) * dot(u2, v25);
        rep.exact_verdict = zero(lhs, 0);
      }
      rep.passes = rep.residual <= tol;
    } else {
      const LPoint u = ld(X(4) - X(1));
      const long double n = std::hypot(u.a, u.b);
      auto odist = [&](const LPoint& q, const LPoint& on) { return (u.a * (q.b - on.b) - u.b * (q.a - on.a)) / n; };
      rep.alpha = odist(Q25, ld(X(2)));
      rep.beta = odist(Q36, ld(X(3)));
      rep.residual = std::fabs(rep.alpha - rep.beta);
      if (exact_verdict_supported<T>()) {
        const Point2<T> w = X(4) - X(1);
        // cross(w, Q - x) with Q = (qx/qw, qy/qw), compared after clearing qw
        const T c25 = (w.a * (q25.y - X(2).b * q25.w) - w.b * (q25.x - X(2).a * q25.w)) * q36.w;
        const T c36 = (w.a * (q36.y - X(3).b * q36.w) - w.b * (q36.x - X(3).a * q36.w)) * q25.w;
        rep.exact_verdict = zero(c25 - c36, 0);
      }
      rep.passes = rep.residual <= tol * scale;
    }
    rep.Q25 = Q25;
    rep.Q36 = Q36;
    rep.relabel_shift = shift;
    return rep;
  }
  rep.mode = StachelMode::Inapplicable;
  rep.note = "auxiliary intersection points are at infinity for every cyclic labelling";
  return rep;
}

}  // namespace flexkin

#endif  // FLEXKIN_STACHEL_HPP
