#ifndef FLEXKIN_GEOMETRY_HPP
#define FLEXKIN_GEOMETRY_HPP

#include <array>
#include <optional>
#include <ostream>
#include <vector>

#include "flexkin/error.hpp"
#include "flexkin/rational.hpp"

namespace flexkin {

template <class T>
struct Point2 {
  T a{};
  T b{};

  friend Point2 operator+(const Point2& p, const Point2& q) { return {p.a + q.a, p.b + q.b}; }
  friend Point2 operator-(const Point2& p, const Point2& q) { return {p.a - q.a, p.b - q.b}; }
  friend Point2 operator-(const Point2& p) { return {-p.a, -p.b}; }
  friend Point2 operator*(const T& s, const Point2& p) { return {s * p.a, s * p.b}; }
  friend bool operator==(const Point2& p, const Point2& q) { return p.a == q.a && p.b == q.b; }
  friend std::ostream& operator<<(std::ostream& os, const Point2& p) { return os << "(" << p.a << ", " << p.b << ")"; }
};

using QPoint = Point2<Rational>;

template <class T>
T dot(const Point2<T>& p, const Point2<T>& q) {
  return p.a * q.a + p.b * q.b;
}
template <class T>
T cross(const Point2<T>& p, const Point2<T>& q) {
  return p.a * q.b - p.b * q.a;
}
template <class T>
T norm2(const Point2<T>& p) {
  return dot(p, p);
}
template <class T>
T dist2(const Point2<T>& p, const Point2<T>& q) {
  return norm2(p - q);
}

/// Half the cross product of (q - p) and (r - p).
template <class T>
T signed_area(const Point2<T>& p, const Point2<T>& q, const Point2<T>& r) {
  return cross(q - p, r - p) / T(2);
}
/// Twice the signed area; division free, usable over polynomial rings.
template <class T>
T orient(const Point2<T>& p, const Point2<T>& q, const Point2<T>& r) {
  return cross(q - p, r - p);
}

template <class T>
Point2<T> midpoint(const Point2<T>& p, const Point2<T>& q) {
  return {(p.a + q.a) / T(2), (p.b + q.b) / T(2)};
}

/// Homogeneous Blaschke-Gruenwald quadruple (q0:q1:q2:q3), (q0, q1) != (0, 0).
class PlanarPose {
 public:
  PlanarPose(Rational q0, Rational q1, Rational q2, Rational q3) : q_{std::move(q0), std::move(q1), std::move(q2), std::move(q3)} {
    if (q_[0].is_zero() && q_[1].is_zero()) throw InvalidPose("pose on the excluded line q0 = q1 = 0");
    const Rational& lead = q_[0].is_zero() ? q_[1] : q_[0];
    if (lead.sign() < 0)
      for (auto& x : q_) x = -x;
  }
  static PlanarPose identity() { return {1, 0, 0, 0}; }
  /// Rotation about the origin (e0:e1:0:0).
  static PlanarPose rotation(Rational e0, Rational e1) { return {std::move(e0), std::move(e1), 0, 0}; }

  const Rational& operator[](std::size_t i) const { return q_.at(i); }
  const std::array<Rational, 4>& coords() const { return q_; }

  /// Projective equality.
  friend bool operator==(const PlanarPose& x, const PlanarPose& y) {
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        if (x.q_[i] * y.q_[j] != x.q_[j] * y.q_[i]) return false;
    return true;
  }
  friend std::ostream& operator<<(std::ostream& os, const PlanarPose& p) {
    return os << "(" << p.q_[0] << ":" << p.q_[1] << ":" << p.q_[2] << ":" << p.q_[3] << ")";
  }

 private:
  std::array<Rational, 4> q_;
};

/// Image of a moving-frame point under the pose.
inline QPoint bg_transform(const PlanarPose& pose, const QPoint& p) {
  const Rational &q0 = pose[0], &q1 = pose[1], &q2 = pose[2], &q3 = pose[3];
  const Rational n = q0 * q0 + q1 * q1;
  const Rational c = q0 * q0 - q1 * q1;
  const Rational s = Rational(2) * q0 * q1;
  return {(c * p.a - s * p.b + Rational(2) * (q1 * q2 + q0 * q3)) / n,
          (s * p.a + c * p.b + Rational(2) * (q1 * q3 - q0 * q2)) / n};
}

/// Rotation about the origin by (e0:e1:0:0), multiplied by e0^2 + e1^2 (division free).
template <class T>
Point2<T> rotate_scaled(const T& e0, const T& e1, const Point2<T>& p) {
  const T c = e0 * e0 - e1 * e1;
  const T s = T(2) * e0 * e1;
  return {c * p.a - s * p.b, s * p.a + c * p.b};
}

/// Rotation about the origin by (e0:e1:0:0) in a field.
template <class T>
Point2<T> rotate(const T& e0, const T& e1, const Point2<T>& p) {
  const T n = e0 * e0 + e1 * e1;
  if (n == T(0)) throw InvalidPose("rotation with e0 = e1 = 0");
  Point2<T> r = rotate_scaled(e0, e1, p);
  return {r.a / n, r.b / n};
}

template <class T>
Point2<T> reflect_x(const Point2<T>& p) {
  return {p.a, -p.b};
}

enum class IsometryKind { Direct, Indirect, None };

inline const char* to_string(IsometryKind k) {
  switch (k) {
    case IsometryKind::Direct: return "direct";
    case IsometryKind::Indirect: return "indirect";
    case IsometryKind::None: return "none";
  }
  return "?";
}

struct TriangleMapResult {
  bool direct = false;
  bool indirect = false;
};

/// Which isometry kinds map src[i] to dst[i] for i = 0, 1, 2.
inline TriangleMapResult triangle_map_options(const std::array<QPoint, 3>& src, const std::array<QPoint, 3>& dst) {
  TriangleMapResult r;
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (dist2(src[i], src[j]) != dist2(dst[i], dst[j])) return r;
  const Rational as = orient(src[0], src[1], src[2]);
  const Rational ad = orient(dst[0], dst[1], dst[2]);
  if (as.is_zero()) {
    r.direct = r.indirect = true;
  } else {
    r.direct = as == ad;
    r.indirect = as == -ad;
  }
  return r;
}

/// Collinear triples admit both kinds; Direct is reported then.
inline IsometryKind classify_triangle_map(const std::array<QPoint, 3>& src, const std::array<QPoint, 3>& dst) {
  auto r = triangle_map_options(src, dst);
  if (r.direct) return IsometryKind::Direct;
  if (r.indirect) return IsometryKind::Indirect;
  return IsometryKind::None;
}

/// Gaussian rational a + b i.
struct QComplex {
  Rational re{0}, im{0};
  friend QComplex operator+(const QComplex& x, const QComplex& y) { return {x.re + y.re, x.im + y.im}; }
  friend QComplex operator-(const QComplex& x, const QComplex& y) { return {x.re - y.re, x.im - y.im}; }
  friend QComplex operator*(const QComplex& x, const QComplex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  friend QComplex operator/(const QComplex& x, const QComplex& y) {
    Rational n = y.re * y.re + y.im * y.im;
    if (n.is_zero()) throw std::domain_error("QComplex: division by zero");
    return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
  }
  QComplex conj() const { return {re, -im}; }
  friend bool operator==(const QComplex& x, const QComplex& y) { return x.re == y.re && x.im == y.im; }
};

/// Planar isometry z -> u z + w (direct) or z -> u conj(z) + w (indirect), |u| = 1.
struct Isometry {
  QComplex u{1, 0}, w{0, 0};
  bool indirect = false;
  QPoint apply(const QPoint& p) const {
    QComplex z{p.a, p.b};
    if (indirect) z = z.conj();
    QComplex r = u * z + w;
    return {r.re, r.im};
  }
};

/// Searches for an isometry with iso(src[k]) = dst[k] for all k; exact finite search.
inline std::optional<Isometry> find_isometry(const std::vector<QPoint>& src, const std::vector<QPoint>& dst) {
  if (src.size() != dst.size()) throw UsageError("find_isometry: size mismatch");
  if (src.empty()) return Isometry{};
  // Anchor pair: first point and the first point distinct from it.
  std::size_t j = 1;
  while (j < src.size() && src[j] == src[0]) ++j;
  auto check = [&](const Isometry& iso) -> bool {
    for (std::size_t k = 0; k < src.size(); ++k)
      if (!(iso.apply(src[k]) == dst[k])) return false;
    return true;
  };
  if (j == src.size()) {
    Isometry t;
    t.w = QComplex{dst[0].a - src[0].a, dst[0].b - src[0].b};
    if (check(t)) return t;
    return std::nullopt;
  }
  if (dist2(src[0], src[j]) != dist2(dst[0], dst[j])) return std::nullopt;
  const QComplex p0{src[0].a, src[0].b}, pj{src[j].a, src[j].b};
  const QComplex q0{dst[0].a, dst[0].b}, qj{dst[j].a, dst[j].b};
  for (bool ind : {false, true}) {
    Isometry iso;
    iso.indirect = ind;
    QComplex dp = pj - p0;
    if (ind) dp = dp.conj();
    iso.u = (qj - q0) / dp;
    iso.w = q0 - iso.u * (ind ? p0.conj() : p0);
    if (check(iso)) return iso;
  }
  return std::nullopt;
}

}  // namespace flexkin

#endif  // FLEXKIN_GEOMETRY_HPP
