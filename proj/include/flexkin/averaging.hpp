#ifndef FLEXKIN_AVERAGING_HPP
#define FLEXKIN_AVERAGING_HPP

#include <optional>
#include <string>
#include <vector>

#include "flexkin/design.hpp"
#include "flexkin/error.hpp"
#include "flexkin/geometry.hpp"

namespace flexkin {

/// Pointwise midpoints, no checks.
inline QConfig midpoints(const QConfig& x, const QConfig& y) {
  QConfig m;
  for (std::size_t k = 0; k < 6; ++k) m.pts[k] = midpoint(x.pts[k], y.pts[k]);
  return m;
}

inline std::vector<QPoint> as_vector(const QConfig& c) { return {c.pts.begin(), c.pts.end()}; }

inline bool congruent(const QConfig& x, const QConfig& y) { return find_isometry(as_vector(x), as_vector(y)).has_value(); }

/// Same base triangle, same platform triangle, same leg lengths.
inline bool same_intrinsic_metric(const QConfig& x, const QConfig& y) {
  for (std::size_t i = 0; i < 3; ++i) {
    if (x.leg_length2(i) != y.leg_length2(i)) return false;
    for (std::size_t j = i + 1; j < 3; ++j) {
      if (dist2(x.pts[i], x.pts[j]) != dist2(y.pts[i], y.pts[j])) return false;
      if (dist2(x.pts[i + 3], x.pts[j + 3]) != dist2(y.pts[i + 3], y.pts[j + 3])) return false;
    }
  }
  return true;
}

struct AverageResult {
  QConfig config;
  ValidityFlags flags;
};

/// Averaged configuration of two incongruent realisations of one framework.
inline AverageResult average(const QConfig& x, const QConfig& y) {
  if (!same_intrinsic_metric(x, y)) throw UsageError("realisations have different intrinsic metrics");
  if (congruent(x, y)) throw UsageError("realisations are congruent");
  AverageResult r;
  r.config = midpoints(x, y);
  r.flags = validity(r.config);
  return r;
}

inline QConfig translated(const QConfig& c, const QPoint& t) {
  QConfig r = c;
  for (auto& p : r.pts) p = p + t;
  return r;
}

/// midpoints(x + t, y - t) == midpoints(x, y), exactly.
inline bool translation_invariance_check(const QConfig& x, const QConfig& y, const QPoint& t) {
  return midpoints(translated(x, t), translated(y, -t)) == midpoints(x, y);
}

enum class PairSet { A, B, C, D, None };

inline const char* to_string(PairSet s) {
  switch (s) {
    case PairSet::A: return "A";
    case PairSet::B: return "B";
    case PairSet::C: return "C";
    case PairSet::D: return "D";
    case PairSet::None: return "none";
  }
  return "?";
}

struct PairClass {
  PairSet set = PairSet::None;
  IsometryKind base_map = IsometryKind::None;
  IsometryKind platform_map = IsometryKind::None;
  std::string subcase;  // rotation, translation, reflection, glide-reflection
  std::string note;
};

namespace detail {

inline Isometry inverse(const Isometry& g) {
  // z -> u z + w  =>  z -> conj(u) (z - w); indirect: z -> u conj(z) + w => z -> u conj(z - w)
  Isometry r;
  r.indirect = g.indirect;
  if (!g.indirect) {
    r.u = g.u.conj();
    r.w = QComplex{} - r.u * g.w;
  } else {
    r.u = g.u;
    r.w = QComplex{} - g.u * g.w.conj();
  }
  return r;
}

/// (f o g)(z) = f(g(z))
inline Isometry compose(const Isometry& f, const Isometry& g) {
  Isometry r;
  r.indirect = f.indirect != g.indirect;
  if (!f.indirect) {
    r.u = f.u * g.u;
    r.w = f.u * g.w + f.w;
  } else {
    r.u = f.u * g.u.conj();
    r.w = f.u * g.w.conj() + f.w;
  }
  return r;
}

inline std::string motion_kind(const Isometry& g) {
  const QComplex one{1, 0}, zero{0, 0};
  if (!g.indirect) {
    if (g.u == one) return g.w == zero ? "identity" : "translation";
    return "rotation";
  }
  // z -> u conj(z) + w applied twice gives z + u conj(w) + w
  return (g.u * g.w.conj() + g.w) == zero ? "reflection" : "glide-reflection";
}

inline std::optional<Isometry> triple_isometry(const std::array<QPoint, 3>& s, const std::array<QPoint, 3>& d, bool want_indirect) {
  std::vector<QPoint> src(s.begin(), s.end()), dst(d.begin(), d.end());
  // find_isometry prefers direct; for the indirect case reflect the source first.
  if (!want_indirect) {
    auto g = find_isometry(src, dst);
    if (g && !g->indirect) return g;
    return std::nullopt;
  }
  for (auto& p : src) p = reflect_x(p);
  auto g = find_isometry(src, dst);
  if (!g || g->indirect) return std::nullopt;
  Isometry refl;
  refl.indirect = true;
  return compose(*g, refl);
}

}  // namespace detail

/// Classifies a realisation pair into Sets A-D; collinear triples resolve to Direct.
inline PairClass classify_pair(const QConfig& x, const QConfig& y) {
  PairClass pc;
  std::array<QPoint, 3> xb{x.pts[0], x.pts[1], x.pts[2]}, yb{y.pts[0], y.pts[1], y.pts[2]};
  std::array<QPoint, 3> xp{x.pts[3], x.pts[4], x.pts[5]}, yp{y.pts[3], y.pts[4], y.pts[5]};
  pc.base_map = classify_triangle_map(xb, yb);
  pc.platform_map = classify_triangle_map(xp, yp);
  const bool base_col = orient(xb[0], xb[1], xb[2]).is_zero();
  const bool plat_col = orient(xp[0], xp[1], xp[2]).is_zero();
  if (base_col) pc.note += "base anchors collinear (direct and indirect both possible); ";
  if (plat_col) pc.note += "platform anchors collinear (direct and indirect both possible); ";
  using K = IsometryKind;
  if (pc.base_map == K::None || pc.platform_map == K::None) {
    pc.note += "triangles are not congruent";
    return pc;
  }
  if (pc.base_map == K::Direct && pc.platform_map == K::Direct) pc.set = PairSet::A;
  else if (pc.base_map == K::Indirect && pc.platform_map == K::Indirect) pc.set = PairSet::B;
  else if (pc.base_map == K::Direct) pc.set = PairSet::C;
  else pc.set = PairSet::D;

  auto a = detail::triple_isometry(xb, yb, pc.base_map == K::Indirect);
  auto b = detail::triple_isometry(xp, yp, pc.platform_map == K::Indirect);
  if (a && b) pc.subcase = detail::motion_kind(detail::compose(detail::inverse(*a), *b));
  return pc;
}

/// Set D pairs are Set C pairs with platform and base exchanged.
inline QConfig swap_roles(const QConfig& c) {
  QConfig r;
  for (std::size_t i = 0; i < 3; ++i) {
    r.pts[i] = c.pts[i + 3];
    r.pts[i + 3] = c.pts[i];
  }
  return r;
}

}  // namespace flexkin

#endif  // FLEXKIN_AVERAGING_HPP
