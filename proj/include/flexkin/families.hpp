#ifndef FLEXKIN_FAMILIES_HPP
#define FLEXKIN_FAMILIES_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "flexkin/averaging.hpp"
#include "flexkin/error.hpp"
#include "flexkin/flexion.hpp"
#include "flexkin/kinematics.hpp"

namespace flexkin {

enum class FamilyTag {
  ARotGeneral,
  ARotSpecial,
  ARotVerySpecial,
  ATranslation,
  BRotGeneral,
  BRotSpecial,
  BTranslation,
  CGlide,
  CReflGeneral,
  CReflSpecial,
  CReflVerySpecial,
};

inline const std::vector<FamilyTag>& all_tags() {
  static const std::vector<FamilyTag> tags{FamilyTag::ARotGeneral,  FamilyTag::ARotSpecial,     FamilyTag::ARotVerySpecial,
                                           FamilyTag::ATranslation, FamilyTag::BRotGeneral,     FamilyTag::BRotSpecial,
                                           FamilyTag::BTranslation, FamilyTag::CGlide,          FamilyTag::CReflGeneral,
                                           FamilyTag::CReflSpecial, FamilyTag::CReflVerySpecial};
  return tags;
}

inline const char* to_string(FamilyTag t) {
  switch (t) {
    case FamilyTag::ARotGeneral: return "A-rot-general";
    case FamilyTag::ARotSpecial: return "A-rot-special";
    case FamilyTag::ARotVerySpecial: return "A-rot-verySpecial";
    case FamilyTag::ATranslation: return "A-translation";
    case FamilyTag::BRotGeneral: return "B-rot-general";
    case FamilyTag::BRotSpecial: return "B-rot-special";
    case FamilyTag::BTranslation: return "B-translation";
    case FamilyTag::CGlide: return "C-glide";
    case FamilyTag::CReflGeneral: return "C-refl-general";
    case FamilyTag::CReflSpecial: return "C-refl-special";
    case FamilyTag::CReflVerySpecial: return "C-refl-verySpecial";
  }
  return "?";
}

inline FamilyTag parse_tag(const std::string& s) {
  for (auto t : all_tags())
    if (s == to_string(t)) return t;
  throw UsageError("unknown family tag '" + s + "'");
}

inline char family_set(FamilyTag t) {
  switch (t) {
    case FamilyTag::ARotGeneral:
    case FamilyTag::ARotSpecial:
    case FamilyTag::ARotVerySpecial:
    case FamilyTag::ATranslation: return 'A';
    case FamilyTag::BRotGeneral:
    case FamilyTag::BRotSpecial:
    case FamilyTag::BTranslation: return 'B';
    default: return 'C';
  }
}

inline bool is_rotation(FamilyTag t) {
  return t == FamilyTag::ARotGeneral || t == FamilyTag::ARotSpecial || t == FamilyTag::ARotVerySpecial ||
         t == FamilyTag::BRotGeneral || t == FamilyTag::BRotSpecial;
}

/// Parameter names of a case, without f0, f1.
inline std::vector<std::string> family_params(FamilyTag t) {
  switch (t) {
    case FamilyTag::ARotGeneral:
    case FamilyTag::BRotGeneral: return {"e0", "e1", "a5", "b5", "a6", "b6", "l1", "l2", "l3"};
    case FamilyTag::ARotSpecial:
    case FamilyTag::BRotSpecial: return {"e0", "e1", "a3", "b3", "a5", "b5", "l1", "l2"};
    case FamilyTag::ARotVerySpecial: return {"e0", "e1", "a2", "b2", "a3", "b3", "l1"};
    case FamilyTag::ATranslation:
    case FamilyTag::BTranslation:
    case FamilyTag::CReflGeneral: return {"a5", "b5", "a6", "b6", "l1", "l2", "l3"};
    case FamilyTag::CGlide: return {"d", "a5", "b5", "a6", "b6", "l1", "l2", "l3"};
    case FamilyTag::CReflSpecial: return {"a3", "b3", "a5", "b5", "a6", "l1", "l2"};
    case FamilyTag::CReflVerySpecial: return {"a2", "b2", "a3", "b3", "a5", "a6", "l1"};
  }
  return {};
}

struct FamilySpec {
  FamilyTag tag = FamilyTag::ARotGeneral;
  std::map<std::string, Rational> params;

  const Rational& operator[](const std::string& k) const {
    auto it = params.find(k);
    if (it == params.end()) throw UsageError(std::string(to_string(tag)) + ": missing parameter " + k);
    return it->second;
  }
  bool has(const std::string& k) const { return params.count(k) > 0; }
  bool has_orientation() const { return has("f0") || has("f1"); }
};

/// Fills defaults (e1 = 1) and checks the case invariants and preconditions.
inline FamilySpec normalized(FamilySpec spec) {
  const std::string name = to_string(spec.tag);
  if (is_rotation(spec.tag) && !spec.has("e1")) spec.params["e1"] = Rational(1);
  auto names = family_params(spec.tag);
  for (auto& [k, v] : spec.params) {
    (void)v;
    if (k == "f0" || k == "f1") continue;
    if (std::find(names.begin(), names.end(), k) == names.end()) throw UsageError(name + ": unexpected parameter " + k);
  }
  for (auto& k : names)
    if (!spec.has(k)) throw UsageError(name + ": missing parameter " + k);
  if (spec.has("f0") != spec.has("f1")) throw UsageError(name + ": give both f0 and f1 or neither");
  if (spec.has("f0") && spec["f0"].is_zero() && spec["f1"].is_zero()) throw UsageError(name + ": (f0, f1) = (0, 0)");
  if (is_rotation(spec.tag) && spec["e1"].is_zero()) throw UsageError(name + ": e1 = 0 gives the identity rotation");
  auto at_origin = [&](const char* a, const char* b) { return spec[a].is_zero() && spec[b].is_zero(); };
  switch (spec.tag) {
    case FamilyTag::ARotGeneral:
    case FamilyTag::BRotGeneral:
      if (at_origin("a5", "b5") || at_origin("a6", "b6"))
        throw UsageError(name + ": x5 or x6 is fixed by the rotation; use " +
                         (spec.tag == FamilyTag::ARotGeneral ? "A-rot-special" : "B-rot-special"));
      break;
    case FamilyTag::ARotSpecial:
    case FamilyTag::BRotSpecial:
      if (at_origin("a5", "b5"))
        throw UsageError(name + ": x5 is fixed by the rotation; use A-rot-verySpecial");
      break;
    case FamilyTag::CGlide:
      if (spec["d"].is_zero()) throw UsageError(name + ": d = 0 is a pure reflection; use C-refl-general");
      break;
    case FamilyTag::CReflGeneral:
      if (spec["b5"].is_zero() || spec["b6"].is_zero())
        throw UsageError(name + ": x5 or x6 lies on the reflection axis; use C-refl-special");
      break;
    case FamilyTag::CReflSpecial:
      if (spec["b5"].is_zero()) throw UsageError(name + ": x5 lies on the reflection axis; use C-refl-verySpecial");
      break;
    default: break;
  }
  return spec;
}

/// G(X) before the final rotation, and G(X').
struct UnrotatedPair {
  QConfig x;
  QConfig xp;
};

namespace detail {

inline QPoint bisector_point(const QPoint& p, const QPoint& pp, const Rational& l) {
  const QPoint m = midpoint(p, pp);
  const QPoint n{p.b - pp.b, pp.a - p.a};
  return m + l * n;
}

}  // namespace detail

inline UnrotatedPair build_unrotated(const FamilySpec& raw) {
  const FamilySpec s = normalized(raw);
  const auto& P = s.params;
  auto get = [&](const char* k) { return P.at(k); };
  std::array<QPoint, 3> plat;
  std::array<QPoint, 3> image;
  const FamilyTag t = s.tag;
  const bool translation = t == FamilyTag::ATranslation || t == FamilyTag::BTranslation;
  const bool rotation = is_rotation(t);

  QPoint x4 = translation && t == FamilyTag::ATranslation ? QPoint{0, 0} : QPoint{0, 1};
  QPoint x5, x6;
  switch (t) {
    case FamilyTag::ARotSpecial:
    case FamilyTag::BRotSpecial: x5 = {get("a5"), get("b5")}; break;
    case FamilyTag::ARotVerySpecial: break;
    case FamilyTag::CReflSpecial:
      x5 = {get("a5"), get("b5")};
      x6 = {get("a6"), 0};
      break;
    case FamilyTag::CReflVerySpecial:
      x5 = {get("a5"), 0};
      x6 = {get("a6"), 0};
      break;
    default:
      x5 = {get("a5"), get("b5")};
      x6 = {get("a6"), get("b6")};
  }
  plat = {x4, x5, x6};
  for (std::size_t k = 0; k < 3; ++k) {
    const QPoint& p = plat[k];
    if (rotation) image[k] = rotate(get("e0"), get("e1"), p);
    else if (translation) image[k] = p + QPoint{1, 0};
    else if (t == FamilyTag::CGlide) image[k] = {p.a + get("d"), -p.b};
    else image[k] = reflect_x(p);
  }

  std::array<QPoint, 3> base;
  int free_from = 3;
  if (t == FamilyTag::ARotSpecial || t == FamilyTag::BRotSpecial || t == FamilyTag::CReflSpecial) free_from = 2;
  if (t == FamilyTag::ARotVerySpecial || t == FamilyTag::CReflVerySpecial) free_from = 1;
  const char* ls[3] = {"l1", "l2", "l3"};
  for (int i = 0; i < free_from; ++i) base[i] = detail::bisector_point(plat[i], image[i], get(ls[i]));
  if (free_from <= 1) base[1] = {get("a2"), get("b2")};
  if (free_from <= 2) base[2] = {get("a3"), get("b3")};

  UnrotatedPair up;
  for (std::size_t i = 0; i < 3; ++i) {
    up.x.pts[i] = base[i];
    up.x.pts[i + 3] = plat[i];
    up.xp.pts[i] = base[i];
    up.xp.pts[i + 3] = image[i];
  }
  if (family_set(t) == 'B')
    for (auto& p : up.xp.pts) p = reflect_x(p);
  return up;
}

/// The realisation pair G(X), G(X') at orientation (f0:f1).
inline std::pair<QConfig, QConfig> build_pair(const FamilySpec& spec, const Rational& f0, const Rational& f1) {
  if (f0.is_zero() && f1.is_zero()) throw UsageError("orientation (f0, f1) = (0, 0)");
  UnrotatedPair up = build_unrotated(spec);
  for (auto& p : up.x.pts) p = rotate(f0, f1, p);
  return {up.x, up.xp};
}
inline std::pair<QConfig, QConfig> build_pair(const FamilySpec& spec) {
  if (!spec.has("f0")) throw UsageError("build_pair needs f0 and f1");
  return build_pair(spec, spec["f0"], spec["f1"]);
}

inline QConfig averaged_config(const FamilySpec& spec, const Rational& f0, const Rational& f1) {
  auto [x, xp] = build_pair(spec, f0, f1);
  return midpoints(x, xp);
}

/// Pencil of averaged configurations over f0 = 1, f1 = t, scaled by 2 (1 + t^2).
inline LineConfig build_line(const FamilySpec& spec) {
  const UnrotatedPair up = build_unrotated(spec);
  const QPoly t = QPoly::x();
  const QPoly n = QPoly(1) + t * t;
  LineConfig line;
  for (std::size_t k = 0; k < 6; ++k) {
    Point2<QPoly> p{QPoly(up.x.pts[k].a), QPoly(up.x.pts[k].b)};
    Point2<QPoly> r = rotate_scaled(QPoly(1), t, p);
    line.pts[k] = {r.a + n * QPoly(up.xp.pts[k].a), r.b + n * QPoly(up.xp.pts[k].b)};
  }
  return line;
}

using Form = BinaryForm<Rational>;

inline Form form_const(const Rational& c) {
  Form f(0);
  f.c[0] = c;
  return f;
}
/// a f0 + b f1
inline Form form_lin(const Rational& a, const Rational& b) {
  Form f(1);
  f.c[0] = a;
  f.c[1] = b;
  return f;
}

enum class DegenerateKind { BaseCollapse, PlatformCollapse, LegZero, AxisCollapse, LegsCollinear, Parameter };

struct DegenerateFactor {
  Form form;
  DegenerateKind kind = DegenerateKind::Parameter;
  int leg = 0;  // 1-based for LegZero
  std::string meaning;
};

struct TheoremPolynomial {
  std::optional<Form> condition;  // absent when the case has no order-raising condition
  std::vector<DegenerateFactor> degenerate;
};

namespace detail {

inline Form leg_factor(const Rational& l) { return form_lin(Rational(2) * l, Rational(1)); }  // f1 + 2 l f0

inline DegenerateFactor base_collapse() {
  return {form_lin(1, 0), DegenerateKind::BaseCollapse, 0, "base of the averaged configuration degenerates to a point"};
}
inline DegenerateFactor platform_collapse(const Rational& e0, const Rational& e1) {
  return {form_lin(e0, e1), DegenerateKind::PlatformCollapse, 0,
          "platform of the averaged configuration degenerates to a point"};
}
inline DegenerateFactor leg_zero(const Form& f, int i) {
  return {f, DegenerateKind::LegZero, i, "leg " + std::to_string(i) + " has zero length"};
}
inline DegenerateFactor parameter(const Rational& c, std::string meaning) {
  return {form_const(c), DegenerateKind::Parameter, 0, std::move(meaning)};
}

}  // namespace detail

/// Regrouping T1, T2, T3 of the general rotation condition by leg factors.
inline std::array<Rational, 3> regrouping_coefficients(const FamilySpec& spec) {
  const FamilySpec s = normalized(spec);
  const Rational &e0 = s["e0"], &e1 = s["e1"], &a5 = s["a5"], &b5 = s["b5"], &a6 = s["a6"], &b6 = s["b6"];
  const Rational &l1 = s["l1"], &l2 = s["l2"], &l3 = s["l3"];
  const Rational two(2);
  return {(e0 - two * e1 * l2) * a6 * (a5 * a5 + b5 * b5), (e0 - two * e1 * l3) * a5 * (a6 * a6 + b6 * b6),
          (e0 - two * e1 * l1) * (a5 * b6 - a6 * b5)};
}

inline Form regrouped_condition(const FamilySpec& spec) {
  const FamilySpec s = normalized(spec);
  auto T = regrouping_coefficients(s);
  auto L1 = detail::leg_factor(s["l1"]), L2 = detail::leg_factor(s["l2"]), L3 = detail::leg_factor(s["l3"]);
  return T[0] * (L1 * L3) - T[1] * (L1 * L2) + T[2] * (L2 * L3);
}

/// Closed-form orientation condition of the case and its separated degenerate factors.
inline TheoremPolynomial theorem_polynomial(const FamilySpec& spec) {
  const FamilySpec s = normalized(spec);
  const Rational two(2), four(4);
  const Form F0 = form_lin(1, 0), F1 = form_lin(0, 1);
  auto get = [&](const char* k) { return s[k]; };
  TheoremPolynomial tp;
  using detail::leg_factor;
  using detail::leg_zero;
  switch (s.tag) {
    case FamilyTag::ARotGeneral: {
      const Rational &e0 = get("e0"), &e1 = get("e1"), &a5 = get("a5"), &b5 = get("b5"), &a6 = get("a6"),
                     &b6 = get("b6"), &l1 = get("l1"), &l2 = get("l2"), &l3 = get("l3");
      tp.condition = ((e0 - two * e1 * l2) * a6 * (a5 * a5 + b5 * b5)) * (leg_factor(l1) * leg_factor(l3)) -
                     ((e0 - two * e1 * l3) * a5 * (a6 * a6 + b6 * b6)) * (leg_factor(l1) * leg_factor(l2)) +
                     ((e0 - two * e1 * l1) * (a5 * b6 - a6 * b5)) * (leg_factor(l2) * leg_factor(l3));
      tp.degenerate = {detail::base_collapse(), detail::platform_collapse(e0, e1), leg_zero(leg_factor(l1), 1),
                       leg_zero(leg_factor(l2), 2), leg_zero(leg_factor(l3), 3)};
      break;
    }
    case FamilyTag::ARotSpecial: {
      const Rational &e0 = get("e0"), &e1 = get("e1"), &a3 = get("a3"), &b3 = get("b3"), &a5 = get("a5"),
                     &b5 = get("b5"), &l1 = get("l1"), &l2 = get("l2");
      tp.condition = ((e0 - two * e1 * l2) * (a5 * a5 + b5 * b5) * (a3 * e0 + b3 * e1)) * leg_factor(l1) -
                     ((e0 - two * e1 * l1) * ((a3 * b5 - a5 * b3) * e0 + (a3 * a5 + b3 * b5) * e1)) * leg_factor(l2);
      tp.degenerate = {detail::base_collapse(), detail::platform_collapse(e0, e1), leg_zero(leg_factor(l1), 1),
                       leg_zero(leg_factor(l2), 2), detail::parameter(a3 * a3 + b3 * b3, "x3 coincides with x6 (leg 3 has zero length)")};
      break;
    }
    case FamilyTag::ARotVerySpecial: {
      const Rational &e0 = get("e0"), &e1 = get("e1"), &a2 = get("a2"), &b2 = get("b2"), &a3 = get("a3"),
                     &b3 = get("b3"), &l1 = get("l1");
      tp.condition = form_const((a2 * b3 - a3 * b2) * (e0 - two * e1 * l1));
      tp.degenerate = {detail::base_collapse(), detail::platform_collapse(e0, e1), leg_zero(leg_factor(l1), 1),
                       detail::parameter(a2 * a2 + b2 * b2, "x2 coincides with x5 (leg 2 has zero length)"),
                       detail::parameter(a3 * a3 + b3 * b3, "x3 coincides with x6 (leg 3 has zero length)")};
      break;
    }
    case FamilyTag::ATranslation: {
      const Rational &a5 = get("a5"), &a6 = get("a6"), &l1 = get("l1"), &l2 = get("l2"), &l3 = get("l3");
      tp.condition = (a5 * (l1 - l3)) * leg_factor(l2) - (a6 * (l1 - l2)) * leg_factor(l3);
      tp.degenerate = {detail::base_collapse(), leg_zero(leg_factor(l1), 1), leg_zero(leg_factor(l2), 2),
                       leg_zero(leg_factor(l3), 3)};
      break;
    }
    case FamilyTag::BRotGeneral: {
      const Rational &e0 = get("e0"), &e1 = get("e1"), &a5 = get("a5"), &b5 = get("b5"), &a6 = get("a6"),
                     &b6 = get("b6"), &l1 = get("l1"), &l2 = get("l2"), &l3 = get("l3");
      const Rational A = (e0 - two * e1 * l2) * (a5 * e0 - b5 * e1) * (l1 - l3) -
                         (e0 - two * e1 * l3) * (a6 * e0 - b6 * e1) * (l1 - l2) + (e0 - two * e1 * l1) * e1 * (l2 - l3);
      const Rational B = (e0 - two * e1 * l3) * (a6 * e1 + b6 * e0) * (l1 - l2) -
                         (e0 - two * e1 * l2) * (a5 * e1 + b5 * e0) * (l1 - l3) + (e0 - two * e1 * l1) * e0 * (l2 - l3);
      tp.condition = form_lin(A, B);
      tp.degenerate = {leg_zero(form_lin(e1, e0), 1), leg_zero(form_lin(a5 * e0 - b5 * e1, -(a5 * e1 + b5 * e0)), 2),
                       leg_zero(form_lin(a6 * e0 - b6 * e1, -(a6 * e1 + b6 * e0)), 3)};
      break;
    }
    case FamilyTag::BRotSpecial: {
      const Rational &e0 = get("e0"), &e1 = get("e1"), &a3 = get("a3"), &b3 = get("b3"), &a5 = get("a5"),
                     &b5 = get("b5"), &l1 = get("l1"), &l2 = get("l2");
      const Rational A = (e0 - two * e1 * l2) * (a5 * e0 - b5 * e1) + (e0 - two * e1 * l1) * e1;
      const Rational B = (e0 - two * e1 * l1) * e0 - (e0 - two * e1 * l2) * (a5 * e1 + b5 * e0);
      tp.condition = form_lin(A, B);
      tp.degenerate = {leg_zero(form_lin(e1, e0), 1), leg_zero(form_lin(a5 * e0 - b5 * e1, -(a5 * e1 + b5 * e0)), 2),
                       leg_zero(form_lin(a3, -b3), 3),
                       detail::parameter(a3 * a3 + b3 * b3, "x3 coincides with x6 (leg 3 has zero length)")};
      break;
    }
    case FamilyTag::BTranslation: {
      const Rational &a5 = get("a5"), &b5 = get("b5"), &a6 = get("a6"), &b6 = get("b6"), &l1 = get("l1"),
                     &l2 = get("l2"), &l3 = get("l3");
      const Rational A = a5 * (l1 - l3) - a6 * (l1 - l2);
      const Rational B = (l2 - l3) - b5 * (l1 - l3) + b6 * (l1 - l2);
      tp.condition = form_lin(A, B);
      tp.degenerate = {{F1, DegenerateKind::AxisCollapse, 0,
                        "all six averaged points lie on the x-axis and every leg has zero length"}};
      break;
    }
    case FamilyTag::CGlide: {
      const Rational &d = get("d"), &a5 = get("a5"), &b5 = get("b5"), &a6 = get("a6"), &b6 = get("b6");
      tp.degenerate = {detail::base_collapse(), leg_zero(detail::leg_factor(get("l1")), 1),
                       leg_zero(detail::leg_factor(get("l2")), 2), leg_zero(detail::leg_factor(get("l3")), 3),
                       detail::parameter(d, "glide distance is zero (pure reflection)"),
                       detail::parameter(a5 * b6 - a6 * b5 - a5 + a6, "platform anchors are collinear")};
      (void)b5;
      break;
    }
    case FamilyTag::CReflGeneral: {
      tp.degenerate = {detail::base_collapse(), leg_zero(detail::leg_factor(get("l1")), 1),
                       leg_zero(detail::leg_factor(get("l2")), 2), leg_zero(detail::leg_factor(get("l3")), 3)};
      break;
    }
    case FamilyTag::CReflSpecial: {
      const Rational &a5 = get("a5"), &b5 = get("b5"), &a6 = get("a6"), &l1 = get("l1"), &l2 = get("l2");
      tp.condition = b5 * (leg_factor(l2) * (two * l1 * F1 - (a6 * a6) * F0)) + (four * b5 * (l1 - l2) * a6) * (F0 * F1) +
                     leg_factor(l1) * ((a5 - a6) * (a5 - a6) * F0 - (two * l2 * b5 * b5) * F1 -
                                       (a5 * b5) * (F1 - (two * l2) * F0));
      tp.degenerate = {detail::base_collapse(), leg_zero(leg_factor(l1), 1), leg_zero(leg_factor(l2), 2),
                       detail::parameter(get("b3"), "x3 on the reflection axis (all six averaged points collinear)")};
      break;
    }
    case FamilyTag::CReflVerySpecial: {
      tp.degenerate = {{form_lin(1, 0), DegenerateKind::BaseCollapse, 0,
                        "base of the averaged configuration degenerates to a point (flexion order 1)"},
                       leg_zero(detail::leg_factor(get("l1")), 1),
                       detail::parameter(get("b2"), "legs 1 and 2 are collinear (flexion order 1)"),
                       detail::parameter(get("b3"), "legs 1 and 3 are collinear (flexion order 1)"),
                       detail::parameter(get("a5") - get("a6"), "x5 coincides with x6")};
      break;
    }
  }
  return tp;
}

/// Classification a case attains for orientations off every listed factor.
inline FlexionClass generic_class(FamilyTag t) {
  switch (family_set(t)) {
    case 'A': return FlexionClass::Order1;
    case 'B': return FlexionClass::Order0;
    default: break;
  }
  if (t == FamilyTag::CReflGeneral) return FlexionClass::SingularV1;
  if (t == FamilyTag::CReflSpecial) return FlexionClass::Order1;
  return FlexionClass::Order0;
}

/// Classification expected at a non-degenerate root of the condition.
inline bool root_class_ok(FamilyTag t, FlexionClass c) {
  if (family_set(t) == 'B') return c == FlexionClass::Order1;
  return c == FlexionClass::OrderAtLeast2 || c == FlexionClass::SingularV1;
}

/// A projective orientation (f0:f1): either (1:t) with t algebraic, or (0:1).
struct OrientationRoot {
  bool at_infinity = false;
  std::optional<AlgebraicReal> t;
  int multiplicity = 1;

  bool is_rational() const { return at_infinity || t->is_rational(); }
  std::pair<Rational, Rational> rational_f() const {
    if (at_infinity) return {Rational(0), Rational(1)};
    return {Rational(1), t->exact()};
  }
  long double f1_over_f0() const { return at_infinity ? HUGE_VALL : t->to_long_double(); }
  bool is_root_of(const Form& f) const {
    if (at_infinity) return f.c.back().is_zero();
    return t->is_root_of(f.dehomogenize());
  }
  std::string str() const {
    if (at_infinity) return "(0 : 1)";
    std::ostringstream os;
    if (t->is_rational()) os << "(1 : " << t->exact() << ")";
    else {
      os.precision(17);
      os << "(1 : " << t->to_long_double() << ")";
    }
    return os.str();
  }
};

/// Real projective roots of a binary form (must not vanish identically).
inline std::vector<OrientationRoot> projective_real_roots(const Form& f) {
  if (f.is_zero()) throw IdenticallyZero();
  std::vector<OrientationRoot> out;
  const QPoly p = f.dehomogenize();
  const int inf = static_cast<int>(f.degree()) - p.degree();
  if (p.degree() > 0) {
    for (auto& [g, m] : squarefree_decomposition(p))
      for (auto& r : isolate_squarefree(g)) {
        OrientationRoot o;
        o.t = r;
        o.multiplicity = m;
        out.push_back(o);
      }
  }
  std::sort(out.begin(), out.end(), [](const OrientationRoot& x, const OrientationRoot& y) {
    return x.t->to_long_double() < y.t->to_long_double();
  });
  if (inf > 0) {
    OrientationRoot o;
    o.at_infinity = true;
    o.multiplicity = inf;
    out.push_back(o);
  }
  return out;
}

/// Classification, identity multiplicity and (approximate) configuration at one orientation.
struct OrientationAnalysis {
  FlexionClass order = FlexionClass::Order0;
  std::optional<int> identity_multiplicity;  // eliminant multiplicity of (1:0:0:0); absent for self-motion
  bool all_collinear = false;                // all six averaged points on one line (exact)
  ValidityFlags flags;                       // zero-length or coincident legs (exact)
  std::optional<QConfig> exact_config;
  SixConfig<long double> approx_config;
};

inline OrientationAnalysis analyse_orientation(const FamilySpec& spec, const OrientationRoot& root, bool with_multiplicity = true) {
  OrientationAnalysis a;
  if (root.is_rational()) {
    auto [f0, f1] = root.rational_f();
    QConfig c = averaged_config(spec, f0, f1);
    a.exact_config = c;
    a.approx_config = to_long_double(c);
    a.flags = validity(c);
    if (!a.flags.valid()) with_multiplicity = false;
    a.order = a.flags.zero_length_leg ? FlexionClass::SingularV1 : classify_configuration(c).classification;
    a.all_collinear = true;
    for (std::size_t k = 1; k < 6; ++k)
      for (std::size_t j = k + 1; j < 6; ++j) a.all_collinear = a.all_collinear && orient(c.pts[0], c.pts[k], c.pts[j]).is_zero();
    if (with_multiplicity) {
      auto cs = induced_system(c);
      auto om = flexion_order_by_multiplicity(cs, PlanarPose::identity());
      if (!om.self_motion) a.identity_multiplicity = om.multiplicity;
    }
    return a;
  }
  AlgebraicReal t = *root.t;
  t.refine_default();
  const LineConfig line = build_line(spec);
  auto same = [&](std::size_t i, std::size_t j) {
    return t.is_root_of(line.pts[i].a - line.pts[j].a) && t.is_root_of(line.pts[i].b - line.pts[j].b);
  };
  for (std::size_t i = 0; i < 3; ++i) a.flags.zero_length_leg = a.flags.zero_length_leg || same(i, i + 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j)
      a.flags.coincident_legs = a.flags.coincident_legs || (same(i, j) && same(i + 3, j + 3)) || (same(i, j + 3) && same(i + 3, j));
  if (!a.flags.valid()) with_multiplicity = false;
  a.order = classify_at(line_generators(line), t);
  a.all_collinear = true;
  for (std::size_t k = 1; k < 6; ++k)
    for (std::size_t j = k + 1; j < 6; ++j) a.all_collinear = a.all_collinear && t.is_root_of(orient(line.pts[0], line.pts[k], line.pts[j]));
  a.approx_config = evaluate_line(line, t.to_long_double());
  if (with_multiplicity) a.identity_multiplicity = identity_multiplicity_on_line(line, t);
  return a;
}

struct Orientation {
  OrientationRoot root;
  bool degenerate = false;
  std::string note;
  FlexionClass order = FlexionClass::Order0;
  bool certified = false;
  bool all_collinear = false;
  std::optional<int> identity_multiplicity;
  SixConfig<long double> approx_config;
  std::optional<QConfig> exact_config;
};

struct OrientationResult {
  bool self_motion_family = false;
  std::string note;
  std::optional<Form> condition;
  std::vector<DegenerateFactor> degenerate;
  std::vector<Orientation> orientations;
};

/// Orientations (f0:f1) at which the condition vanishes, each certified on the built configuration.
inline OrientationResult solve_orientations(const FamilySpec& raw) {
  FamilySpec spec = normalized(raw);
  spec.params.erase("f0");
  spec.params.erase("f1");
  OrientationResult res;
  TheoremPolynomial tp = theorem_polynomial(spec);
  res.condition = tp.condition;
  res.degenerate = tp.degenerate;
  if (spec.tag == FamilyTag::ARotVerySpecial) {
    const Rational two(2);
    if ((spec["e0"] - two * spec["e1"] * spec["l1"]).is_zero()) {
      res.self_motion_family = true;
      res.note = "rotational self-motion about the common point of x1, x5, x6";
      return res;
    }
  }
  if (!tp.condition) {
    res.note = "case has no order-raising orientation; only degenerate factors exist";
    return res;
  }
  if (tp.condition->is_zero()) {
    res.self_motion_family = spec.tag == FamilyTag::ATranslation || spec.tag == FamilyTag::BTranslation;
    res.note = res.self_motion_family ? "condition vanishes identically (translation self-motion family)"
                                      : "condition vanishes identically (raised order for every orientation)";
    return res;
  }
  if (tp.condition->degree() == 0) {
    res.note = "condition is a nonzero constant; no orientation raises the order";
    return res;
  }
  for (auto& r : projective_real_roots(*tp.condition)) {
    Orientation o;
    o.root = r;
    for (auto& d : tp.degenerate)
      if (d.kind != DegenerateKind::Parameter && r.is_root_of(d.form)) {
        o.degenerate = true;
        o.note += (o.note.empty() ? "" : "; ") + d.meaning;
      }
    if (!o.degenerate) {
      auto a = analyse_orientation(spec, r);
      o.order = a.order;
      o.all_collinear = a.all_collinear;
      if (!a.flags.valid()) {
        o.degenerate = true;
        o.note = a.flags.zero_length_leg ? "a leg has zero length" : "two legs coincide";
      } else {
        o.certified = root_class_ok(spec.tag, a.order);
      }
      o.identity_multiplicity = a.identity_multiplicity;
      o.approx_config = a.approx_config;
      o.exact_config = a.exact_config;
      if (!o.degenerate && !o.certified) o.note = std::string("expected order not attained: ") + to_string(a.order);
    }
    res.orientations.push_back(std::move(o));
  }
  return res;
}

/// Condition re-derived from the generators on the pencil: common factor of the generators
/// (s alone when s does not vanish) with circle and degenerate factors removed, square-free, monic.
struct DerivedCondition {
  bool s_vanishes = false;       // s is identically zero on the pencil
  bool all_vanish = false;       // s and every s_i are identically zero
  bool grad_vanishes = false;    // grad s is identically zero on the pencil
  QPoly common;                  // raw common factor
  QPoly reduced;                 // square-free, monic, stripped
};

inline DerivedCondition derived_condition(const FamilySpec& spec, const TheoremPolynomial& tp) {
  DerivedCondition out;
  const auto v = line_generators(build_line(spec));
  out.grad_vanishes = std::all_of(v.grad_s.begin(), v.grad_s.end(), [](const QPoly& g) { return g.is_zero(); });
  QPoly g;
  if (!v.s.is_zero()) g = v.s;
  else {
    out.s_vanishes = true;
    for (auto& x : v.s_i)
      if (!x.is_zero()) g = g.is_zero() ? x : gcd(g, x);
  }
  if (g.is_zero()) {
    out.all_vanish = true;
    return out;
  }
  out.common = g;
  QPoly r = g;
  r = strip_factor(r, QPoly{Rational(1), Rational(0), Rational(1)}).first;
  for (auto& d : tp.degenerate) {
    const QPoly f = d.form.dehomogenize();
    if (f.degree() > 0) r = strip_factor(r, f).first;
  }
  out.reduced = squarefree_part(r).monic();
  return out;
}

/// Averaged configurations at a fixed orientation while the parameter `name` runs through value + p.
/// Coordinates are affine in each single parameter other than e0, e1.
inline LineConfig parameter_line(const FamilySpec& raw, const std::string& name, const Rational& f0, const Rational& f1) {
  if (name == "e0" || name == "e1") throw UsageError("parameter lines along e0, e1 are not affine");
  const FamilySpec spec = normalized(raw);
  if (!spec.has(name)) throw UsageError("parameter '" + name + "' is not used by " + to_string(spec.tag));
  auto at = [&](const Rational& p) {
    FamilySpec s = spec;
    s.params[name] = spec[name.c_str()] + p;
    return averaged_config(s, f0, f1);
  };
  const QConfig c0 = at(Rational(0)), c1 = at(Rational(1)), c2 = at(Rational(2));
  LineConfig line;
  for (std::size_t k = 0; k < 6; ++k) {
    const QPoint d = c1.pts[k] - c0.pts[k];
    if (c2.pts[k] != c0.pts[k] + Rational(2) * d) throw UsageError("configuration is not affine in '" + name + "'");
    line.pts[k] = {QPoly{c0.pts[k].a, d.a}, QPoly{c0.pts[k].b, d.b}};
  }
  return line;
}

/// The condition at a fixed orientation as a polynomial in p, parameter `name` = value + p.
/// Recovered by interpolation and confirmed at extra nodes.
inline QPoly condition_along(const FamilySpec& raw, const std::string& name, const Rational& f0, const Rational& f1) {
  const FamilySpec spec = normalized(raw);
  auto value = [&](const Rational& p) {
    FamilySpec s = spec;
    s.params[name] = spec[name.c_str()] + p;
    const TheoremPolynomial tp = theorem_polynomial(s);
    if (!tp.condition) throw UsageError("case has no condition polynomial");
    return (*tp.condition)(f0, f1);
  };
  constexpr int kNodes = 12;
  std::vector<Rational> xs, ys;
  for (int j = 0; j < kNodes; ++j) {
    xs.push_back(Rational(j, 7));
    ys.push_back(value(xs.back()));
  }
  // Newton divided differences
  std::vector<Rational> dd = ys;
  for (int k = 1; k < kNodes; ++k)
    for (int j = kNodes - 1; j >= k; --j) dd[j] = (dd[j] - dd[j - 1]) / (xs[j] - xs[j - k]);
  QPoly p(dd[kNodes - 1]);
  for (int j = kNodes - 2; j >= 0; --j) p = p * QPoly{-xs[j], Rational(1)} + QPoly(dd[j]);
  for (const Rational& x : {Rational(-3, 11), Rational(29, 5)})
    if (p(x) != value(x)) throw VerificationFailure("condition is not polynomial of low degree in '" + name + "'");
  return p;
}

/// Square-free monic form of the dehomogenized condition (1 when constant or absent).
inline QPoly condition_signature(const TheoremPolynomial& tp) {
  if (!tp.condition || tp.condition->is_zero()) return QPoly(1);
  const QPoly p = tp.condition->dehomogenize();
  if (p.degree() <= 0) return QPoly(1);
  return squarefree_part(p).monic();
}

}  // namespace flexkin

#endif  // FLEXKIN_FAMILIES_HPP
