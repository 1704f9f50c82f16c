#ifndef FLEXKIN_DESIGN_HPP
#define FLEXKIN_DESIGN_HPP

#include <array>
#include <cmath>
#include <string>

#include "flexkin/error.hpp"
#include "flexkin/geometry.hpp"

namespace flexkin {

/// Six points x1..x6 in the fixed frame: x1..x3 base, x4..x6 platform, leg i joins x_i and x_{i+3}.
template <class T>
struct SixConfig {
  std::array<Point2<T>, 6> pts{};

  const Point2<T>& operator[](std::size_t k) const { return pts.at(k); }
  Point2<T>& operator[](std::size_t k) { return pts.at(k); }
  const Point2<T>& base(std::size_t i) const { return pts.at(i); }
  const Point2<T>& platform(std::size_t i) const { return pts.at(i + 3); }

  T leg_length2(std::size_t i) const { return dist2(pts.at(i), pts.at(i + 3)); }

  friend bool operator==(const SixConfig& x, const SixConfig& y) { return x.pts == y.pts; }
};

using QConfig = SixConfig<Rational>;

struct ValidityFlags {
  bool zero_length_leg = false;
  bool coincident_legs = false;
  bool valid() const { return !zero_length_leg && !coincident_legs; }
};

template <class T>
ValidityFlags validity(const SixConfig<T>& c) {
  ValidityFlags f;
  for (std::size_t i = 0; i < 3; ++i)
    if (c.pts[i] == c.pts[i + 3]) f.zero_length_leg = true;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      bool same = c.pts[i] == c.pts[j] && c.pts[i + 3] == c.pts[j + 3];
      bool swapped = c.pts[i] == c.pts[j + 3] && c.pts[i + 3] == c.pts[j];
      if (same || swapped) f.coincident_legs = true;
    }
  return f;
}

/// Base anchors (fixed frame), platform anchors (moving frame), squared leg lengths.
template <class T>
struct ManipulatorDesign {
  std::array<Point2<T>, 3> base{};
  std::array<Point2<T>, 3> platform{};
  std::array<T, 3> leg2{};

  void validate() const {
    for (std::size_t i = 0; i < 3; ++i)
      if (!(leg2[i] > T(0))) throw InvalidConfig("leg " + std::to_string(i + 1) + " has non-positive length");
    if (base[0] == base[1] && base[1] == base[2]) throw InvalidConfig("base anchors collapse to one point");
    if (platform[0] == platform[1] && platform[1] == platform[2])
      throw InvalidConfig("platform anchors collapse to one point");
  }

  /// Design in which the configuration is the realisation at the identity pose.
  static ManipulatorDesign from_config(const SixConfig<T>& c) {
    ManipulatorDesign d;
    for (std::size_t i = 0; i < 3; ++i) {
      d.base[i] = c.pts[i];
      d.platform[i] = c.pts[i + 3];
      d.leg2[i] = c.leg_length2(i);
    }
    return d;
  }
};

using QDesign = ManipulatorDesign<Rational>;

template <class T>
SixConfig<long double> to_long_double(const SixConfig<T>& c) {
  SixConfig<long double> r;
  for (std::size_t k = 0; k < 6; ++k) r.pts[k] = {static_cast<long double>(c.pts[k].a), static_cast<long double>(c.pts[k].b)};
  return r;
}
inline SixConfig<long double> to_long_double(const QConfig& c) {
  SixConfig<long double> r;
  for (std::size_t k = 0; k < 6; ++k) r.pts[k] = {c.pts[k].a.to_long_double(), c.pts[k].b.to_long_double()};
  return r;
}

}  // namespace flexkin

#endif  // FLEXKIN_DESIGN_HPP
