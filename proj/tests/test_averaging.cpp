#include <gtest/gtest.h>

#include <random>

#include "flexkin/averaging.hpp"
#include "flexkin/examples.hpp"
#include "flexkin/families.hpp"
#include "flexkin/flexion.hpp"
#include "flexkin/io.hpp"
#include "flexkin/theorem_check.hpp"
#include "support.hpp"

using namespace flexkin;
using testsupport::rand_point;
using testsupport::rand_q;

namespace {

std::pair<QConfig, QConfig> example1_pair() {
  auto j = io::read_json(testsupport::data_path("example1_pair.json"));
  return {io::config_from(j["x"]), io::config_from(j["y"])};
}

/// Glide reflection along the axis through p with direction u, glide distance d * u.
QPoint glide(const QPoint& x, const QPoint& p, const QPoint& u, const Rational& d) {
  const QPoint v = x - p;
  const Rational n = norm2(u);
  const QPoint along = (dot(v, u) / n) * u;
  const QPoint across = v - along;
  return p + along - across + d * u;
}

QConfig apply_motion(const QConfig& c, const PlanarPose& q) {
  QConfig r;
  for (std::size_t k = 0; k < 6; ++k) r.pts[k] = bg_transform(q, c.pts[k]);
  return r;
}

}  // namespace

TEST(Average, Midpoints) {
  auto [x, y] = example1_pair();
  auto r = average(x, y);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(r.config.pts[k], midpoint(x.pts[k], y.pts[k]));
  EXPECT_TRUE(r.flags.valid());
}

TEST(Average, Symmetric) {
  auto [x, y] = example1_pair();
  EXPECT_EQ(average(x, y).config, average(y, x).config);
}

TEST(Average, TranslationPairGivesCongruentConfiguration) {
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    QConfig a = testsupport::rand_config(rng);
    QPoint t = rand_point(rng);
    if (t == QPoint(0, 0)) continue;
    // the pair itself is congruent, so only the midpoints are formed
    QConfig b = translated(a, t);
    EXPECT_THROW(average(a, b), UsageError);
    EXPECT_TRUE(congruent(midpoints(a, b), a));
  }
}

TEST(Average, ReflectedPlatformIsCollinearOnAxis) {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 20; ++k) {
    // platform of the second realisation is the mirror image of the first in the x-axis
    // x3 off the axis keeps the two realisations incongruent
    const FamilySpec s = random_family(FamilyTag::CReflSpecial, rng);
    const UnrotatedPair up = build_unrotated(s);
    for (std::size_t i = 3; i < 6; ++i) ASSERT_EQ(up.xp.pts[i], reflect_x(up.x.pts[i]));
    auto m = average(up.x, up.xp);
    for (std::size_t i = 3; i < 6; ++i) EXPECT_TRUE(m.config.pts[i].b.is_zero());
    // rotating the first realisation keeps the platform midpoints collinear
    auto [x, y] = build_pair(s, Rational(1), Rational(1, 2) + Rational(k));
    auto r = average(x, y);
    EXPECT_TRUE(signed_area(r.config.pts[3], r.config.pts[4], r.config.pts[5]).is_zero());
  }
}

TEST(Average, ZeroLengthLegFlagged) {
  // orientation on the leg-1 factor f1 + 2 l1 f0 of the rotation family (l1 = 4)
  auto [x, y] = build_pair(example_spec(1), Rational(1), Rational(-8));
  auto r = average(x, y);
  EXPECT_EQ(r.config.pts[0], r.config.pts[3]);
  EXPECT_TRUE(r.flags.zero_length_leg);
  EXPECT_FALSE(r.flags.valid());
}

TEST(Average, RejectsCongruentInputs) {
  auto [x, y] = example1_pair();
  (void)y;
  EXPECT_THROW(average(x, apply_motion(x, PlanarPose(3, 4, 1, -2))), UsageError);
}

TEST(Average, RejectsDifferentMetrics) {
  auto [x, y] = example1_pair();
  y.pts[0] = y.pts[0] + QPoint(Rational(1, 7), 0);
  EXPECT_THROW(average(x, y), UsageError);
}

TEST(TranslationInvariance, ZeroShift) {
  auto [x, y] = example1_pair();
  EXPECT_TRUE(translation_invariance_check(x, y, QPoint(0, 0)));
}

TEST(TranslationInvariance, RotationPair) {
  auto [x, y] = example1_pair();
  EXPECT_TRUE(translation_invariance_check(x, y, QPoint(3, Rational(-7, 2))));
}

TEST(TranslationInvariance, OneSidedShiftMovesByHalf) {
  auto [x, y] = example1_pair();
  const QPoint t(3, Rational(-7, 2));
  QConfig moved = midpoints(translated(x, t), y);
  EXPECT_FALSE(moved == midpoints(x, y));
  EXPECT_EQ(moved, translated(midpoints(x, y), Rational(1, 2) * t));
}

TEST(TranslationInvariance, RandomDraws) {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 100; ++k) {
    QConfig x = testsupport::rand_config(rng);
    QConfig y = apply_motion(x, testsupport::rand_pose(rng));
    EXPECT_TRUE(translation_invariance_check(x, y, rand_point(rng)));
  }
}

TEST(GlideReflection, MidpointsCollinear) {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 100; ++k) {
    std::array<QPoint, 3> tri{rand_point(rng), rand_point(rng), rand_point(rng)};
    const QPoint p = rand_point(rng);
    QPoint u = rand_point(rng);
    if (u == QPoint(0, 0)) u = QPoint(1, 0);
    const Rational d = k % 4 == 0 ? Rational(0) : rand_q(rng);
    std::array<QPoint, 3> m;
    for (std::size_t i = 0; i < 3; ++i) {
      const QPoint g = glide(tri[i], p, u, d);
      ASSERT_EQ(dist2(g, glide(tri[(i + 1) % 3], p, u, d)), dist2(tri[i], tri[(i + 1) % 3]));
      m[i] = midpoint(tri[i], g);
    }
    EXPECT_TRUE(signed_area(m[0], m[1], m[2]).is_zero());
  }
}

TEST(ClassifyPair, SetARotation) {
  auto [x, y] = example1_pair();
  auto pc = classify_pair(x, y);
  EXPECT_EQ(pc.set, PairSet::A);
  EXPECT_EQ(pc.base_map, IsometryKind::Direct);
  EXPECT_EQ(pc.platform_map, IsometryKind::Direct);
  EXPECT_EQ(pc.subcase, "rotation");
}

TEST(ClassifyPair, FamiliesLandInTheirSets) {
  std::mt19937_64 rng(35);
  const std::vector<std::pair<FamilyTag, PairSet>> cases{
      {FamilyTag::ARotGeneral, PairSet::A}, {FamilyTag::ATranslation, PairSet::A}, {FamilyTag::BRotGeneral, PairSet::B},
      {FamilyTag::BTranslation, PairSet::B}, {FamilyTag::CGlide, PairSet::C}};
  for (auto [tag, want] : cases)
    for (int k = 0; k < 10; ++k) {
      FamilySpec s = random_family(tag, rng);
      auto tp = theorem_polynomial(s);
      auto [f0, f1] = random_generic_orientation(tp, rng);
      auto [x, y] = build_pair(s, f0, f1);
      EXPECT_EQ(classify_pair(x, y).set, want) << describe(s);
    }
}

TEST(ClassifyPair, GlideSubcase) {
  std::mt19937_64 rng(36);
  FamilySpec s = random_family(FamilyTag::CGlide, rng);
  auto [x, y] = build_pair(s, Rational(1), Rational(2));
  auto pc = classify_pair(x, y);
  EXPECT_EQ(pc.set, PairSet::C);
  EXPECT_EQ(pc.platform_map, IsometryKind::Indirect);
  EXPECT_EQ(pc.base_map, IsometryKind::Direct);
}

TEST(SetAverages, SetAGivesFlexibleSetBGivesRigid) {
  std::mt19937_64 rng(37);
  for (int k = 0; k < 20; ++k) {
    for (auto tag : {FamilyTag::ARotGeneral, FamilyTag::BRotGeneral}) {
      FamilySpec s = random_family(tag, rng);
      auto [f0, f1] = random_generic_orientation(theorem_polynomial(s), rng);
      const Rational v = classify_configuration(averaged_config(s, f0, f1)).s_at_pose;
      if (tag == FamilyTag::ARotGeneral) EXPECT_TRUE(v.is_zero()) << describe(s);
      else EXPECT_FALSE(v.is_zero()) << describe(s);
    }
  }
}
