#include <gtest/gtest.h>

#include <random>

#include "flexkin/examples.hpp"
#include "flexkin/families.hpp"
#include "flexkin/io.hpp"
#include "flexkin/kinematics.hpp"
#include "support.hpp"

using namespace flexkin;
using testsupport::data_path;

namespace {

QDesign single_leg(const Rational& r2) {
  QDesign d;
  d.base = {QPoint(0, 0), QPoint(5, 0), QPoint(0, 5)};
  d.platform = {QPoint(1, 0), QPoint(6, 0), QPoint(1, 5)};
  d.leg2 = {r2, Rational(1), Rational(1)};
  return d;
}

const std::vector<Rational> kIdentity{Rational(1), Rational(0), Rational(0), Rational(0)};

int real_count(const DKResult& r) {
  int n = 0;
  for (auto& s : r.solutions) n += s.is_real ? 1 : 0;
  return n;
}

}  // namespace

TEST(Constraints, LegOnCircleAtIdentity) {
  auto cs = build_constraints(single_leg(Rational(1)));
  EXPECT_TRUE(cs.c[1](kIdentity).is_zero());
}

TEST(Constraints, LegOffCircleAtIdentity) {
  auto cs = build_constraints(single_leg(Rational(4)));
  EXPECT_EQ(cs.c[1](kIdentity), Rational(-3));
}

TEST(Constraints, NormalisationVanishesAtIdentity) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 10; ++k) EXPECT_TRUE(build_constraints(testsupport::rand_design(rng)).c[0](kIdentity).is_zero());
}

TEST(Constraints, QuadraticInPose) {
  std::mt19937_64 rng(12);
  auto cs = build_constraints(testsupport::rand_design(rng));
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(cs.c[i].total_degree(), 2);
}

TEST(Constraints, InducedDesignHasIdentitySolution) {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 50; ++k) {
    QConfig c = testsupport::rand_config(rng);
    bool zero_leg = false;
    for (std::size_t i = 0; i < 3; ++i) zero_leg = zero_leg || c.pts[i] == c.pts[i + 3];
    if (zero_leg) continue;
    EXPECT_TRUE(is_solution(induced_system(c), PlanarPose::identity()));
  }
}

TEST(DirectKinematics, CongruentDesignIsSelfMotion) {
  auto d = io::design_from(io::read_json(data_path("congruent_design.json")));
  auto r = solve_direct_kinematics(build_constraints(d));
  EXPECT_EQ(r.status, DKStatus::SelfMotion);
  auto om = flexion_order_by_multiplicity(build_constraints(d), PlanarPose::identity());
  EXPECT_TRUE(om.self_motion);
}

TEST(DirectKinematics, RandomDesignsAgainstSweep) {
  std::mt19937_64 rng(14);
  for (int k = 0; k < 12; ++k) {
    QDesign d = testsupport::rand_design(rng);
    auto r = solve_direct_kinematics(build_constraints(d));
    ASSERT_EQ(r.status, DKStatus::Ok);
    EXPECT_LE(r.total_multiplicity(), 6);
    int with_mult = 0;
    for (auto& s : r.solutions) {
      with_mult += s.multiplicity;
      if (s.is_real) {
        EXPECT_LT(testsupport::leg_length_error(d, s.pose), 1e-9L);
      }
    }
    EXPECT_LE(with_mult, 6);
    EXPECT_GE(real_count(r), 1);
    EXPECT_EQ(real_count(r), testsupport::sweep_real_count(d)) << "design " << k;
  }
}

TEST(DirectKinematics, GenericDesignFile) {
  auto d = io::design_from(io::read_json(data_path("generic_design.json")));
  auto r = solve_direct_kinematics(build_constraints(d));
  ASSERT_EQ(r.status, DKStatus::Ok);
  EXPECT_EQ(r.total_multiplicity(), 6);
  EXPECT_EQ(real_count(r), testsupport::sweep_real_count(d));
}

TEST(DirectKinematics, SimpleRealSolutionHasOrderZero) {
  std::mt19937_64 rng(15);
  for (int k = 0; k < 10; ++k) {
    // a design whose leg lengths are induced by a random rational pose
    QDesign d = testsupport::rand_design(rng);
    const PlanarPose q = testsupport::rand_pose(rng);
    for (std::size_t i = 0; i < 3; ++i) d.leg2[i] = dist2(d.base[i], bg_transform(q, d.platform[i]));
    auto cs = build_constraints(d);
    ASSERT_TRUE(is_solution(cs, q));
    auto om = flexion_order_by_multiplicity(cs, q);
    EXPECT_FALSE(om.self_motion);
    EXPECT_EQ(om.order, 0);
  }
}

TEST(DirectKinematics, NonSolutionRejected) {
  auto cs = build_constraints(single_leg(Rational(4)));
  EXPECT_THROW(flexion_order_by_multiplicity(cs, PlanarPose::identity()), UsageError);
}

TEST(DirectKinematics, OrderTwoConfigurationHasTripleRoot) {
  auto d = io::design_from(io::read_json(data_path("example2_design.json")));
  auto cs = build_constraints(d);
  auto om = flexion_order_by_multiplicity(cs, PlanarPose::identity());
  EXPECT_EQ(om.multiplicity, 3);
  EXPECT_EQ(om.order, 2);
  auto r = solve_direct_kinematics(cs);
  ASSERT_EQ(r.status, DKStatus::Ok);
  EXPECT_LE(r.total_multiplicity(), 6);
}

TEST(DirectKinematics, ParallelLegConfiguration) {
  auto c = io::config_from(io::read_json(data_path("example3_config.json")));
  auto om = flexion_order_by_multiplicity(induced_system(c), PlanarPose::identity());
  EXPECT_EQ(om.multiplicity, 3);
}

TEST(DirectKinematics, RankOneTranslationBlock) {
  // Set B translation example: the translation block has rank one for every rotation
  FamilySpec s = example_spec(6);
  QConfig c = averaged_config(s, Rational(1), Rational(-9, 25));
  auto cs = induced_system(c);
  auto om = flexion_order_by_multiplicity(cs, PlanarPose::identity());
  EXPECT_FALSE(om.self_motion);
  EXPECT_EQ(om.multiplicity, 2);
  auto r = solve_direct_kinematics(cs);
  ASSERT_EQ(r.status, DKStatus::Ok);
  EXPECT_LE(r.total_multiplicity(), 6);
  for (auto& sol : r.solutions)
    if (sol.is_real) {
      EXPECT_LT(testsupport::leg_length_error(cs.design, sol.pose), 1e-9L);
    }
}

TEST(DirectKinematics, SetBGenericOrientationIsRigid) {
  FamilySpec s = example_spec(4);
  QConfig c = averaged_config(s, Rational(1), Rational(1, 3));
  auto om = flexion_order_by_multiplicity(induced_system(c), PlanarPose::identity());
  EXPECT_EQ(om.order, 0);
}

TEST(DirectKinematics, OrderOneSetBRoot) {
  FamilySpec s = example_spec(4);
  QConfig c = averaged_config(s, Rational(1), Rational(4834, 3645));
  auto om = flexion_order_by_multiplicity(induced_system(c), PlanarPose::identity());
  EXPECT_EQ(om.order, 1);
}

TEST(DirectKinematics, RadicalExampleIdentityMultiplicity) {
  // Example 1 roots are irrational; the multiplicity is read on the orientation pencil
  auto res = solve_orientations(example_spec(1));
  ASSERT_EQ(res.orientations.size(), 2u);
  for (auto& o : res.orientations) {
    ASSERT_TRUE(o.identity_multiplicity.has_value());
    EXPECT_EQ(*o.identity_multiplicity, 3);
  }
}
