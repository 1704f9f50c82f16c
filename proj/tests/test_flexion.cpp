#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <random>

#include "flexkin/examples.hpp"
#include "flexkin/families.hpp"
#include "flexkin/flexion.hpp"
#include "flexkin/io.hpp"
#include "flexkin/theorem_check.hpp"
#include "support.hpp"

using namespace flexkin;
using testsupport::data_path;

namespace {

QConfig concurrent_legs() {
  QConfig c;
  c.pts = {QPoint(1, 0), QPoint(0, 1), QPoint(-1, 0), QPoint(2, 0), QPoint(0, 2), QPoint(-3, 0)};
  return c;
}

QConfig all_collinear() {
  QConfig c;
  c.pts = {QPoint(0, 0), QPoint(2, 1), QPoint(-4, -2), QPoint(6, 3), QPoint(1, Rational(1, 2)), QPoint(-2, -1)};
  return c;
}

Eigen::Matrix<double, 4, 4> rigidity_matrix(const ConstraintSystem<Rational>& cs, const std::vector<double>& q) {
  Eigen::Matrix<double, 4, 4> m;
  for (int i = 0; i < 4; ++i) {
    auto g = cs.c[static_cast<std::size_t>(i)].gradient();
    for (int j = 0; j < 4; ++j) m(i, j) = g[static_cast<std::size_t>(j)].eval_with<double>(q, [](const Rational& v) { return v.to_double(); });
  }
  return m;
}

bool generators_all_zero(const FlexionReport& r) {
  bool z = r.s_at_pose.is_zero();
  for (auto& g : r.s_i_at_pose) z = z && g.is_zero();
  return z;
}

}  // namespace

TEST(RigidityDet, ConcurrentLegsAreInfinitesimallyFlexible) {
  QConfig c = concurrent_legs();
  auto r = classify_configuration(c);
  EXPECT_TRUE(r.s_at_pose.is_zero());
  Eigen::JacobiSVD<Eigen::Matrix<double, 4, 4>> svd(rigidity_matrix(induced_system(c), {1, 0, 0, 0}));
  auto sv = svd.singularValues();
  EXPECT_LT(sv(3), 1e-12 * sv(0));
}

TEST(RigidityDet, GenericConfigurationIsRigid) {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 20; ++k) {
    QConfig c = testsupport::rand_config(rng);
    auto r = classify_configuration(c);
    EXPECT_FALSE(r.s_at_pose.is_zero());
    EXPECT_EQ(r.classification, FlexionClass::Order0);
    const double det = rigidity_matrix(induced_system(c), {1, 0, 0, 0}).determinant();
    EXPECT_NEAR(det, r.s_at_pose.to_double(), 1e-9 * std::fabs(det));
  }
}

TEST(RigidityDet, AllCollinearIsSingular) {
  auto r = classify_configuration(all_collinear());
  EXPECT_TRUE(r.s_at_pose.is_zero());
  for (auto& g : r.grad_s_at_pose) EXPECT_TRUE(g.is_zero());
  EXPECT_EQ(r.classification, FlexionClass::SingularV1);
}

TEST(RigidityDet, PointwiseMatchesPolynomials) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 5; ++k) {
    auto cs = induced_system(testsupport::rand_config(rng));
    std::array<Rational, 4> q{testsupport::rand_q(rng), testsupport::rand_q(rng), testsupport::rand_q(rng), testsupport::rand_q(rng)};
    auto fast = generators_at(cs, q);
    auto slow = generators_at_via_polynomials(cs, q);
    EXPECT_EQ(fast.s, slow.s);
    for (std::size_t i = 0; i < 4; ++i) {
      EXPECT_EQ(fast.grad_s[i], slow.grad_s[i]);
      EXPECT_EQ(fast.s_i[i], slow.s_i[i]);
    }
  }
}

TEST(RigidityDet, GradientAgainstFiniteDifferences) {
  std::mt19937_64 rng(23);
  auto cs = induced_system(testsupport::rand_config(rng));
  const auto s = rigidity_det(cs);
  auto eval = [&](const std::vector<long double>& x) {
    return s.eval_with<long double>(x, [](const Rational& v) { return v.to_long_double(); });
  };
  for (int k = 0; k < 10; ++k) {
    std::vector<Rational> q{testsupport::rand_q(rng), testsupport::rand_q(rng), testsupport::rand_q(rng), testsupport::rand_q(rng)};
    std::vector<long double> x;
    for (auto& v : q) x.push_back(v.to_long_double());
    for (std::size_t i = 0; i < 4; ++i) {
      const long double h = 1e-6L * std::max(1.0L, std::fabs(x[i]));
      auto xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      const long double fd = (eval(xp) - eval(xm)) / (2 * h);
      const long double exact = s.partial(i)(q).to_long_double();
      EXPECT_NEAR(static_cast<double>(fd), static_cast<double>(exact), 1e-6 * std::max(1.0L, std::fabs(exact)));
    }
  }
}

TEST(RigidityDet, InvariantUnderTranslationRelabelAndScaling) {
  std::mt19937_64 rng(24);
  for (int k = 0; k < 10; ++k) {
    QConfig c = testsupport::rand_config(rng);
    const Rational s0 = classify_configuration(c).s_at_pose;

    QConfig t = translated(c, testsupport::rand_point(rng));
    EXPECT_EQ(classify_configuration(t).s_at_pose, s0);

    QConfig r;  // cyclic relabelling of the legs
    for (std::size_t i = 0; i < 3; ++i) {
      r.pts[i] = c.pts[(i + 1) % 3];
      r.pts[i + 3] = c.pts[(i + 1) % 3 + 3];
    }
    EXPECT_EQ(classify_configuration(r).s_at_pose.is_zero(), s0.is_zero());
    EXPECT_EQ(classify_configuration(r).classification, classify_configuration(c).classification);

    QConfig sc = c;
    for (auto& p : sc.pts) p = Rational(3, 2) * p;
    EXPECT_EQ(classify_configuration(sc).s_at_pose.is_zero(), s0.is_zero());
  }
  // the flexible configuration stays flexible under all three operations
  QConfig f = concurrent_legs();
  EXPECT_TRUE(classify_configuration(translated(f, QPoint(7, -2))).s_at_pose.is_zero());
  for (auto& p : f.pts) p = Rational(5) * p;
  EXPECT_TRUE(classify_configuration(f).s_at_pose.is_zero());
}

TEST(Classification, ParallelLegExampleAllGeneratorsVanish) {
  auto c = io::config_from(io::read_json(data_path("example3_config.json")));
  auto r = classify_configuration(c);
  EXPECT_TRUE(generators_all_zero(r));
  EXPECT_EQ(r.classification, FlexionClass::OrderAtLeast2);
}

TEST(Classification, SetBRootIsOrderOne) {
  QConfig c = averaged_config(example_spec(4), Rational(1), Rational(4834, 3645));
  auto r = classify_configuration(c);
  EXPECT_TRUE(r.s_at_pose.is_zero());
  EXPECT_EQ(r.classification, FlexionClass::Order1);
}

TEST(Classification, RadicalExamplesReachOrderTwo) {
  for (int n : {1, 7}) {
    auto res = solve_orientations(example_spec(n));
    ASSERT_EQ(res.orientations.size(), 2u) << "example " << n;
    for (auto& o : res.orientations) {
      EXPECT_TRUE(o.certified);
      EXPECT_EQ(o.order, FlexionClass::OrderAtLeast2);
    }
  }
}

TEST(Classification, ZeroLegRejected) {
  QConfig c = concurrent_legs();
  c.pts[3] = c.pts[0];
  EXPECT_THROW(classify_configuration(c), InvalidConfig);
}

TEST(Spotcheck, RotationExampleSingularZeros) {
  auto sc = family_spotcheck(example_spec(1), 8, 1);
  EXPECT_FALSE(sc.skipped);
  EXPECT_GE(sc.sample_count(), 8u);
  EXPECT_TRUE(sc.passes());
  for (auto& run : sc.runs)
    for (auto& smp : run.report.samples) {
      EXPECT_LT(smp.s_residual, 1e-9L);
      EXPECT_LT(smp.grad_residual, 1e-9L);
    }
}

TEST(Spotcheck, GenericSetARotation) {
  std::mt19937_64 rng(25);
  FamilySpec s = random_family(FamilyTag::ARotGeneral, rng);
  auto sc = family_spotcheck(s, 8, 2);
  EXPECT_GE(sc.sample_count(), 8u);
  EXPECT_TRUE(sc.passes());
}

TEST(Spotcheck, EqualLegTranslationFamilyIsSkipped) {
  FamilySpec s = io::family_from(io::read_json(data_path("translation_equal_legs_family.json")));
  auto sc = family_spotcheck(s, 8, 3);
  EXPECT_TRUE(sc.skipped);
  auto rep = singularity_spotcheck(build_line(s), QPoly(1));
  EXPECT_TRUE(rep.identically_zero);
  EXPECT_FALSE(rep.passes());
}

TEST(Spotcheck, NonDividingConditionFails) {
  // Set B: s does not vanish on the pencil and is not a multiple of the orientation condition
  FamilySpec s = example_spec(4);
  auto tp = theorem_polynomial(s);
  auto rep = singularity_spotcheck(build_line(s), tp.condition->dehomogenize());
  EXPECT_FALSE(rep.division_ok);
}
