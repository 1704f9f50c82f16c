// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "flexkin/averaging.hpp"
#include "flexkin/examples.hpp"
#include "flexkin/kinematics.hpp"
#include "flexkin/stachel.hpp"
#include "flexkin/theorem_check.hpp"
#include "support.hpp"

using namespace flexkin;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << " first failure: " << why << ";";
    pass = false;
  }
};

// Theorem reports are shared by criteria 3, 4 and 5.
std::vector<TheoremReport> g_reports;

Verdict exact_examples() {
  Verdict v;
  double worst = 0;
  for (int n : {2, 3, 4, 5, 6}) {
    const auto t0 = Clock::now();
    ExampleReport rep = verify_example(n);
    const double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    if (!rep.passes())
      for (auto& c : rep.checks)
        if (!c.pass) v.fail("example " + std::to_string(n) + " " + c.name + ": expected " + c.expected + ", got " + c.got);
    if (dt >= 5) v.fail("example " + std::to_string(n) + " took " + std::to_string(dt) + " s");
  }
  v.detail << " examples 2-6, slowest " << worst << " s";
  return v;
}

Verdict radical_examples() {
  Verdict v;
  double worst = 0;
  for (int n : {1, 7}) {
    const auto t0 = Clock::now();
    ExampleReport rep = verify_example(n);
    const double dt = seconds_since(t0);
    worst = std::max(worst, dt);
    for (auto& c : rep.checks)
      if (!c.pass) v.fail("example " + std::to_string(n) + " " + c.name + ": expected " + c.expected + ", got " + c.got);
    int certified = 0;
    for (auto& o : rep.result.orientations) {
      if (!o.certified || o.order != FlexionClass::OrderAtLeast2) v.fail("example " + std::to_string(n) + " root not certified");
      else ++certified;
    }
    if (certified != 2) v.fail("example " + std::to_string(n) + ": " + std::to_string(certified) + " certified roots");
    if (dt >= 30) v.fail("example " + std::to_string(n) + " took " + std::to_string(dt) + " s");
  }
  v.detail << " examples 1 and 7, slowest " << worst << " s";
  return v;
}

Verdict theorem_suites() {
  Verdict v;
  const auto t0 = Clock::now();
  int trials = 0;
  for (auto tag : all_tags()) {
    TheoremReport rep = verify_theorem(tag, 50, 20240501);
    trials += rep.trials;
    for (auto& r : rep.records)
      if (!r.passed) v.fail(std::string(to_string(tag)) + " " + describe(r.spec) + ": " + r.failures.front());
    g_reports.push_back(std::move(rep));
  }
  const double dt = seconds_since(t0);
  if (dt >= 600) v.fail("took " + std::to_string(dt) + " s");
  v.detail << " " << all_tags().size() << " tags, " << trials << " trials, " << dt << " s";
  return v;
}

Verdict multiplicities() {
  Verdict v;
  int checked = 0;
  for (auto& rep : g_reports)
    for (auto& r : rep.records)
      for (int m : r.identity_multiplicities) {
        ++checked;
        if (m < 3) v.fail(describe(r.spec) + ": identity multiplicity " + std::to_string(m));
      }
  for (int n = 1; n <= example_count(); ++n) {
    ExampleReport rep = verify_example(n);
    for (auto& o : rep.result.orientations) {
      if (!o.certified || o.order != FlexionClass::OrderAtLeast2) continue;
      ++checked;
      if (o.identity_multiplicity.value_or(-1) < 3) v.fail("example " + std::to_string(n) + ": identity multiplicity below 3");
    }
  }
  if (checked == 0) v.fail("no order-2 configurations");
  v.detail << " " << checked << " order-2 configurations";
  return v;
}

Verdict stachel_agreement() {
  Verdict v;
  int examples = 0, order2 = 0, order1 = 0, skipped = 0;
  for (int n = 1; n <= example_count(); ++n) {
    ExampleReport rep = verify_example(n);
    for (auto& o : rep.result.orientations) {
      if (o.degenerate || !o.certified || o.order == FlexionClass::SingularV1) continue;
      auto st = o.exact_config ? stachel_check(*o.exact_config) : stachel_check(o.approx_config);
      if (st.mode == StachelMode::Inapplicable) {
        ++skipped;
        continue;
      }
      ++examples;
      if (st.passes != (o.order == FlexionClass::OrderAtLeast2)) v.fail("example " + std::to_string(n) + " disagrees");
    }
  }
  for (auto& rep : g_reports)
    for (auto& r : rep.records)
      for (auto& s : r.stachel) {
        if (s.order == FlexionClass::Order1 && s.collinear_degenerate) {
          ++skipped;
          continue;
        }
        if (s.order == FlexionClass::OrderAtLeast2) ++order2;
        else ++order1;
        if (s.passes != (s.order == FlexionClass::OrderAtLeast2))
          v.fail(describe(r.spec) + ": Stachel " + (s.passes ? "passes" : "fails") + " at " + to_string(s.order));
      }
  if (order2 < 100) v.fail("only " + std::to_string(order2) + " random order-2 instances");
  v.detail << " " << examples << " example configurations, " << order2 << " random order-2, " << order1 << " order-1, "
           << skipped << " excluded";
  return v;
}

Verdict structural() {
  Verdict v;
  std::mt19937_64 rng(77);
  for (int k = 0; k < 100; ++k) {
    QConfig x = testsupport::rand_config(rng);
    QConfig y;
    const PlanarPose q = testsupport::rand_pose(rng);
    for (std::size_t i = 0; i < 6; ++i) y.pts[i] = bg_transform(q, x.pts[i]);
    if (!translation_invariance_check(x, y, testsupport::rand_point(rng))) v.fail("translation invariance");
  }
  for (int k = 0; k < 100; ++k) {
    // glide reflection: reflection in a random axis through p followed by a shift d along it
    const QPoint p = testsupport::rand_point(rng);
    QPoint u = testsupport::rand_point(rng);
    if (u == QPoint(0, 0)) u = QPoint(1, 0);
    const Rational d = k % 5 == 0 ? Rational(0) : testsupport::rand_q(rng);
    std::array<QPoint, 3> m;
    for (std::size_t i = 0; i < 3; ++i) {
      const QPoint x = testsupport::rand_point(rng), w = x - p;
      const QPoint along = (dot(w, u) / norm2(u)) * u;
      const QPoint g = p + along - (w - along) + d * u;
      m[i] = midpoint(x, g);
    }
    if (!signed_area(m[0], m[1], m[2]).is_zero()) v.fail("glide-reflection midpoints not collinear");
  }
  int pairs = 0;
  for (auto tag : all_tags())
    for (int k = 0; k < 20; ++k) {
      FamilySpec s = random_family(tag, rng);
      TrialRecord rec;
      detail::check_structure(s, theorem_polynomial(s), rng, rec);
      ++pairs;
      if (!rec.passed) v.fail(describe(s) + ": " + rec.failures.front());
    }
  v.detail << " 100 translation draws, 100 glide draws, " << pairs << " built pairs";
  return v;
}

Verdict dk_soundness() {
  Verdict v;
  std::mt19937_64 rng(88);
  int sweeps = 0, real = 0;
  for (int k = 0; k < 200; ++k) {
    const QDesign d = testsupport::rand_design(rng);
    DKResult r = solve_direct_kinematics(build_constraints(d));
    if (r.status != DKStatus::Ok) {
      v.fail("design " + std::to_string(k) + ": " + to_string(r.status));
      continue;
    }
    int count = 0, reals = 0;
    for (auto& s : r.solutions) {
      count += s.multiplicity;
      if (!s.is_real) continue;
      ++reals;
      if (testsupport::leg_length_error(d, s.pose) >= 1e-9L) v.fail("design " + std::to_string(k) + ": leg length error");
    }
    real += reals;
    if (count > 6 || r.total_multiplicity() > 6) v.fail("design " + std::to_string(k) + ": more than six solutions");
    if (k < 50) {
      ++sweeps;
      const int oracle = testsupport::sweep_real_count(d);
      if (oracle != reals)
        v.fail("design " + std::to_string(k) + ": " + std::to_string(reals) + " real solutions, sweep finds " + std::to_string(oracle));
    }
  }
  v.detail << " 200 designs, " << real << " real solutions, " << sweeps << " sweep comparisons";
  return v;
}

Verdict spotcheck() {
  Verdict v;
  for (int n : {1, 2, 3}) {
    FamilySpotcheck sc = family_spotcheck(example_spec(n), 8, 1000 + static_cast<std::uint64_t>(n), 1e-9L);
    long double worst = 0;
    for (auto& run : sc.runs)
      for (auto& smp : run.report.samples) worst = std::max({worst, smp.grad_residual, smp.s_residual});
    if (sc.skipped) v.fail("example " + std::to_string(n) + " skipped");
    if (sc.sample_count() < 8) v.fail("example " + std::to_string(n) + ": " + std::to_string(sc.sample_count()) + " samples");
    if (!sc.passes()) v.fail("example " + std::to_string(n) + ": a sample is not a singular point");
    v.detail << " example " << n << ": " << sc.sample_count() << " samples, max residual " << static_cast<double>(worst) << ";";
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"1 exact examples", exact_examples},
      {"2 radical examples", radical_examples},
      {"3 theorem property suites", theorem_suites},
      {"4 identity multiplicity of order-2 configurations", multiplicities},
      {"5 Stachel agreement", stachel_agreement},
      {"6 structural invariants", structural},
      {"7 direct kinematics soundness", dk_soundness},
      {"8 singular-point spot-check", spotcheck},
  };
  int failed = 0;
  for (auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    failed += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << "  criterion " << name << " |" << v.detail.str() << std::endl;
  }
  return failed == 0 ? 0 : 1;
}
