#ifndef FLEXKIN_THEOREM_CHECK_HPP
#define FLEXKIN_THEOREM_CHECK_HPP

#include <algorithm>
#include <atomic>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "flexkin/families.hpp"
#include "flexkin/stachel.hpp"

namespace flexkin {

/// Rationals with numerators in [-20, 20] and denominators in [1, 10].
inline Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-20, 20), den(1, 10);
  const int n = num(rng);
  const int d = den(rng);
  return Rational(n) / Rational(d);
}

namespace detail {

inline bool share_root(const Form& x, const Form& y) {
  if (x.degree() == 0 || y.degree() == 0) return false;
  if (x.c.back().is_zero() && y.c.back().is_zero()) return true;
  const QPoly px = x.dehomogenize(), py = y.dehomogenize();
  if (px.is_zero() || py.is_zero()) return true;
  return gcd(px, py).degree() > 0;
}

}  // namespace detail

/// Rejects parameter draws on the listed degeneracies: zero legs, collapsing or collinear anchor
/// triples where the set forbids them, vanishing parameter factors, identically vanishing or
/// degenerate-sharing conditions.
inline bool generic_parameters(const FamilySpec& spec, std::string* why = nullptr) {
  auto fail = [&](const char* m) {
    if (why) *why = m;
    return false;
  };
  FamilySpec s;
  try {
    s = normalized(spec);
  } catch (const UsageError&) {
    return fail("case precondition");
  }
  const UnrotatedPair up = build_unrotated(s);
  for (std::size_t i = 0; i < 3; ++i)
    if (up.x.pts[i] == up.x.pts[i + 3]) return fail("zero leg in the realisation");
  auto collinear = [](const QConfig& c, std::size_t o) { return orient(c.pts[o], c.pts[o + 1], c.pts[o + 2]).is_zero(); };
  auto collapsed = [](const QConfig& c, std::size_t o) { return c.pts[o] == c.pts[o + 1] && c.pts[o + 1] == c.pts[o + 2]; };
  if (collapsed(up.x, 0) || collapsed(up.x, 3)) return fail("anchor triple collapses");
  const char set = family_set(s.tag);
  if (set == 'B' && (collinear(up.x, 0) || collinear(up.x, 3))) return fail("collinear anchors in a set B pair");
  if (set == 'C' && collinear(up.x, 3)) return fail("collinear platform in a set C pair");
  // pure reflection with every base point on the axis: the pair is congruent by construction
  if (s.tag != FamilyTag::CReflGeneral && congruent(up.x, up.xp)) return fail("congruent realisations");
  const TheoremPolynomial tp = theorem_polynomial(s);
  for (auto& d : tp.degenerate) {
    if (d.form.is_zero()) return fail("degenerate factor vanishes identically");
    if (d.kind == DegenerateKind::Parameter && d.form.c[0].is_zero()) return fail("parameter factor vanishes");
  }
  if (s.tag == FamilyTag::ARotVerySpecial && (s["e0"] - Rational(2) * s["e1"] * s["l1"]).is_zero())
    return fail("rotational self-motion");
  if (tp.condition) {
    if (tp.condition->is_zero()) return fail("condition vanishes identically");
    for (auto& d : tp.degenerate)
      if (d.kind != DegenerateKind::Parameter && detail::share_root(*tp.condition, d.form))
        return fail("condition shares a root with a degenerate factor");
  }
  for (std::size_t i = 0; i < tp.degenerate.size(); ++i)
    for (std::size_t j = i + 1; j < tp.degenerate.size(); ++j)
      if (tp.degenerate[i].kind != DegenerateKind::Parameter && tp.degenerate[j].kind != DegenerateKind::Parameter &&
          detail::share_root(tp.degenerate[i].form, tp.degenerate[j].form))
        return fail("two degenerate factors share a root");
  return true;
}

/// Draws generic parameters for a case (e1 = 1 in rotation cases).
inline FamilySpec random_family(FamilyTag tag, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    FamilySpec s;
    s.tag = tag;
    for (auto& k : family_params(tag)) s.params[k] = k == "e1" ? Rational(1) : random_rational(rng);
    if (generic_parameters(s)) return s;
  }
  throw VerificationFailure(std::string("could not draw generic parameters for ") + to_string(tag));
}

/// A rational orientation off the condition and all degenerate factors.
inline std::pair<Rational, Rational> random_generic_orientation(const TheoremPolynomial& tp, std::mt19937_64& rng) {
  for (;;) {
    const Rational t = random_rational(rng);
    bool bad = false;
    auto hits = [&](const Form& f) { return f.degree() > 0 && f(Rational(1), t).is_zero(); };
    if (tp.condition && hits(*tp.condition)) bad = true;
    for (auto& d : tp.degenerate) bad = bad || hits(d.form);
    if (!bad) return {Rational(1), t};
  }
}

struct StachelSample {
  FlexionClass order = FlexionClass::Order0;
  bool passes = false;
  bool collinear_degenerate = false;  // five anchors collinear: both angles vanish for any order
};

struct TrialRecord {
  FamilySpec spec;
  bool passed = true;
  std::vector<std::string> failures;
  int roots_checked = 0;
  int order2_roots = 0;
  std::vector<int> identity_multiplicities;  // at OrderAtLeast2 roots
  int singular_roots = 0;                    // roots giving a singular point of V1
  int invalid_roots = 0;                     // roots giving zero-length or coincident legs
  std::vector<StachelSample> stachel;
};

struct TheoremReport {
  FamilyTag tag = FamilyTag::ARotGeneral;
  int trials = 0;
  std::uint64_t seed = 0;
  std::vector<TrialRecord> records;
  int failures() const {
    return static_cast<int>(std::count_if(records.begin(), records.end(), [](const TrialRecord& r) { return !r.passed; }));
  }
  bool passes() const { return failures() == 0; }
};

inline std::string describe(const FamilySpec& s) {
  std::ostringstream os;
  os << to_string(s.tag) << " {";
  bool first = true;
  for (auto& [k, v] : s.params) {
    os << (first ? "" : ", ") << k << "=" << v;
    first = false;
  }
  os << "}";
  return os.str();
}

namespace detail {

inline void check_structure(const FamilySpec& spec, const TheoremPolynomial& tp, std::mt19937_64& rng, TrialRecord& rec) {
  auto fail = [&](const std::string& m) {
    rec.passed = false;
    rec.failures.push_back(m);
  };
  const Rational f0 = random_rational(rng), f1 = random_rational(rng);
  if (!(f0.is_zero() && f1.is_zero())) {
    auto [x, xp] = build_pair(spec, f0, f1);
    for (std::size_t i = 0; i < 3; ++i)
      if (x.leg_length2(i) != xp.leg_length2(i)) fail("leg " + std::to_string(i + 1) + " lengths differ between the realisations");
    if (!same_intrinsic_metric(x, xp)) fail("realisations do not share the intrinsic metric");
  }
  const UnrotatedPair up = build_unrotated(spec);
  for (std::size_t i = 0; i < 3; ++i) {
    const bool free_base = (i == 2 && (spec.tag == FamilyTag::ARotSpecial || spec.tag == FamilyTag::BRotSpecial ||
                                       spec.tag == FamilyTag::CReflSpecial)) ||
                           (i >= 1 && (spec.tag == FamilyTag::ARotVerySpecial || spec.tag == FamilyTag::CReflVerySpecial));
    if (free_base) continue;
    QPoint xi = up.x.pts[i];
    QPoint p = up.x.pts[i + 3];
    QPoint pp = up.xp.pts[i + 3];
    if (family_set(spec.tag) == 'B') pp = reflect_x(pp);
    if (dist2(xi, p) != dist2(xi, pp)) fail("base point " + std::to_string(i + 1) + " is not on the bisector");
  }
  // degenerate-factor semantics at each rational root
  for (auto& d : tp.degenerate) {
    if (d.kind == DegenerateKind::Parameter || d.form.degree() != 1) continue;
    const Rational a = d.form.c[0], b = d.form.c[1];  // a f0 + b f1 = 0  =>  (f0:f1) = (b : -a)
    const QConfig c = averaged_config(spec, b, -a);
    bool ok = true;
    switch (d.kind) {
      case DegenerateKind::BaseCollapse: ok = c.pts[0] == c.pts[1] && c.pts[1] == c.pts[2]; break;
      case DegenerateKind::PlatformCollapse: ok = c.pts[3] == c.pts[4] && c.pts[4] == c.pts[5]; break;
      case DegenerateKind::LegZero: ok = c.pts[d.leg - 1] == c.pts[d.leg + 2]; break;
      case DegenerateKind::AxisCollapse:
        for (std::size_t k = 0; k < 6; ++k) ok = ok && c.pts[k].b.is_zero();
        for (std::size_t i = 0; i < 3; ++i) ok = ok && c.pts[i] == c.pts[i + 3];
        break;
      default: break;
    }
    if (!ok) fail("degenerate factor '" + d.meaning + "' does not produce that configuration");
  }
}

}  // namespace detail

/// One verification trial on a concrete parameter record.
inline TrialRecord verify_instance(const FamilySpec& spec, std::mt19937_64& rng, bool with_stachel = true) {
  TrialRecord rec;
  rec.spec = spec;
  auto fail = [&](const std::string& m) {
    rec.passed = false;
    rec.failures.push_back(m);
  };
  const TheoremPolynomial tp = theorem_polynomial(spec);
  detail::check_structure(spec, tp, rng, rec);

  if (spec.tag == FamilyTag::ARotGeneral && !(regrouped_condition(spec) - *tp.condition).is_zero())
    fail("T1, T2, T3 regrouping differs from the condition");

  const DerivedCondition dc = derived_condition(spec, tp);
  const bool constant_zero_condition = tp.condition && tp.condition->is_zero();
  if (spec.tag == FamilyTag::CReflGeneral) {
    if (!dc.all_vanish || !dc.grad_vanishes) fail("expected s, grad s and every s_i to vanish on the whole pencil");
  } else if (constant_zero_condition) {
    if (!dc.all_vanish) fail("condition vanishes identically but the generators do not");
  } else {
    if (dc.all_vanish) fail("generators vanish identically on the pencil");
    else if (!(dc.reduced == condition_signature(tp)))
      fail("derived condition " + dc.reduced.str() + " differs from closed form " + condition_signature(tp).str());
    const bool expect_s_zero = generic_class(spec.tag) != FlexionClass::Order0;
    if (dc.s_vanishes != expect_s_zero) fail(std::string("s on the pencil: expected ") + (expect_s_zero ? "zero" : "nonzero"));
  }

  // generic orientation
  {
    auto [f0, f1] = random_generic_orientation(tp, rng);
    OrientationRoot r;
    r.t = AlgebraicReal(f1 / f0);
    const std::string where = "orientation (1 : " + (f1 / f0).str() + ")";
    if (constant_zero_condition) {
      // raised order for every orientation: checked through the identity multiplicity as well
      auto a = analyse_orientation(spec, r, true);
      if (!root_class_ok(spec.tag, a.order)) fail(where + " gives " + to_string(a.order));
      const int m = a.identity_multiplicity.value_or(-1);
      if (m >= 0 && m < 3) fail(where + ": identity multiplicity " + std::to_string(m) + " < 3");
      if (a.order == FlexionClass::OrderAtLeast2) rec.identity_multiplicities.push_back(m);
    } else {
      auto a = analyse_orientation(spec, r, false);
      const FlexionClass want = generic_class(spec.tag);
      if (a.order != want) fail(where + " gives " + to_string(a.order) + ", expected " + to_string(want));
      if (family_set(spec.tag) == 'A' && a.order == FlexionClass::Order0) fail("set A configuration is first-order rigid");
      if (with_stachel && a.order != FlexionClass::SingularV1) {
        auto st = stachel_check(*a.exact_config);
        if (st.mode != StachelMode::Inapplicable) rec.stachel.push_back({a.order, st.passes, st.collinear_degenerate});
      }
    }
  }

  // roots of the condition
  if (tp.condition && !tp.condition->is_zero() && tp.condition->degree() > 0) {
    for (auto& r : projective_real_roots(*tp.condition)) {
      bool degenerate = false;
      for (auto& d : tp.degenerate) degenerate = degenerate || (d.kind != DegenerateKind::Parameter && r.is_root_of(d.form));
      if (degenerate) continue;
      ++rec.roots_checked;
      auto a = analyse_orientation(spec, r, true);
      if (!a.flags.valid()) {
        ++rec.invalid_roots;
        continue;
      }
      if (!root_class_ok(spec.tag, a.order)) fail("root " + r.str() + " gives " + to_string(a.order));
      if (a.order == FlexionClass::SingularV1) ++rec.singular_roots;
      if (a.order == FlexionClass::Order1 && a.identity_multiplicity && *a.identity_multiplicity != 2)
        fail("root " + r.str() + ": order 1 but identity multiplicity " + std::to_string(*a.identity_multiplicity));
      if (a.order == FlexionClass::OrderAtLeast2) {
        ++rec.order2_roots;
        const int m = a.identity_multiplicity.value_or(-1);
        rec.identity_multiplicities.push_back(m);
        if (m >= 0 && m < 3) fail("root " + r.str() + ": identity multiplicity " + std::to_string(m) + " < 3");
      }
      if (with_stachel && a.order != FlexionClass::SingularV1) {
        auto st = a.exact_config ? stachel_check(*a.exact_config) : stachel_check(a.approx_config);
        if (st.mode != StachelMode::Inapplicable) rec.stachel.push_back({a.order, st.passes, st.collinear_degenerate});
      }
    }
  }
  return rec;
}

struct SpotcheckRun {
  FamilySpec spec;
  SpotcheckReport report;
};

struct FamilySpotcheck {
  bool skipped = false;  // condition vanishes identically: self-motion family
  std::string note;
  std::vector<SpotcheckRun> runs;
  std::size_t sample_count() const {
    std::size_t n = 0;
    for (auto& r : runs) n += r.report.samples.size();
    return n;
  }
  bool passes() const {
    if (skipped) return false;
    for (auto& r : runs)
      if (!r.report.passes()) return false;
    return true;
  }
};

/// Common zeros of the reduced generators on the orientation pencil of spec; when the pencil has
/// fewer than `samples` of them, nearby instantiations (free parameters moved by at most 1/5) are
/// added until enough zeros are collected.
inline FamilySpotcheck family_spotcheck(const FamilySpec& raw, std::size_t samples, std::uint64_t seed, long double tol = 1e-9L) {
  FamilySpotcheck out;
  FamilySpec base = normalized(raw);
  base.params.erase("f0");
  base.params.erase("f1");
  std::mt19937_64 rng(seed);
  auto run_one = [&](const FamilySpec& s) {
    const TheoremPolynomial tp = theorem_polynomial(s);
    if (tp.condition && tp.condition->is_zero()) return false;
    QPoly cond(1);
    if (tp.condition && tp.condition->degree() > 0) cond = tp.condition->dehomogenize();
    out.runs.push_back({s, singularity_spotcheck(build_line(s), cond, tol)});
    return true;
  };
  if (!run_one(base)) {
    out.skipped = true;
    out.note = "condition vanishes identically (self-motion family); skipped";
    return out;
  }
  for (int attempt = 0; attempt < 200 && out.sample_count() < samples; ++attempt) {
    FamilySpec s = base;
    for (auto& [k, v] : s.params)
      if (k != "e0" && k != "e1") v = v + random_rational(rng) / Rational(100);
    if (!generic_parameters(s)) continue;
    run_one(s);
  }
  if (out.sample_count() < samples) out.note = "fewer common zeros than requested";
  return out;
}

/// Seeded trials run on worker threads; each trial owns a generator seeded from (seed, index).
inline TheoremReport verify_theorem(FamilyTag tag, int trials, std::uint64_t seed, bool with_stachel = true) {
  if (trials <= 0) throw UsageError("trials must be positive");
  TheoremReport rep;
  rep.tag = tag;
  rep.trials = trials;
  rep.seed = seed;
  rep.records.resize(static_cast<std::size_t>(trials));
  auto run = [&](int i) {
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(tag)};
    std::mt19937_64 rng(sq);
    FamilySpec spec = random_family(tag, rng);
    if (tag == FamilyTag::ARotVerySpecial && i % 2 == 1) {
      // x3 on the line through x2 and the common point of x5, x6: the condition vanishes identically
      for (int k = 0; k < 1000; ++k) {
        FamilySpec alt = spec;
        const Rational lambda = random_rational(rng);
        alt.params["a3"] = lambda * spec["a2"];
        alt.params["b3"] = lambda * spec["b2"];
        std::string why;
        if (!generic_parameters(alt, &why) && why == "condition vanishes identically") {
          spec = alt;
          break;
        }
      }
    }
    try {
      rep.records[static_cast<std::size_t>(i)] = verify_instance(spec, rng, with_stachel);
    } catch (const std::exception& e) {
      TrialRecord r;
      r.spec = spec;
      r.passed = false;
      r.failures.push_back(std::string("exception: ") + e.what());
      rep.records[static_cast<std::size_t>(i)] = r;
    }
  };
  const unsigned hw = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < hw; ++w)
    pool.emplace_back([&] {
      for (int i = next++; i < trials; i = next++) run(i);
    });
  for (auto& th : pool) th.join();
  return rep;
}

}  // namespace flexkin

#endif  // FLEXKIN_THEOREM_CHECK_HPP
