// flexkin: command-line front end for the averaged-configuration toolkit.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flexkin/averaging.hpp"
#include "flexkin/examples.hpp"
#include "flexkin/flexion.hpp"
#include "flexkin/io.hpp"
#include "flexkin/kinematics.hpp"
#include "flexkin/stachel.hpp"
#include "flexkin/svg.hpp"
#include "flexkin/theorem_check.hpp"

namespace {

using flexkin::io::json;
using namespace flexkin;

constexpr const char* kSchema = "flexkin.run-report/1";

enum Exit : int { kOk = 0, kAssertion = 1, kBadInput = 2, kDegenerate = 3 };

std::string fnv1a64(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

struct Options {
  std::string input;
  std::string svg;
  std::uint64_t seed = 1;
  int trials = 50;
  double tol = 1e-9;
  bool json = false;
  std::string tag;
  int example = 0;
};

struct Outcome {
  json result = json::object();
  int status = kOk;
  std::vector<std::string> lines;  // human-readable summary
};

double to_d(long double x) { return static_cast<double>(x); }

json complex_json(std::complex<long double> z) { return json::array({to_d(z.real()), to_d(z.imag())}); }

void write_svg(const std::string& path, const SixConfig<long double>& c, const std::string& title) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot write '" + path + "'");
  SvgStyle st;
  st.title = title;
  out << render_svg(c, st);
}

json stachel_json(const StachelReport& r) {
  json j = {{"mode", to_string(r.mode)}, {"passes", r.passes}, {"residual", to_d(r.residual)}, {"alpha", to_d(r.alpha)},
            {"beta", to_d(r.beta)}, {"relabel_shift", r.relabel_shift}, {"collinear_degenerate", r.collinear_degenerate},
            {"note", r.note}};
  if (r.exact_verdict) j["exact_verdict"] = *r.exact_verdict;
  auto pt = [](const LPoint& p) { return json::array({to_d(p.a), to_d(p.b)}); };
  if (r.L) j["L"] = pt(*r.L);
  if (r.Q25) j["Q25"] = pt(*r.Q25);
  if (r.Q36) j["Q36"] = pt(*r.Q36);
  return j;
}

Outcome cmd_dk(const Options& o, const json& in) {
  Outcome out;
  const QDesign d = io::design_from(in);
  const auto cs = build_constraints(d);
  const DKResult r = solve_direct_kinematics(cs);
  out.result["status"] = to_string(r.status);
  out.result["note"] = r.note;
  out.result["eliminant"] = io::to_json(r.eliminant);
  out.result["circle_factors"] = r.circle_factors;
  out.result["infinity_multiplicity"] = r.infinity_multiplicity;
  json sols = json::array();
  for (auto& s : r.solutions) {
    json pose = json::array();
    for (auto& q : s.pose) pose.push_back(complex_json(q));
    sols.push_back({{"pose", pose}, {"multiplicity", s.multiplicity}, {"real", s.is_real}, {"shared_rotation", s.shared_rotation},
                    {"residual", to_d(s.residual)}});
  }
  out.result["solutions"] = sols;
  // the identity pose when it solves the system, with its exact multiplicity
  if (is_solution(cs, PlanarPose::identity())) {
    const OrderResult om = flexion_order_by_multiplicity(cs, PlanarPose::identity());
    out.result["identity"] = {{"self_motion", om.self_motion}, {"multiplicity", om.multiplicity}, {"order", om.order}};
    if (!om.self_motion) out.lines.push_back("identity pose: multiplicity " + std::to_string(om.multiplicity));
  }
  out.lines.push_back(std::string("status: ") + to_string(r.status) + (r.note.empty() ? "" : " (" + r.note + ")"));
  int real = 0;
  for (auto& s : r.solutions) real += s.is_real ? 1 : 0;
  out.lines.push_back(std::to_string(r.solutions.size()) + " solutions, " + std::to_string(real) + " real");
  if (r.status == DKStatus::SelfMotion) out.status = kDegenerate;
  (void)o;
  return out;
}

json flexion_json(const FlexionReport& f) {
  json g = json::array(), si = json::array();
  for (auto& v : f.grad_s_at_pose) g.push_back(io::to_json(v));
  for (auto& v : f.s_i_at_pose) si.push_back(io::to_json(v));
  return {{"classification", to_string(f.classification)}, {"s", io::to_json(f.s_at_pose)}, {"grad_s", g}, {"s_i", si}};
}

Outcome cmd_classify(const Options& o, const json& in) {
  Outcome out;
  const QConfig c = io::config_from(in.contains("config") ? in["config"] : in);
  const ValidityFlags fl = validity(c);
  out.result["zero_length_leg"] = fl.zero_length_leg;
  out.result["coincident_legs"] = fl.coincident_legs;
  if (fl.zero_length_leg) throw InvalidConfig("a leg has zero length");
  const FlexionReport f = classify_configuration(c);
  out.result["flexion"] = flexion_json(f);
  const OrderResult om = flexion_order_by_multiplicity(induced_system(c), PlanarPose::identity());
  out.result["identity"] = {{"self_motion", om.self_motion}, {"multiplicity", om.multiplicity}, {"order", om.order}};
  const StachelReport st = stachel_check(c, o.tol);
  out.result["stachel"] = stachel_json(st);
  out.lines.push_back(std::string("classification: ") + to_string(f.classification));
  if (om.self_motion) out.lines.push_back("identity pose lies on a self-motion");
  else out.lines.push_back("identity multiplicity: " + std::to_string(om.multiplicity));
  out.lines.push_back(std::string("Stachel: ") + to_string(st.mode) + (st.passes ? " passes" : " fails"));
  if (!o.svg.empty()) write_svg(o.svg, to_long_double(c), "configuration");
  if (om.self_motion) out.status = kDegenerate;
  return out;
}

Outcome cmd_average(const Options& o, const json& in) {
  Outcome out;
  const QConfig x = io::config_from(io::member(in, "x", "input"), "x");
  const QConfig y = io::config_from(io::member(in, "y", "input"), "y");
  const AverageResult a = average(x, y);
  const PairClass pc = classify_pair(x, y);
  out.result["average"] = io::to_json(a.config);
  out.result["zero_length_leg"] = a.flags.zero_length_leg;
  out.result["coincident_legs"] = a.flags.coincident_legs;
  out.result["pair"] = {{"set", to_string(pc.set)}, {"base_map", to_string(pc.base_map)}, {"platform_map", to_string(pc.platform_map)},
                        {"subcase", pc.subcase}, {"note", pc.note}};
  out.lines.push_back(std::string("set ") + to_string(pc.set) + (pc.subcase.empty() ? "" : " (" + pc.subcase + ")"));
  if (!a.flags.zero_length_leg) {
    const FlexionReport f = classify_configuration(a.config);
    out.result["flexion"] = flexion_json(f);
    out.lines.push_back(std::string("averaged configuration: ") + to_string(f.classification));
  } else {
    out.lines.push_back("averaged configuration has a zero-length leg");
  }
  if (!o.svg.empty()) write_svg(o.svg, to_long_double(a.config), "averaged configuration");
  return out;
}

json orientation_json(const Orientation& or_) {
  json j = {{"root", or_.root.str()}, {"degenerate", or_.degenerate}, {"certified", or_.certified}, {"order", to_string(or_.order)},
            {"all_collinear", or_.all_collinear}, {"note", or_.note}, {"multiplicity", or_.root.multiplicity}};
  if (or_.root.at_infinity) j["f"] = json::array({"0", "1"});
  else if (or_.root.t->is_rational()) j["f"] = json::array({"1", or_.root.t->exact().str()});
  else {
    j["f1_over_f0"] = to_d(or_.root.f1_over_f0());
    j["minimal_polynomial"] = io::to_json(or_.root.t->poly());
  }
  if (or_.identity_multiplicity) j["identity_multiplicity"] = *or_.identity_multiplicity;
  if (!or_.degenerate) {
    j["config"] = or_.exact_config ? io::to_json(*or_.exact_config) : io::to_json(or_.approx_config);
    j["stachel"] = stachel_json(or_.exact_config ? stachel_check(*or_.exact_config) : stachel_check(or_.approx_config));
  }
  return j;
}

Outcome cmd_synthesize(const Options& o, const json& in) {
  Outcome out;
  const FamilySpec spec = io::family_from(in.contains("family") ? in["family"] : in);
  const OrientationResult r = solve_orientations(spec);
  out.result["family"] = io::to_json(spec);
  out.result["self_motion_family"] = r.self_motion_family;
  out.result["note"] = r.note;
  if (r.condition) out.result["condition"] = io::to_json(*r.condition);
  json deg = json::array();
  for (auto& d : r.degenerate) deg.push_back({{"form", io::to_json(d.form)}, {"meaning", d.meaning}});
  out.result["degenerate_factors"] = deg;
  json ors = json::array();
  const Orientation* first = nullptr;
  for (auto& x : r.orientations) {
    ors.push_back(orientation_json(x));
    if (!first && !x.degenerate) first = &x;
    out.lines.push_back("orientation " + x.root.str() + ": " +
                        (x.degenerate ? "degenerate (" + x.note + ")" : std::string(to_string(x.order)) + (x.certified ? ", certified" : "")));
  }
  out.result["orientations"] = ors;
  if (!r.note.empty()) out.lines.push_back(r.note);
  if (r.orientations.empty() && r.note.empty()) out.lines.push_back("no real orientation");
  if (r.self_motion_family) {
    out.status = kDegenerate;
    return out;
  }
  if (!o.svg.empty()) {
    if (!first) throw UsageError("no valid orientation to render");
    write_svg(o.svg, first->approx_config, std::string(to_string(spec.tag)) + " at " + first->root.str());
  }
  return out;
}

Outcome cmd_verify_example(const Options& o) {
  Outcome out;
  const ExampleReport r = verify_example(o.example);
  out.result["example"] = r.number;
  out.result["family"] = io::to_json(r.spec);
  json checks = json::array();
  for (auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"expected", c.expected}, {"got", c.got}, {"pass", c.pass}});
    if (!c.pass) out.lines.push_back("MISMATCH " + c.name + ": expected " + c.expected + ", got " + c.got);
  }
  out.result["checks"] = checks;
  out.result["passes"] = r.passes();
  out.lines.push_back("example " + std::to_string(r.number) + ": " + (r.passes() ? "all " + std::to_string(r.checks.size()) + " checks match" : "FAILED"));
  if (!r.passes()) out.status = kAssertion;
  if (!o.svg.empty())
    for (auto& x : r.result.orientations)
      if (!x.degenerate) {
        write_svg(o.svg, x.approx_config, "example " + std::to_string(r.number));
        break;
      }
  return out;
}

Outcome cmd_verify_theorem(const Options& o) {
  Outcome out;
  if (o.tag.empty()) throw UsageError("verify-theorem needs --tag");
  const FamilyTag tag = parse_tag(o.tag);
  const TheoremReport r = verify_theorem(tag, o.trials, o.seed);
  int roots = 0, order2 = 0, invalid = 0, singular = 0;
  json counter = json::array();
  for (auto& t : r.records) {
    roots += t.roots_checked;
    order2 += t.order2_roots;
    invalid += t.invalid_roots;
    singular += t.singular_roots;
    if (!t.passed) {
      counter.push_back({{"family", io::to_json(t.spec)}, {"failures", t.failures}});
      out.lines.push_back("COUNTEREXAMPLE " + describe(t.spec));
      for (auto& f : t.failures) out.lines.push_back("  " + f);
    }
  }
  out.result = {{"tag", to_string(tag)}, {"trials", r.trials}, {"seed", r.seed}, {"failures", r.failures()}, {"roots_checked", roots},
                {"order2_roots", order2}, {"invalid_roots", invalid}, {"singular_roots", singular}, {"counterexamples", counter}};
  out.lines.push_back(std::string(to_string(tag)) + ": " + std::to_string(r.trials) + " trials, " + std::to_string(r.failures()) +
                      " counterexamples, " + std::to_string(roots) + " roots checked");
  if (!r.passes()) out.status = kAssertion;
  return out;
}

Outcome cmd_render(const Options& o, const json& in) {
  Outcome out;
  if (o.svg.empty()) throw UsageError("render needs --svg");
  QConfig c;
  if (in.contains("tag")) {
    const FamilySpec spec = io::family_from(in);
    if (!spec.has("f0")) throw UsageError("render of a family needs f0 and f1");
    c = averaged_config(spec, spec["f0"], spec["f1"]);
  } else {
    c = io::config_from(in.contains("config") ? in["config"] : in);
  }
  write_svg(o.svg, to_long_double(c), "configuration");
  out.result["config"] = io::to_json(c);
  out.result["svg"] = o.svg;
  out.lines.push_back("wrote " + o.svg);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Averaged configurations of planar 3-RPR manipulators"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "print the run report as JSON");
    sub->add_option("--tol", o.tol, "tolerance for floating-point checks");
  };
  auto* dk = app.add_subcommand("dk", "direct kinematics of a design");
  auto* classify = app.add_subcommand("classify", "flexion order of a configuration at the identity pose");
  auto* avg = app.add_subcommand("average", "average two realisations and classify the pair");
  auto* syn = app.add_subcommand("synthesize", "orientations raising the flexion order of a family");
  auto* vex = app.add_subcommand("verify-example", "rebuild a reference example and compare all stated values");
  auto* vth = app.add_subcommand("verify-theorem", "randomised check of a family's closed-form condition");
  auto* ren = app.add_subcommand("render", "draw a configuration as SVG");
  for (auto* s : {dk, classify, avg, syn, ren}) s->add_option("--input", o.input, "input JSON file")->required();
  for (auto* s : {classify, avg, syn, vex, ren}) s->add_option("--svg", o.svg, "write an SVG drawing");
  for (auto* s : {dk, classify, avg, syn, vex, vth, ren}) add_common(s);
  vex->add_option("n", o.example, "example number")->required()->check(CLI::Range(1, 7));
  vth->add_option("--tag", o.tag, "family tag")->required();
  vth->add_option("--trials", o.trials, "number of random trials")->check(CLI::PositiveNumber);
  vth->add_option("--seed", o.seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }

  std::vector<std::string> echo(argv + 1, argv + argc);
  json report = {{"schema", kSchema}, {"command", echo}};
  Outcome out;
  std::string digest_source;
  try {
    json in;
    if (!o.input.empty()) {
      digest_source = io::read_file(o.input);
      in = io::parse(digest_source, o.input);
    } else {
      for (auto& a : echo) digest_source += a + '\n';
    }
    if (dk->parsed()) out = cmd_dk(o, in);
    else if (classify->parsed()) out = cmd_classify(o, in);
    else if (avg->parsed()) out = cmd_average(o, in);
    else if (syn->parsed()) out = cmd_synthesize(o, in);
    else if (vex->parsed()) out = cmd_verify_example(o);
    else if (vth->parsed()) out = cmd_verify_theorem(o);
    else out = cmd_render(o, in);
  } catch (const UsageError& e) {
    out.status = kBadInput;
    out.result = {{"error", e.what()}};
    out.lines = {std::string("error: ") + e.what()};
  } catch (const InvalidConfig& e) {
    out.status = kBadInput;
    out.result = {{"error", e.what()}};
    out.lines = {std::string("invalid configuration: ") + e.what()};
  } catch (const InvalidPose& e) {
    out.status = kBadInput;
    out.result = {{"error", e.what()}};
    out.lines = {std::string("invalid pose: ") + e.what()};
  } catch (const std::exception& e) {
    out.status = kAssertion;
    out.result = {{"error", e.what()}};
    out.lines = {std::string("failure: ") + e.what()};
  }
  report["input_digest"] = fnv1a64(digest_source);
  report["result"] = out.result;
  report["exit_status"] = out.status;
  if (o.json) std::cout << report.dump(2) << "\n";
  else
    for (auto& l : out.lines) (out.status == kBadInput ? std::cerr : std::cout) << l << "\n";
  return out.status;
}
