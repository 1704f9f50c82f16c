#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "support.hpp"

using nlohmann::json;
using testsupport::data_path;

namespace {

struct CliRun {
  int status = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(FLEXKIN_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

json run_json(const std::string& args, int expect_status) {
  CliRun r = run(args + " --json");
  EXPECT_EQ(r.status, expect_status) << args;
  json j = json::parse(r.out, nullptr, false);
  EXPECT_FALSE(j.is_discarded()) << r.out;
  if (!j.is_discarded()) {
    EXPECT_EQ(j["schema"], "flexkin.run-report/1");
    EXPECT_EQ(j["exit_status"], expect_status);
    EXPECT_TRUE(j["input_digest"].is_string());
  }
  return j;
}

std::string temp_path(const std::string& name) { return ::testing::TempDir() + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Tag balance of an XML document without DTDs or CDATA.
bool well_formed(const std::string& xml) {
  std::vector<std::string> stack;
  std::size_t i = 0;
  bool root_seen = false;
  while ((i = xml.find('<', i)) != std::string::npos) {
    const std::size_t j = xml.find('>', i);
    if (j == std::string::npos) return false;
    std::string tag = xml.substr(i + 1, j - i - 1);
    i = j + 1;
    if (tag.empty()) return false;
    if (tag[0] == '?' || tag[0] == '!') continue;
    if (tag[0] == '/') {
      if (stack.empty() || stack.back() != tag.substr(1)) return false;
      stack.pop_back();
      continue;
    }
    const bool self_closing = tag.back() == '/';
    const std::string name = tag.substr(0, tag.find_first_of(" \t\n/"));
    if (stack.empty()) {
      if (root_seen) return false;
      root_seen = true;
    }
    if (!self_closing) stack.push_back(name);
  }
  return root_seen && stack.empty();
}

}  // namespace

TEST(Cli, DirectKinematicsOrderTwoDesign) {
  json j = run_json("dk --input " + data_path("example2_design.json"), 0);
  EXPECT_EQ(j["result"]["identity"]["multiplicity"], 3);
}

TEST(Cli, DirectKinematicsSelfMotion) { run_json("dk --input " + data_path("congruent_design.json"), 3); }

TEST(Cli, DirectKinematicsGenericDesign) {
  json j = run_json("dk --input " + data_path("generic_design.json"), 0);
  ASSERT_TRUE(j["result"]["solutions"].is_array());
  EXPECT_LE(j["result"]["solutions"].size(), 6u);
  for (auto& s : j["result"]["solutions"])
    if (s["real"].get<bool>()) {
      EXPECT_LT(s["residual"].get<double>(), 1e-9);
    }
}

TEST(Cli, Classify) {
  json j = run_json("classify --input " + data_path("example3_config.json"), 0);
  EXPECT_EQ(j["result"]["flexion"]["classification"], "OrderAtLeast2");
  EXPECT_EQ(j["result"]["identity"]["multiplicity"], 3);
  EXPECT_EQ(j["result"]["stachel"]["mode"], "Parallel");
}

TEST(Cli, Average) {
  json j = run_json("average --input " + data_path("example1_pair.json"), 0);
  EXPECT_EQ(j["result"]["pair"]["set"], "A");
}

TEST(Cli, SynthesizeSingleOrientation) {
  json j = run_json("synthesize --input " + data_path("example5_family.json"), 0);
  EXPECT_EQ(j["result"]["orientations"].size(), 1u);
}

TEST(Cli, SynthesizeSelfMotionFamily) { run_json("synthesize --input " + data_path("translation_equal_legs_family.json"), 3); }

TEST(Cli, SynthesizeWritesSvg) {
  const std::string svg = temp_path("flexkin_example3.svg");
  std::remove(svg.c_str());
  run_json("synthesize --input " + data_path("example3_family.json") + " --svg " + svg, 0);
  const std::string text = slurp(svg);
  ASSERT_FALSE(text.empty());
  EXPECT_TRUE(well_formed(text));
}

TEST(Cli, Render) {
  const std::string svg = temp_path("flexkin_render.svg");
  std::remove(svg.c_str());
  run_json("render --input " + data_path("example2_config.json") + " --svg " + svg, 0);
  const std::string text = slurp(svg);
  EXPECT_TRUE(well_formed(text));
  auto count = [&](const std::string& needle) {
    std::size_t n = 0;
    for (auto p = text.find(needle); p != std::string::npos; p = text.find(needle, p + 1)) ++n;
    return n;
  };
  EXPECT_EQ(count("class=\"vertex\""), 6u);
  EXPECT_EQ(count("class=\"leg\""), 3u);
}

TEST(Cli, VerifyExamples) {
  for (int n = 1; n <= 7; ++n) {
    json j = run_json("verify-example " + std::to_string(n), 0);
    EXPECT_TRUE(j["result"]["passes"].get<bool>()) << n;
  }
}

TEST(Cli, VerifyTheorem) {
  run_json("verify-theorem --tag B-translation --trials 50 --seed 3", 0);
  run_json("verify-theorem --tag A-rot-general --trials 25 --seed 3", 0);
  run_json("verify-theorem --tag C-glide --trials 25 --seed 3", 0);
}

TEST(Cli, DeterministicReports) {
  const std::string args = "verify-theorem --tag A-rot-special --trials 10 --seed 99 --json";
  CliRun a = run(args), b = run(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  CliRun c = run("dk --json --input " + data_path("generic_design.json"));
  CliRun d = run("dk --json --input " + data_path("generic_design.json"));
  EXPECT_EQ(c.out, d.out);
}

TEST(Cli, BadInput) {
  EXPECT_EQ(run("verify-example 9").status, 2);
  EXPECT_EQ(run("verify-theorem --tag nope").status, 2);
  EXPECT_EQ(run("dk").status, 2);
  EXPECT_EQ(run("dk --input /nonexistent.json").status, 2);
  const std::string bad = temp_path("flexkin_bad.json");
  std::ofstream(bad) << "{\"points\": [1, 2";
  EXPECT_EQ(run("classify --input " + bad).status, 2);
  std::ofstream(bad) << "{\"points\": [{\"a\": 0.5, \"b\": 1}]}";
  EXPECT_EQ(run("classify --input " + bad).status, 2);
}
