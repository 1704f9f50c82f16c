#ifndef FLEXKIN_IO_HPP
#define FLEXKIN_IO_HPP

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "flexkin/design.hpp"
#include "flexkin/error.hpp"
#include "flexkin/families.hpp"

namespace flexkin::io {

using json = nlohmann::json;

/// Rationals travel as strings ("num/den" or decimal) or JSON integers; floats are refused
/// because they cannot be read back exactly.
inline Rational rational_from(const json& j, const std::string& where) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational::parse(j.dump());
  if (j.is_number_float()) throw UsageError(where + ": floating-point number; write it as a \"num/den\" or decimal string");
  throw UsageError(where + ": expected a rational");
}
inline json to_json(const Rational& r) { return r.str(); }

inline const json& member(const json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw UsageError(where + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw UsageError(where + ": missing \"" + key + "\"");
  return *it;
}

inline QPoint point_from(const json& j, const std::string& where) {
  return {rational_from(member(j, "a", where), where + ".a"), rational_from(member(j, "b", where), where + ".b")};
}
inline json to_json(const QPoint& p) { return {{"a", to_json(p.a)}, {"b", to_json(p.b)}}; }

template <std::size_t N>
std::array<QPoint, N> points_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != N) throw UsageError(where + ": expected an array of " + std::to_string(N) + " points");
  std::array<QPoint, N> out;
  for (std::size_t k = 0; k < N; ++k) out[k] = point_from(j[k], where + "[" + std::to_string(k) + "]");
  return out;
}

inline QConfig config_from(const json& j, const std::string& where = "config") {
  QConfig c;
  c.pts = points_from<6>(member(j, "points", where), where + ".points");
  return c;
}
inline json to_json(const QConfig& c) {
  json pts = json::array();
  for (auto& p : c.pts) pts.push_back(to_json(p));
  return {{"points", pts}};
}
inline json to_json(const SixConfig<long double>& c) {
  json pts = json::array();
  for (auto& p : c.pts) pts.push_back({{"a", static_cast<double>(p.a)}, {"b", static_cast<double>(p.b)}});
  return {{"points", pts}};
}

/// {"base": [3 points], "platform": [3 points], "leg2": [3 squared lengths]}
/// or {"config": {...}} with leg lengths induced by the configuration.
inline QDesign design_from(const json& j, const std::string& where = "design") {
  if (j.is_object() && j.contains("config")) return QDesign::from_config(config_from(j["config"], where + ".config"));
  QDesign d;
  d.base = points_from<3>(member(j, "base", where), where + ".base");
  d.platform = points_from<3>(member(j, "platform", where), where + ".platform");
  const json& l = member(j, "leg2", where);
  if (!l.is_array() || l.size() != 3) throw UsageError(where + ".leg2: expected 3 squared leg lengths");
  for (std::size_t i = 0; i < 3; ++i) d.leg2[i] = rational_from(l[i], where + ".leg2[" + std::to_string(i) + "]");
  d.validate();
  return d;
}
inline json to_json(const QDesign& d) {
  json b = json::array(), p = json::array(), l = json::array();
  for (std::size_t i = 0; i < 3; ++i) {
    b.push_back(to_json(d.base[i]));
    p.push_back(to_json(d.platform[i]));
    l.push_back(to_json(d.leg2[i]));
  }
  return {{"base", b}, {"platform", p}, {"leg2", l}};
}

/// {"tag": "A-rot-general", "params": {"e0": "24/25", ...}}
inline FamilySpec family_from(const json& j, const std::string& where = "family") {
  FamilySpec s;
  const json& tag = member(j, "tag", where);
  if (!tag.is_string()) throw UsageError(where + ".tag: expected a string");
  s.tag = parse_tag(tag.get<std::string>());
  const json& params = member(j, "params", where);
  if (!params.is_object()) throw UsageError(where + ".params: expected an object");
  for (auto& [k, v] : params.items()) s.params[k] = rational_from(v, where + ".params." + k);
  return normalized(s);
}
inline json to_json(const FamilySpec& s) {
  json p = json::object();
  for (auto& [k, v] : s.params) p[k] = to_json(v);
  return {{"tag", to_string(s.tag)}, {"params", p}};
}

inline json to_json(const Form& f) {
  json c = json::array();
  for (auto& v : f.c) c.push_back(to_json(v));
  return c;
}
inline json to_json(const QPoly& p) {
  json c = json::array();
  for (auto& v : p.coeffs()) c.push_back(to_json(v));
  return c;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse(const std::string& text, const std::string& where) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw UsageError(where + ": malformed JSON (" + e.what() + ")");
  }
}

inline json read_json(const std::string& path) { return parse(read_file(path), path); }

}  // namespace flexkin::io

#endif  // FLEXKIN_IO_HPP
