#include "rotamime/json_io.hpp"

#include <cstdio>
#include <cstdlib>

namespace rotamime {

using nlohmann::json;

std::string dec17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_dec(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size())
    throw DomainError("parse_dec: malformed decimal \"" + s + "\"");
  return v;
}

namespace {

json reals(const std::vector<double>& xs) {
  json arr = json::array();
  for (double x : xs) arr.push_back(dec17(x));
  return arr;
}

std::vector<double> reals_back(const json& arr) {
  std::vector<double> xs;
  xs.reserve(arr.size());
  for (const auto& v : arr) xs.push_back(parse_dec(v.get<std::string>()));
  return xs;
}

json interval_json(const Interval& iv) {
  return json{{"lo", dec17(iv.lo)}, {"hi", dec17(iv.hi)}};
}

Interval interval_back(const json& j) {
  return Interval{parse_dec(j.at("lo").get<std::string>()),
                  parse_dec(j.at("hi").get<std::string>())};
}

FareyVerdict verdict_back(const std::string& s) {
  if (s == "parent_larger_den") return FareyVerdict::ParentLargerDen;
  if (s == "parent_smaller_den") return FareyVerdict::ParentSmallerDen;
  if (s == "not_neighbor") return FareyVerdict::NotNeighbor;
  throw DomainError("unknown verdict \"" + s + "\"");
}

} // namespace

json to_json(const MapSpec& spec) {
  return json{{"kernel", kernel_name(spec.kernel.tag)},
              {"a", dec17(spec.kernel.steepness)},
              {"k", spec.k()},
              {"n", spec.n()},
              {"b", dec17(spec.offset)}};
}

MapSpec spec_from_json(const json& j) {
  return make_spec(parse_kernel(j.at("kernel").get<std::string>()),
                   parse_dec(j.at("a").get<std::string>()),
                   j.at("k").get<long long>(), j.at("n").get<long long>());
}

json to_json(const ConditionReport& report) {
  json checks = json::array();
  for (const ConditionCheck& c : report.checks)
    checks.push_back(json{{"id", c.id}, {"passed", c.passed}, {"margin", dec17(c.margin)}});
  json critical;
  if (report.has_critical)
    critical = json{{"y_minus", dec17(report.critical.minus)},
                    {"y_plus", dec17(report.critical.plus)},
                    {"t_minus", dec17(report.critical.t_minus)},
                    {"t_plus", dec17(report.critical.t_plus)}};
  return json{{"spec", to_json(report.spec)},
              {"critical", critical},
              {"epsilon", dec17(report.epsilon)},
              {"y_plus_lt_half_basic", report.y_plus_lt_half_basic},
              {"y_plus_margin", dec17(report.y_plus_margin)},
              {"checks", checks},
              {"member", report.member}};
}

ConditionReport report_from_json(const json& j) {
  ConditionReport r;
  r.spec = spec_from_json(j.at("spec"));
  if (!j.at("critical").is_null()) {
    r.has_critical = true;
    const json& c = j.at("critical");
    r.critical.minus = parse_dec(c.at("y_minus").get<std::string>());
    r.critical.plus = parse_dec(c.at("y_plus").get<std::string>());
    r.critical.t_minus = parse_dec(c.at("t_minus").get<std::string>());
    r.critical.t_plus = parse_dec(c.at("t_plus").get<std::string>());
  }
  r.epsilon = parse_dec(j.at("epsilon").get<std::string>());
  r.y_plus_lt_half_basic = j.at("y_plus_lt_half_basic").get<bool>();
  r.y_plus_margin = parse_dec(j.at("y_plus_margin").get<std::string>());
  for (const auto& c : j.at("checks"))
    r.checks.push_back(ConditionCheck{c.at("id").get<std::string>(),
                                      c.at("passed").get<bool>(),
                                      parse_dec(c.at("margin").get<std::string>())});
  r.member = j.at("member").get<bool>();
  return r;
}

json to_json(const PeriodicOrbit& orbit) {
  return json{{"points", reals(orbit.points)},
              {"period", orbit.period},
              {"multiplier", dec17(orbit.multiplier)},
              {"laps", orbit.laps},
              {"basic_indices", orbit.basic_indices},
              {"rotation_ok", orbit.rotation_ok}};
}

PeriodicOrbit orbit_from_json(const json& j) {
  PeriodicOrbit o;
  o.points = reals_back(j.at("points"));
  o.period = j.at("period").get<int>();
  o.multiplier = parse_dec(j.at("multiplier").get<std::string>());
  o.laps = j.at("laps").get<std::vector<int>>();
  o.basic_indices = j.at("basic_indices").get<std::vector<long long>>();
  o.rotation_ok = j.at("rotation_ok").get<bool>();
  return o;
}

json to_json(const OrbitCertificate& cert) {
  return json{{"lower", dec17(cert.lower)},
              {"upper", dec17(cert.upper)},
              {"lower_images", reals(cert.lower_images)},
              {"upper_images", reals(cert.upper_images)},
              {"basic_trace", cert.basic_trace},
              {"lower_displacement", dec17(cert.lower_displacement)},
              {"upper_displacement", dec17(cert.upper_displacement)},
              {"valid", cert.valid},
              {"failure", cert.failure},
              {"failing_step", cert.failing_step}};
}

OrbitCertificate certificate_from_json(const json& j) {
  OrbitCertificate c;
  c.lower = parse_dec(j.at("lower").get<std::string>());
  c.upper = parse_dec(j.at("upper").get<std::string>());
  c.lower_images = reals_back(j.at("lower_images"));
  c.upper_images = reals_back(j.at("upper_images"));
  c.basic_trace = j.at("basic_trace").get<std::vector<long long>>();
  c.lower_displacement = parse_dec(j.at("lower_displacement").get<std::string>());
  c.upper_displacement = parse_dec(j.at("upper_displacement").get<std::string>());
  c.valid = j.at("valid").get<bool>();
  c.failure = j.at("failure").get<std::string>();
  c.failing_step = j.at("failing_step").get<int>();
  return c;
}

json to_json(const std::vector<PeriodicWindow>& windows) {
  json arr = json::array();
  for (const PeriodicWindow& w : windows)
    arr.push_back(json{{"a_lo", dec17(w.a_range.lo)},
                       {"a_hi", dec17(w.a_range.hi)},
                       {"q", w.q},
                       {"p", w.p},
                       {"verdict", to_string(w.verdict)}});
  return arr;
}

std::vector<PeriodicWindow> windows_from_json(const json& j) {
  std::vector<PeriodicWindow> ws;
  for (const auto& w : j) {
    PeriodicWindow pw;
    pw.a_range = Interval{parse_dec(w.at("a_lo").get<std::string>()),
                          parse_dec(w.at("a_hi").get<std::string>())};
    pw.q = w.at("q").get<int>();
    pw.p = w.at("p").get<int>();
    pw.verdict = verdict_back(w.at("verdict").get<std::string>());
    ws.push_back(pw);
  }
  return ws;
}

json to_json(const ReturnMapData& data) {
  json graph = json::array();
  for (const auto& [x, y] : data.graph)
    graph.push_back(json::array({dec17(x), dec17(y)}));
  return json{{"j", data.j},
              {"r", data.r},
              {"shift", to_string(data.shift)},
              {"J", interval_json(data.J)},
              {"K", interval_json(data.K)},
              {"graph", graph}};
}

ReturnMapData return_map_from_json(const json& j) {
  ReturnMapData d;
  d.j = j.at("j").get<int>();
  d.r = j.at("r").get<long long>();
  d.shift = parse_rational(j.at("shift").get<std::string>());
  d.J = interval_back(j.at("J"));
  d.K = interval_back(j.at("K"));
  for (const auto& pair : j.at("graph"))
    d.graph.emplace_back(parse_dec(pair.at(0).get<std::string>()),
                         parse_dec(pair.at(1).get<std::string>()));
  return d;
}

} // namespace rotamime
