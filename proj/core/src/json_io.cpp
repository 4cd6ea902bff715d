#include "circlech/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace circlech {

using nlohmann::json;

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error([&] {
        std::string msg = "invalid generating family:";
        for (const auto& v : violations) msg += " [" + v + "]";
        return msg;
      }()),
      violations_(std::move(violations)) {}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

double number(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_number()) {
    throw ParseError(std::string("expected numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

cplx complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("expected complex number as [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

}  // namespace

json to_json(const CircleMeasure& m) {
  json j = json::object();
  if (!m.atoms().empty() || !m.moment_part()) {
    json atoms = json::array();
    for (const auto& a : m.atoms()) atoms.push_back({{"theta", a.theta}, {"weight", a.weight}});
    j["atoms"] = std::move(atoms);
  }
  if (const auto& mp = m.moment_part()) {
    json values = json::array();
    for (const auto& v : mp->values) values.push_back({v.real(), v.imag()});
    j["moments"] = {{"mass", mp->mass}, {"values", std::move(values)}};
  }
  return j;
}

CircleMeasure measure_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("measure must be a JSON object");
  if (!j.contains("atoms") && !j.contains("moments")) {
    throw ParseError("measure needs 'atoms' or 'moments'");
  }
  std::vector<Atom> atoms;
  if (j.contains("atoms")) {
    if (!j.at("atoms").is_array()) throw ParseError("'atoms' must be an array");
    for (const auto& a : j.at("atoms")) atoms.push_back({number(a, "theta"), number(a, "weight")});
  }
  std::optional<MomentSequence> moments;
  if (j.contains("moments")) {
    const auto& mj = j.at("moments");
    MomentSequence m{number(mj, "mass"), {}};
    if (!mj.contains("values") || !mj.at("values").is_array()) {
      throw ParseError("'moments.values' must be an array");
    }
    for (const auto& v : mj.at("values")) m.values.push_back(complex_from(v));
    moments = std::move(m);
  }
  return CircleMeasure(std::move(atoms), std::move(moments));
}

json to_json(const GeneratingFamily& f) {
  json knots = json::array();
  for (const auto& k : f.knots()) knots.push_back({{"t", k.t}, {"alpha", k.alpha}});
  json meas = json::array();
  for (const auto& m : f.interval_measures()) meas.push_back(to_json(m));
  return {{"knots", std::move(knots)}, {"interval_measures", std::move(meas)}};
}

GeneratingFamily family_from_json(const json& j) {
  if (!j.is_object() || !j.contains("knots") || !j.at("knots").is_array() ||
      !j.contains("interval_measures") || !j.at("interval_measures").is_array()) {
    throw ParseError("family needs 'knots' and 'interval_measures' arrays");
  }
  std::vector<Knot> knots;
  for (const auto& k : j.at("knots")) knots.push_back({number(k, "t"), number(k, "alpha")});
  std::vector<CircleMeasure> meas;
  for (const auto& m : j.at("interval_measures")) meas.push_back(measure_from_json(m));
  if (knots.size() < 2) throw ValidationError({"fewer than two knots"});
  GeneratingFamily f(std::move(knots), std::move(meas));
  if (auto v = validate(f); !v.empty()) throw ValidationError(std::move(v));
  return f;
}

std::string chain_to_json_string(const ChainSample& c) {
  std::ostringstream os;
  os << "{\"times\":[";
  for (std::size_t j = 0; j < c.size(); ++j) os << (j ? "," : "") << format_double(c.times()[j]);
  os << "],\"series\":[";
  for (std::size_t j = 0; j < c.size(); ++j) {
    os << (j ? "," : "") << '[';
    const auto& s = c.series()[j];
    for (std::size_t k = 0; k <= s.order(); ++k) {
      os << (k ? "," : "") << '[' << format_double(s[k].real()) << ',' << format_double(s[k].imag()) << ']';
    }
    os << ']';
  }
  os << "]}\n";
  return os.str();
}

ChainSample chain_from_json(const json& j) {
  if (!j.is_object() || !j.contains("times") || !j.contains("series") || !j.at("times").is_array() ||
      !j.at("series").is_array()) {
    throw ParseError("chain needs 'times' and 'series' arrays");
  }
  std::vector<double> times;
  for (const auto& t : j.at("times")) {
    if (!t.is_number()) throw ParseError("chain times must be numbers");
    times.push_back(t.get<double>());
  }
  std::vector<TruncatedSeries> series;
  for (const auto& s : j.at("series")) {
    if (!s.is_array() || s.size() < 2) throw ParseError("each chain series needs >= 2 coefficients");
    std::vector<cplx> c;
    for (const auto& v : s) c.push_back(complex_from(v));
    series.emplace_back(c.size() - 1, c);
  }
  try {
    return ChainSample(std::move(times), std::move(series));
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

json to_json(const ConvergenceReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    entries.push_back({{"name", e.name}, {"value", e.value}, {"grid", e.grid}, {"pass", e.pass}});
  }
  return {{"entries", std::move(entries)}, {"tolerance", r.tolerance}, {"pass", r.pass()}};
}

json to_json(const ExtractionDiagnostics& d) {
  return {{"psd_clip_total", d.psd_clip_total},
          {"psd_clip_max", d.psd_clip_max},
          {"clipped_intervals", d.clipped_intervals},
          {"log", d.log}};
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << text;
}

}  // namespace circlech
