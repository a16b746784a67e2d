#pragma once

// JSON configuration and the JSON / CSV / DOT output formats.
//
// Exact values (points, frequencies) are written as "p" or "p/q" strings,
// never as floating point numbers. Weights are [re, im] pairs.

#include <cstddef>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wff/dynamics.hpp"
#include "wff/frames.hpp"
#include "wff/measure.hpp"
#include "wff/system.hpp"

namespace wff::io {

using nlohmann::json;

inline constexpr const char* kSchemaVersion = "v1";

/// Malformed or schema-violating configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Config {
  FrameSystem system;
  std::size_t depth = 12;
  int terms = kDefaultTerms;
  double parseval_tolerance = 0.02;
};

namespace detail {

inline std::vector<Int> int_list(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ConfigError(std::string("missing field \"") + key + "\"");
  const json& v = doc.at(key);
  if (!v.is_array() || v.empty()) throw ConfigError(std::string("\"") + key + "\" must be a non-empty array");
  std::vector<Int> out;
  for (const auto& x : v) {
    if (!x.is_number_integer()) throw ConfigError(std::string("\"") + key + "\" must contain integers");
    out.push_back(x.get<Int>());
  }
  return out;
}

}  // namespace detail

/// Parses a v1 configuration document:
///
///   {"version": "v1", "R": 4, "B": [0, 2], "L": [0, 3, 15],
///    "alpha": [[1, 0], [0.7071, 0], [0.7071, 0]],
///    "defaults": {"depth": 12, "terms": 64, "parseval_tolerance": 0.02}}
inline Config parse_config(const json& doc) {
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");
  if (!doc.contains("version") || doc.at("version") != kSchemaVersion)
    throw ConfigError("configuration \"version\" must be \"v1\"");
  if (!doc.contains("R") || !doc.at("R").is_number_integer()) throw ConfigError("\"R\" must be an integer");
  const Int R = doc.at("R").get<Int>();
  auto B = detail::int_list(doc, "B");
  auto L = detail::int_list(doc, "L");
  if (!doc.contains("alpha") || !doc.at("alpha").is_array()) throw ConfigError("missing array \"alpha\"");
  const json& alpha_doc = doc.at("alpha");
  if (alpha_doc.size() != L.size())
    throw ConfigError("\"alpha\" has " + std::to_string(alpha_doc.size()) + " entries, L has " +
                      std::to_string(L.size()));
  std::vector<Complex> alpha;
  for (const auto& a : alpha_doc) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      throw ConfigError("each \"alpha\" entry must be [re, im]");
    alpha.emplace_back(a[0].get<double>(), a[1].get<double>());
  }

  Config cfg{[&] {
    try {
      return FrameSystem(R, std::move(B), std::move(L), std::move(alpha));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }()};

  if (doc.contains("defaults")) {
    const json& d = doc.at("defaults");
    if (!d.is_object()) throw ConfigError("\"defaults\" must be an object");
    if (d.contains("depth")) {
      if (!d.at("depth").is_number_integer() || d.at("depth").get<Int>() < 0) throw ConfigError("\"defaults.depth\" must be a non-negative integer");
      cfg.depth = d.at("depth").get<std::size_t>();
    }
    if (d.contains("terms")) {
      if (!d.at("terms").is_number_integer() || d.at("terms").get<Int>() < 1)
        throw ConfigError("\"defaults.terms\" must be a positive integer");
      cfg.terms = d.at("terms").get<int>();
    }
    if (d.contains("parseval_tolerance")) {
      if (!d.at("parseval_tolerance").is_number()) throw ConfigError("\"defaults.parseval_tolerance\" must be a number");
      cfg.parseval_tolerance = d.at("parseval_tolerance").get<double>();
    }
  }
  return cfg;
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(doc);
}

inline json to_json(const FrameSystem& sys) {
  json alpha = json::array();
  for (const auto& a : sys.alpha()) alpha.push_back({a.real(), a.imag()});
  return {{"version", kSchemaVersion}, {"R", sys.R()}, {"B", sys.B()}, {"L", sys.L()}, {"alpha", alpha}};
}

inline json to_json(const ValidationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  return {{"passed", r.passed}, {"checks", checks}};
}

// ---------------------------------------------------------------------------
// Min-sets
// ---------------------------------------------------------------------------

inline json to_json(const MinSet& m) {
  json points = json::array();
  for (const auto& p : m.points) points.push_back(to_string(p));
  json edges = json::array();
  for (const auto& e : m.edges)
    edges.push_back({{"source", to_string(e.source)}, {"digit", e.digit}, {"target", to_string(e.target)}});
  return {{"representative", to_string(m.representative)}, {"points", points}, {"edges", edges}};
}

inline json min_sets_to_json(const std::vector<MinSet>& sets) {
  json arr = json::array();
  for (const auto& m : sets) arr.push_back(to_json(m));
  return {{"version", kSchemaVersion}, {"min_sets", arr}};
}

inline std::vector<MinSet> min_sets_from_json(const json& doc) {
  std::vector<MinSet> out;
  for (const auto& item : doc.at("min_sets")) {
    MinSet m;
    m.representative = parse_rational(item.at("representative").get<std::string>());
    for (const auto& p : item.at("points")) m.points.push_back(parse_rational(p.get<std::string>()));
    for (const auto& e : item.at("edges"))
      m.edges.push_back({parse_rational(e.at("source").get<std::string>()), e.at("digit").get<Int>(),
                         parse_rational(e.at("target").get<std::string>())});
    out.push_back(std::move(m));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Frame multiset
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
  return os.str();
}

/// Columns: frequency,weight_re,weight_im,c,word
inline std::string frame_to_csv(const std::vector<FrameElement>& elements) {
  std::ostringstream os;
  os << "frequency,weight_re,weight_im,c,word\n";
  for (const auto& e : elements)
    os << to_string(e.frequency) << ',' << format_double(e.weight.real()) << ',' << format_double(e.weight.imag())
       << ',' << to_string(e.c) << ',' << e.word.str() << '\n';
  return os.str();
}

inline json frame_to_json(const std::vector<FrameElement>& elements) {
  json arr = json::array();
  for (const auto& e : elements)
    arr.push_back({{"frequency", to_string(e.frequency)},
                   {"weight", {e.weight.real(), e.weight.imag()}},
                   {"c", to_string(e.c)},
                   {"word", e.word.digits}});
  return {{"version", kSchemaVersion}, {"elements", arr}};
}

inline std::vector<FrameElement> frame_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  if (line != "frequency,weight_re,weight_im,c,word") throw std::invalid_argument("unexpected CSV header");
  std::vector<FrameElement> out;
  while (std::getline(in, line)) {
    std::vector<std::string> cols;
    std::string cell;
    std::istringstream row(line);
    while (std::getline(row, cell, ',')) cols.push_back(cell);
    if (cols.size() == 4) cols.emplace_back();
    if (cols.size() != 5) throw std::invalid_argument("bad CSV row: " + line);
    FrameElement e;
    e.frequency = parse_rational(cols[0]);
    e.weight = Complex{std::stod(cols[1]), std::stod(cols[2])};
    e.c = parse_rational(cols[3]);
    e.word = parse_word(cols[4]);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace wff::io
