#pragma once

// JSON rendering. Every number leaves tagged as exact, estimate or bound.

#include <string>

#include <json.hpp>

#include "genuslab/catalog.hpp"
#include "genuslab/graph6.hpp"
#include "genuslab/lab.hpp"

namespace genuslab {

using nlohmann::json;

inline json exact(const Rational& r) {
  if (r.denominator() == 1) return {{"tag", "exact"}, {"value", r.numerator()}};
  return {{"tag", "exact"}, {"value", to_string(r)}, {"approx", static_cast<double>(to_real(r))}};
}
inline json exact(std::int64_t x) { return {{"tag", "exact"}, {"value", x}}; }
inline json exact_real(long double x) { return {{"tag", "exact"}, {"value", static_cast<double>(x)}}; }
inline json bound(std::int64_t lo, std::int64_t hi) { return {{"tag", "bound"}, {"lower", lo}, {"upper", hi}}; }
inline json estimate(const Estimate& e) {
  return {{"tag", "estimate"}, {"value", e.value}, {"ci95", {e.ci.lo, e.ci.hi}}, {"hits", e.hits},
          {"reps", e.reps}, {"seed", e.seed}, {"sampling", to_string(e.mode)}};
}
inline json ratio_json(const Ratio& r) {
  if (!r.value) return {{"tag", "exact"}, {"value", nullptr}, {"note", r.note}};
  return exact(*r.value);
}

inline json spec_json(const ClassSpec& s, int n_max) {
  return {{"variant", to_string(s.variant)}, {"closure", to_string(s.closure)}, {"labelled", s.labelled},
          {"g", s.g.to_string()}, {"fingerprint", s.fingerprint(std::max(n_max, 1))}};
}

/// Rotation as 1-based neighbour lists, signature as an "u-v" -> sign map.
inline json scheme_json(const Graph& g, const EmbeddingScheme& s) {
  json rotation = json::array();
  for (const auto& r : s.rotation) {
    json row = json::array();
    for (int v : r) row.push_back(v + 1);
    rotation.push_back(row);
  }
  json signature = json::object();
  for (auto [u, v] : g.edges()) signature[std::to_string(u + 1) + "-" + std::to_string(v + 1)] = s.sign(u, v);
  return {{"rotation", rotation}, {"signature", signature}};
}

inline json genus_json(const Graph& g, GenusMode mode, const GenusResult& r) {
  json j{{"schema", 1},
         {"graph6", write_graph6(g)},
         {"mode", to_string(mode)},
         {"euler_genus", r.exact() ? exact(r.euler_genus) : bound(r.lower, r.upper)},
         {"orientability", to_string(r.orientability)},
         {"certificate", to_string(r.certificate)},
         {"witness", scheme_json(g, r.witness)}};
  if (r.planar_convention) {
    j["planar_convention"] = true;
    j["geometric_nonorientable"] = r.geometric_nonorientable ? exact(*r.geometric_nonorientable) : json(nullptr);
  }
  return j;
}

inline json count_json(const ClassCount& c, const ClassSpec& spec) {
  json hist = json::array(), conn = json::array();
  for (auto x : c.histogram) hist.push_back(x);
  for (auto x : c.connected_histogram) conn.push_back(x);
  return {{"n", c.n},
          {"spec", spec_json(spec, c.n)},
          {"count", exact(static_cast<std::int64_t>(c.count))},
          {"connected", exact(static_cast<std::int64_t>(c.connected))},
          {"edge_histogram", hist},
          {"connected_edge_histogram", conn},
          {"source", to_string(c.source)}};
}

inline json dominance_json(const DominanceReport& d) {
  json a = json::array(), b = json::array();
  for (const auto& x : d.cdf_a) a.push_back(to_string(x));
  for (const auto& x : d.cdf_b) b.push_back(to_string(x));
  return {{"cdf_a", a}, {"cdf_b", b}, {"dominates", d.dominates},
          {"first_violation", d.first_violation ? json(*d.first_violation) : json(nullptr)}};
}

/// RFC 4180 field quoting.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace genuslab
