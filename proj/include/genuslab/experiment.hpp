#pragma once

// Batch driver for plan files. A plan is a JSON array of entries (or one
// entry, or an empty object/array/file for an empty plan). Each entry:
//
//   experiment  count | probability | moments | edge_dominance | fsgr_sandwich |
//               growth_ratios | pendant_density | radius_proxy | unlabelled_ratio | lemma32
//   spec        "VARIANT/CLOSURE/labelled|unlabelled/GENUS" (default E/plain/labelled/const:0)
//   n_range     [lo, hi]
//   reps        Monte-Carlo replicates; 0 or absent means exact (probability only)
//   seed        64-bit seed for estimates (default 1)
//   output      path prefix; writes <output>.json and <output>.csv
//   event       probability: an event string, see EventQuery::parse
//   statistic   moments: edges | leaves | kappa | frag | maxdeg
//   pattern     pendant_density: graph6 of a connected graph
//   rho         pendant_density: constant (default 0.0367284)

#include <fstream>
#include <map>
#include <set>

#include "genuslab/report.hpp"

namespace genuslab {

struct PlanEntry {
  std::string experiment;
  ClassSpec spec;
  int lo = 1, hi = 1;
  std::uint64_t reps = 0;
  std::uint64_t seed = 1;
  std::string output;
  std::string event = "connected";
  Statistic statistic = Statistic::edges;
  std::string pattern = "@";
  double rho = kPlanarRho;
};

inline std::vector<PlanEntry> parse_plan(const json& plan) {
  static const std::set<std::string> experiments = {"count", "probability", "moments", "edge_dominance", "fsgr_sandwich",
                                                    "growth_ratios", "pendant_density", "radius_proxy", "unlabelled_ratio", "lemma32"};
  static const std::set<std::string> fields = {"experiment", "spec", "n_range", "reps", "seed", "output", "event", "statistic", "pattern", "rho"};
  std::vector<json> items;
  if (plan.is_null() || (plan.is_object() && plan.empty())) return {};
  if (plan.is_array()) items.assign(plan.begin(), plan.end());
  else if (plan.is_object()) items.push_back(plan);
  else throw Error("plan: expected an array of entries or a single entry object");
  std::vector<PlanEntry> out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const json& e = items[i];
    const std::string where = "plan entry " + std::to_string(i) + ": ";
    if (!e.is_object()) throw Error(where + "expected an object");
    for (auto it = e.begin(); it != e.end(); ++it)
      if (!fields.contains(it.key())) throw Error(where + "unknown field '" + it.key() + "'");
    PlanEntry p;
    auto field = [&](const char* name) -> const json* { return e.contains(name) ? &e.at(name) : nullptr; };
    if (!field("experiment") || !e["experiment"].is_string() || !experiments.contains(e["experiment"].get<std::string>()))
      throw Error(where + "field 'experiment' must be one of count, probability, moments, edge_dominance, fsgr_sandwich, "
                          "growth_ratios, pendant_density, radius_proxy, unlabelled_ratio, lemma32");
    p.experiment = e["experiment"].get<std::string>();
    if (auto* s = field("spec")) {
      if (!s->is_string()) throw Error(where + "field 'spec' must be a string");
      try {
        p.spec = parse_class_spec(s->get<std::string>());
      } catch (const Error& err) {
        throw Error(where + "field 'spec': " + err.what());
      }
    }
    const json* range = field("n_range");
    if (!range || !range->is_array() || range->size() != 2 || !(*range)[0].is_number_integer() || !(*range)[1].is_number_integer() ||
        (*range)[0].get<int>() < 1 || (*range)[0].get<int>() > (*range)[1].get<int>())
      throw Error(where + "field 'n_range' must be [lo, hi] with 1 <= lo <= hi");
    p.lo = (*range)[0].get<int>();
    p.hi = (*range)[1].get<int>();
    if (auto* r = field("reps")) {
      if (!r->is_number_unsigned() && !(r->is_number_integer() && r->get<std::int64_t>() >= 0)) throw Error(where + "field 'reps' must be a natural number");
      p.reps = r->get<std::uint64_t>();
    }
    if (auto* s = field("seed")) {
      if (!s->is_number_integer() || s->get<std::int64_t>() < 0) throw Error(where + "field 'seed' must be a natural number");
      p.seed = s->get<std::uint64_t>();
    }
    if (auto* o = field("output")) {
      if (!o->is_string()) throw Error(where + "field 'output' must be a string");
      p.output = o->get<std::string>();
    }
    if (auto* ev = field("event")) {
      if (!ev->is_string()) throw Error(where + "field 'event' must be a string");
      p.event = ev->get<std::string>();
      try {
        EventQuery::parse(p.event);
      } catch (const Error& err) {
        throw Error(where + "field 'event': " + err.what());
      }
    }
    if (auto* st = field("statistic")) {
      if (!st->is_string()) throw Error(where + "field 'statistic' must be a string");
      try {
        p.statistic = parse_statistic(st->get<std::string>());
      } catch (const Error& err) {
        throw Error(where + "field 'statistic': " + err.what());
      }
    }
    if (auto* pa = field("pattern")) {
      if (!pa->is_string()) throw Error(where + "field 'pattern' must be a graph6 string");
      p.pattern = pa->get<std::string>();
      try {
        Graph h = parse_graph6(p.pattern);
        if (h.order() == 0 || !is_connected(h)) throw Error("pattern must be connected");
      } catch (const Error& err) {
        throw Error(where + "field 'pattern': " + err.what());
      }
    }
    if (auto* r = field("rho")) {
      if (!r->is_number() || r->get<double>() <= 0) throw Error(where + "field 'rho' must be a positive number");
      p.rho = r->get<double>();
    }
    out.push_back(std::move(p));
  }
  return out;
}

/// Flattens a result's rows to CSV: experiment, spec, n, quantity, tag, value, ci_lo, ci_hi, seed.
inline std::string result_csv(const json& result) {
  std::string out = "experiment,spec,n,quantity,tag,value,ci_lo,ci_hi,seed\n";
  for (const auto& row : result.at("rows")) {
    for (auto it = row.begin(); it != row.end(); ++it) {
      if (it.key() == "n") continue;
      json v = *it;
      if (v.is_boolean()) v = json{{"tag", "exact"}, {"value", v}};
      if (!v.is_object() || !v.contains("tag")) continue;
      auto text = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
      std::string value = v.contains("value") ? text(v["value"]) : "[" + text(v["lower"]) + "," + text(v["upper"]) + "]";
      std::string lo, hi, seed;
      if (v.contains("ci95")) lo = text(v["ci95"][0]), hi = text(v["ci95"][1]);
      if (v.contains("seed")) seed = text(v["seed"]);
      out += csv_field(result.at("experiment").get<std::string>()) + "," + csv_field(result.at("spec").get<std::string>()) + "," +
             row.at("n").dump() + "," + csv_field(it.key()) + "," + v["tag"].get<std::string>() + "," + csv_field(value) + "," + lo + "," +
             hi + "," + seed + "\n";
    }
  }
  return out;
}

/// Direction of a numeric series: increasing, decreasing, constant or mixed.
inline std::string trend(const std::vector<double>& xs) {
  bool up = true, down = true, flat = true;
  for (std::size_t i = 1; i < xs.size(); ++i) {
    up = up && xs[i] > xs[i - 1];
    down = down && xs[i] < xs[i - 1];
    flat = flat && xs[i] == xs[i - 1];
  }
  if (xs.size() < 2) return "too_short";
  return up ? "increasing" : down ? "decreasing" : flat ? "constant" : "mixed";
}

inline json run_entry(const PlanEntry& p, Catalog& cat) {
  Lab lab(cat);
  json rows = json::array();
  const ClassSpec& spec = p.spec;
  for (int n = p.lo; n <= p.hi; ++n) {
    json row{{"n", n}};
    if (p.experiment == "count") {
      ClassCount c = cat.count(n, spec);
      row["count"] = exact(static_cast<std::int64_t>(c.count));
      row["connected"] = exact(static_cast<std::int64_t>(c.connected));
    } else if (p.experiment == "probability") {
      EventQuery q = EventQuery::parse(p.event);
      if (p.reps > 0) {
        const bool enumerable = n <= (spec.labelled ? kLabelledCap : kUnlabelledCap);
        if (!enumerable && spec.closure != Closure::plain) throw Error("Monte Carlo on a hereditary or minor class needs enumeration (n too large)");
        SamplingMode mode = enumerable ? SamplingMode::enumeration : SamplingMode::rejection;
        row["probability"] = estimate(lab.estimate(n, spec, q, p.reps, Seed{p.seed}.split(static_cast<std::uint64_t>(n)), mode));
      } else {
        row["probability"] = exact(lab.probability(n, spec, q));
      }
    } else if (p.experiment == "moments") {
      row["mean"] = exact(lab.mean(n, spec, p.statistic));
      if (p.statistic == Statistic::leaves)
        for (int t = 1; t <= 3; ++t) row["factorial_moment_" + std::to_string(t)] = exact(lab.factorial_moment(n, spec, p.statistic, t));
    } else if (p.experiment == "edge_dominance") {
      DominanceReport d = lab.edge_dominance(n, spec);
      row["dominates"] = d.dominates;
      row["detail"] = dominance_json(d);
    } else if (p.experiment == "fsgr_sandwich") {
      if (n < 2) continue;
      FsgrSandwich s = lab.fsgr_sandwich(n, spec);
      row["fsgr"] = ratio_json(s.fsgr);
      row["p_frag1"] = exact(s.p_frag1);
      row["lower"] = exact_real(s.lower);
      row["upper"] = exact(s.upper);
      row["fsgr1_bound"] = exact(s.fsgr1_bound);
      row["holds"] = s.upper_holds && s.lower_holds;
    } else if (p.experiment == "growth_ratios") {
      GrowthRatios g = cat.growth_ratios(n, spec);
      json gs = json::array(), vs = json::array();
      for (const auto& s : g.genus_step) gs.push_back({{"h", s.h}, {"ratio", ratio_json(s.ratio)}, {"threshold", s.threshold}, {"meets", s.meets}});
      for (const auto& s : g.vertex_step) vs.push_back({{"h", s.h}, {"ratio", ratio_json(s.ratio)}, {"meets_2n", s.meets}});
      row["genus_step"] = gs;
      row["vertex_step"] = vs;
      if (n >= 2) row["fsgr"] = ratio_json(g.fsgr);
      row["g_non_decreasing"] = g.g_non_decreasing;
    } else if (p.experiment == "pendant_density") {
      PendantDensity d = lab.pendant_density(n, spec, parse_graph6(p.pattern), p.rho);
      row["mean_density"] = exact(d.mean_density);
      row["alpha_h"] = exact_real(d.alpha);
    } else if (p.experiment == "radius_proxy") {
      row["a_n"] = exact_real(cat.radius_proxy(spec, n, n).front());
    } else if (p.experiment == "unlabelled_ratio") {
      DisconnectRatio r = unlabelled_disconnect_ratio(cat.census(), n, cat.threads());
      row["unlabelled"] = exact(static_cast<std::int64_t>(r.unlabelled));
      row["connected"] = exact(static_cast<std::int64_t>(r.connected));
      row["ratio"] = exact(r.ratio);
    } else if (p.experiment == "lemma32") {
      Lemma32Report r = lab.lemma32(n, spec);
      row["bridge_addable"] = r.bridge_addable;
      row["p_connected"] = exact(r.p_connected);
      row["mean_kappa"] = exact(r.mean_kappa);
      row["mean_frag"] = exact(r.mean_frag);
      row["kappa_dominated"] = r.kappa.dominated;
    }
    rows.push_back(row);
  }
  json result{{"experiment", p.experiment}, {"spec", spec.describe()}, {"fingerprint", spec.fingerprint(p.hi)}, {"rows", rows}};
  // Series over n get a direction flag; these are trend exhibits, not assertions.
  static const std::map<std::string, std::string> series = {{"fsgr_sandwich", "fsgr"}, {"growth_ratios", "fsgr"}, {"radius_proxy", "a_n"},
                                                            {"unlabelled_ratio", "ratio"}, {"probability", "probability"}};
  if (auto it = series.find(p.experiment); it != series.end()) {
    std::vector<double> xs;
    for (const auto& row : rows) {
      if (!row.contains(it->second)) continue;
      const json& v = row[it->second];
      if (v.contains("approx")) xs.push_back(v["approx"].get<double>());
      else if (v["value"].is_number()) xs.push_back(v["value"].get<double>());
    }
    result["trend"] = {{"quantity", it->second}, {"direction", trend(xs)}};
  }
  if (p.experiment == "probability") result["event"] = p.event;
  if (p.experiment == "moments") result["statistic"] = to_string(p.statistic);
  if (p.experiment == "pendant_density") result["pattern"] = p.pattern;
  if (p.reps > 0) result["seed"] = p.seed;
  if (!p.output.empty()) {
    auto write = [](const std::string& path, const std::string& text) {
      std::ofstream out(path);
      if (!out || !(out << text)) throw Error("cannot write report file " + path);
    };
    write(p.output + ".json", result.dump(2) + "\n");
    write(p.output + ".csv", result_csv(result));
  }
  return result;
}

inline json run_plan(const json& plan, Catalog& cat) {
  json results = json::array();
  for (const auto& entry : parse_plan(plan)) results.push_back(run_entry(entry, cat));
  return {{"schema", 1}, {"results", results}};
}

}  // namespace genuslab
