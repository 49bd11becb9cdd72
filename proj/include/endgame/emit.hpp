#pragma once

// Report serialization: stable-order JSON, DOT posets, and the corpus table.

#include <json.hpp>

#include "endgame/corpus.hpp"
#include "endgame/genset.hpp"

namespace endgame {

using ordered_json = nlohmann::ordered_json;

inline ordered_json verdict_to_json(const Verdict& v) {
  ordered_json j;
  j["value"] = to_string(v.value);
  j["caveats"] = v.caveats;
  ordered_json tr = ordered_json::array();
  for (auto& t : v.trace) {
    ordered_json e;
    e["rule"] = t.rule;
    e["cite"] = t.cite;
    e["detail"] = t.detail;
    tr.push_back(e);
  }
  j["trace"] = tr;
  return j;
}

inline Verdict verdict_from_json(const ordered_json& j) {
  Verdict v;
  std::string s = j.at("value").get<std::string>();
  v.value = s == "yes" ? V3::Yes : s == "no" ? V3::No : V3::Unknown;
  for (auto& c : j.at("caveats")) v.caveats.push_back(c.get<std::string>());
  for (auto& t : j.at("trace"))
    v.trace.push_back({t.at("rule").get<std::string>(), t.at("cite").get<std::string>(),
                       t.at("detail").get<std::string>()});
  return v;
}

inline ordered_json recipe_to_json(const GenSetRecipe& r) {
  ordered_json j;
  j["globally_cb"] = r.globally_cb;
  j["K"] = {{"genus", r.identity_nbhd.genus},
            {"boundary", r.identity_nbhd.boundary},
            {"punctures", r.identity_nbhd.punctures}};
  j["twist_set"] = r.twist_set;
  auto shifts = [](const std::vector<ShiftGen>& v) {
    ordered_json out = ordered_json::array();
    for (auto& s : v) {
      ordered_json e;
      e["regions"] = {s.region_a, s.region_b};
      e["template"] = s.tmpl.describe();
      out.push_back(e);
    }
    return out;
  };
  j["H"] = shifts(r.handle_shifts);
  j["F"] = shifts(r.generalized_shifts);
  ordered_json tw = ordered_json::array();
  for (auto& t : r.half_twists) {
    ordered_json e;
    e["class"] = t.class_name;
    e["regions"] = {t.region_a, t.region_b};
    tw.push_back(e);
  }
  j["T"] = tw;
  j["notes"] = r.notes;
  return j;
}

inline ordered_json report_to_json(const Report& r, const GenSetRecipe* recipe = nullptr) {
  ordered_json j;
  j["schema"] = "endgame-report/1";
  j["name"] = r.name;
  j["mode"] = to_string(r.mode);
  ordered_json p;
  p["cb"] = verdict_to_json(r.cb);
  p["locally_cb"] = verdict_to_json(r.locally_cb);
  p["cb_generated"] = verdict_to_json(r.cb_generated);
  p["tame"] = verdict_to_json(r.tame);
  p["finite_rank"] = verdict_to_json(r.finite_rank);
  p["limit_type"] = verdict_to_json(r.limit_type);
  p["self_similar"] = verdict_to_json(r.self_similar);
  j["predicates"] = p;
  ordered_json poset;
  ordered_json cl = ordered_json::array();
  for (auto& c : r.classes) {
    ordered_json e;
    e["name"] = c.name;
    e["mult"] = c.mult;
    e["indexed"] = c.indexed;
    e["maximal"] = c.maximal;
    e["stable"] = c.stable;
    cl.push_back(e);
  }
  poset["classes"] = cl;
  ordered_json ed = ordered_json::array();
  for (auto& [a, b] : r.edges) ed.push_back(ordered_json::array({a, b}));
  poset["edges"] = ed;
  poset["maximal"] = r.maximal;
  j["poset"] = poset;
  if (recipe) j["recipe"] = recipe_to_json(*recipe);
  return j;
}

inline Report report_from_json(const ordered_json& j) {
  Report r;
  r.name = j.at("name").get<std::string>();
  r.mode = j.at("mode").get<std::string>() == "strict" ? Mode::Strict : Mode::AsApplied;
  const auto& p = j.at("predicates");
  r.cb = verdict_from_json(p.at("cb"));
  r.locally_cb = verdict_from_json(p.at("locally_cb"));
  r.cb_generated = verdict_from_json(p.at("cb_generated"));
  r.tame = verdict_from_json(p.at("tame"));
  r.finite_rank = verdict_from_json(p.at("finite_rank"));
  r.limit_type = verdict_from_json(p.at("limit_type"));
  r.self_similar = verdict_from_json(p.at("self_similar"));
  for (auto& c : j.at("poset").at("classes")) {
    ClassSummary s;
    s.name = c.at("name").get<std::string>();
    s.mult = c.at("mult").get<std::string>();
    s.indexed = c.at("indexed").get<bool>();
    s.maximal = c.at("maximal").get<bool>();
    s.stable = c.at("stable").get<bool>();
    r.classes.push_back(s);
  }
  for (auto& e : j.at("poset").at("edges"))
    r.edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  for (auto& m : j.at("poset").at("maximal")) r.maximal.push_back(m.get<std::string>());
  return r;
}

inline bool report_equal(const Report& a, const Report& b) {
  return report_to_json(a).dump() == report_to_json(b).dump();
}

// ---------------------------------------------------------------------------

inline std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

// Hasse diagram of the class poset (edges are the transitive reduction).
inline std::string emit_dot(const Report& r) {
  std::ostringstream os;
  os << "digraph classes {\n  rankdir=BT;\n";
  for (auto& c : r.classes) {
    os << "  \"" << dot_escape(c.name) << "\" [label=\"" << dot_escape(c.name) << "\\nmult="
       << c.mult << (c.stable ? "" : "\\nunstable") << "\"";
    if (c.maximal) os << " [peripheries=2]";
    os << "];\n";
  }
  for (auto& [a, b] : r.edges)
    os << "  \"" << dot_escape(a) << "\" -> \"" << dot_escape(b) << "\";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// human-readable report and the corpus table

inline std::string render_report(const Report& r, bool trace) {
  std::ostringstream os;
  os << "surface: " << r.name << "  (mode: " << to_string(r.mode) << ")\n";
  auto line = [&](const char* k, const Verdict& v) {
    os << "  " << k << ": " << to_string(v.value);
    for (auto& c : v.caveats) os << "  [caveat: " << c << "]";
    os << "\n";
    if (trace)
      for (auto& t : v.trace)
        os << "      " << t.rule << "  --  " << t.cite << "\n        " << t.detail << "\n";
  };
  line("cb           ", r.cb);
  line("locally_cb   ", r.locally_cb);
  line("cb_generated ", r.cb_generated);
  line("tame         ", r.tame);
  line("finite_rank  ", r.finite_rank);
  line("limit_type   ", r.limit_type);
  line("self_similar ", r.self_similar);
  os << "  classes:\n";
  for (auto& c : r.classes)
    os << "    {" << c.name << "} mult=" << c.mult << (c.indexed ? " (indexed family)" : "")
       << (c.maximal ? " maximal" : "") << (c.stable ? " stable" : " unstable") << "\n";
  os << "  order: ";
  if (r.edges.empty()) os << "(no strict relations)";
  for (auto& [a, b] : r.edges) os << "{" << a << "} < {" << b << "}  ";
  os << "\n";
  return os.str();
}

struct TableRow {
  std::string name;
  Report report;
  bool matches = true;
  std::string diff;
};

inline char flag(V3 v) { return v == V3::Yes ? 'Y' : v == V3::No ? 'N' : '?'; }

inline std::vector<TableRow> classify_corpus(Mode mode) {
  std::vector<TableRow> rows;
  for (auto& e : corpus()) {
    SurfaceDesc d = parse_surface(e.text);
    Analysis a = analyze(d);
    TableRow row;
    row.name = e.name;
    row.report = classify_report(a, mode);
    auto check = [&](const char* col, V3 got, V3 want) {
      if (got != want) {
        row.matches = false;
        row.diff += std::string(col) + ": got " + to_string(got) + ", expected " +
                    to_string(want) + "; ";
      }
    };
    check("CB", row.report.cb.value, e.cb);
    check("locCB", row.report.locally_cb.value, e.loccb);
    check("CBgen", row.report.cb_generated.value, e.cbgen);
    check("Tame", row.report.tame.value, e.tame);
    check("FiniteRank", row.report.finite_rank.value, e.finite_rank);
    check("NotLimitType",
          row.report.limit_type.value == V3::Yes
              ? V3::No
              : row.report.limit_type.value == V3::No ? V3::Yes : V3::Unknown,
          e.not_limit_type);
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::string render_table(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "surface                 CB  locCB  CBgen  Tame  FinRank  NotLimit\n";
  os << "----------------------  --  -----  -----  ----  -------  --------\n";
  for (auto& r : rows) {
    std::string name = r.name;
    name.resize(22, ' ');
    os << name << "  " << flag(r.report.cb.value) << "   " << flag(r.report.locally_cb.value)
       << "      " << flag(r.report.cb_generated.value) << "      " << flag(r.report.tame.value)
       << "     " << flag(r.report.finite_rank.value) << "        "
       << flag(r.report.limit_type.value == V3::Yes
                   ? V3::No
                   : r.report.limit_type.value == V3::No ? V3::Yes : V3::Unknown)
       << "\n";
  }
  bool all = true;
  for (auto& r : rows) {
    if (!r.matches) {
      all = false;
      os << "DIFF " << r.name << ": " << r.diff << "\n";
    }
  }
  for (auto& e : corpus())
    if (!e.note.empty()) os << "note (" << e.name << "): " << e.note << "\n";
  os << (all ? "all rows match the expected table\n" : "some rows differ from the expected table\n");
  return os.str();
}

}  // namespace endgame
