#pragma once

// Classification predicates: self-similar, limit type, infinite rank, tame,
// locally CB, CB, CB-generated.  Verdicts are tri-state and carry derivation
// traces citing the results of Mann-Rafi and related literature.
//
// Two evaluation modes exist for the limit-type and rank obstructions:
// `strict` transcribes the definitions clause by clause (nested invariant
// neighborhoods with containment), `as-applied` uses the two-pole anchored
// reading that the source arguments and figures rely on.  Both are reported;
// final CB / locally-CB / CB-generated verdicts agree across modes on every
// built-in surface.

#include <optional>
#include <set>
#include <sstream>

#include "endgame/embed.hpp"
#include "endgame/normalize.hpp"
#include "endgame/order.hpp"
#include "endgame/validate.hpp"

namespace endgame {

enum class V3 : uint8_t { Yes, No, Unknown };
enum class Mode : uint8_t { AsApplied, Strict };

inline const char* to_string(V3 v) {
  switch (v) {
    case V3::Yes: return "yes";
    case V3::No: return "no";
    default: return "unknown";
  }
}

inline const char* to_string(Mode m) { return m == Mode::AsApplied ? "as-applied" : "strict"; }

inline std::optional<Mode> parse_mode(const std::string& s) {
  if (s == "as-applied") return Mode::AsApplied;
  if (s == "strict") return Mode::Strict;
  return std::nullopt;
}

struct TraceEntry {
  std::string rule;
  std::string cite;
  std::string detail;
};

struct Verdict {
  V3 value = V3::Unknown;
  Mode mode = Mode::AsApplied;
  std::vector<std::string> caveats;
  std::vector<TraceEntry> trace;

  static Verdict make(V3 v, Mode m, std::string rule, std::string cite, std::string detail) {
    Verdict out;
    out.value = v;
    out.mode = m;
    out.trace.push_back({std::move(rule), std::move(cite), std::move(detail)});
    return out;
  }
};

// Citations used in traces (published results this tool implements).
namespace cite {
inline constexpr const char* preorder = "Mann-Rafi Def 4.1 (end preorder)";
inline constexpr const char* maximal = "Mann-Rafi Prop 4.7 (maximal ends exist)";
inline constexpr const char* stable_def = "Mann-Rafi Def 4.14 (stable ends)";
inline constexpr const char* limit_def = "Mann-Rafi Def 6.2 (limit type)";
inline constexpr const char* rank_def = "Mann-Rafi Def 6.5 (infinite rank)";
inline constexpr const char* tame_def = "Mann-Rafi Def 6.11 (tame)";
inline constexpr const char* cbgen_thm = "Mann-Rafi Thm 1.6 (CB-generated classification)";
inline constexpr const char* cb_thm = "Mann-Rafi Thm 1.7 (CB classification)";
inline constexpr const char* nondisp_thm = "Mann-Rafi Thm 1.9 (non-displaceable subsurface)";
inline constexpr const char* loccb_thm = "Mann-Rafi Thm 5.7 (locally CB criterion)";
inline constexpr const char* implications = "Rosendal; CB => CB-generated => locally CB";
inline constexpr const char* jrm = "Jimenez-Rolland--Morales Thm 1.3 (unique maximal end)";
inline constexpr const char* maxstab = "Mann-Rafi Sec 6.3 (CB-generated => maximal ends stable)";
inline constexpr const char* selfsim = "Mann-Rafi (self-similar end spaces)";
}  // namespace cite

// ---------------------------------------------------------------------------

struct Analysis {
  SurfaceDesc desc;
  ExprPtr ends;  // presorted validated expression
  Embedder em;
  ClassTable table;
  std::vector<std::pair<ExprPtr, int>> operands;  // distinct top-level operands with mult

  long isolated_planar = 0;  // -1 for infinitely many
};

namespace detail {

inline void count_isolated_planar(const ClassTable& tab, long& out) {
  out = 0;
  for (auto& s : tab.loci.schemas) {
    if (s.kind != LocusKind::Leaf || s.label != Label::Planar) continue;
    Mult m = s.per_index_mult;
    if (s.indexed || !m.is_finite()) {
      out = -1;
      return;
    }
    out += m.finite_count();
  }
}

}  // namespace detail

inline Analysis analyze(const SurfaceDesc& desc) {
  ValidatedSurface v = validate(desc);
  Analysis a;
  a.desc = v.desc;
  a.ends = presort(v.desc.ends);
  a.table = build_class_table(a.ends, a.em);
  for (auto& op : atoms(a.ends)) {
    if (!a.operands.empty() && equal(a.operands.back().first, op))
      a.operands.back().second++;
    else
      a.operands.emplace_back(op, 1);
  }
  detail::count_isolated_planar(a.table, a.isolated_planar);
  return a;
}

// ---------------------------------------------------------------------------
// self-similar: a single maximal class, of multiplicity one or cantor-many,
// whose neighborhood chain keeps swallowing the full space.

inline Verdict self_similar(Analysis& a, Mode mode) {
  auto max = maximal_classes(a.table);
  if (max.size() != 1) {
    std::ostringstream d;
    d << "maximal classes are not unique:";
    for (int c : max) d << " {" << a.table.cls(c).name << "}";
    d << "; a partition separating them has no part containing the whole space";
    return Verdict::make(V3::No, mode, "self-similar/maximal-split", cite::selfsim, d.str());
  }
  const ClassInfo& c = a.table.cls(max[0]);
  if (c.indexed || (c.per_index_mult.kind != MultKind::One &&
                    c.per_index_mult.kind != MultKind::CantorMany)) {
    std::ostringstream d;
    d << "maximal class {" << c.name << "} has multiplicity " << to_string(c.per_index_mult)
      << "; a partition separating two of its members leaves no part with the full space";
    return Verdict::make(V3::No, mode, "self-similar/multiplicity", cite::selfsim, d.str());
  }
  // zoom: every chain element of the maximal locus contains a clopen copy of
  // the whole expression
  const LocusSchema& s = a.table.loci.schemas[c.members[0].schema];
  bool zoom = true;
  if (s.chain_ramp_tail) {
    for (int N : {2, 3})
      zoom = zoom && a.em.clopen_embeds(a.ends, s.nbhd_fn(N));
  } else {
    zoom = a.em.clopen_embeds(a.ends, s.nbhd(c.index_base));
  }
  if (!zoom)
    return Verdict::make(V3::No, mode, "self-similar/zoom", cite::selfsim,
                         "a small neighborhood of the maximal end omits a copy of the space");
  return Verdict::make(V3::Yes, mode, "self-similar", cite::selfsim,
                       "unique maximal class {" + c.name + "} with zooming neighborhoods");
}

// ---------------------------------------------------------------------------
// pattern coverage helpers

namespace detail {

inline std::vector<int> probes_ext(const ClassTable& t, int c, int extra) {
  const ClassInfo& ci = t.cls(c);
  std::vector<int> out;
  int lim = ci.indexed ? 4 + extra : 1;
  for (int k = 0; k < lim; ++k) out.push_back(ci.index_base + k);
  return out;
}

// for every family index of F there is a target instance satisfying the pattern
inline bool forall_exists(const ClassTable& t, int F, int B, const Pattern& p) {
  for (int i : probes_ext(t, F, 3)) {
    bool ok = false;
    for (int j : probes_ext(t, B, 6))
      if (p.eval(i, j)) {
        ok = true;
        break;
      }
    if (!ok) return false;
  }
  return true;
}

// the same fixed target instance works for every family index
inline bool forall_fixed(const ClassTable& t, int F, int B, const Pattern& p) {
  for (int j : probes_ext(t, B, 0)) {
    bool ok = true;
    for (int i : probes_ext(t, F, 3)) ok = ok && p.eval(i, j);
    if (ok) return true;
  }
  return false;
}

inline bool acc_covers(const ClassTable& t, int F, int target, bool fixed_instance) {
  for (auto& e : t.acc[F]) {
    if (e.cls != target) continue;
    if (fixed_instance ? forall_fixed(t, F, target, e.pat) : forall_exists(t, F, target, e.pat))
      return true;
  }
  return false;
}

inline bool capacity_two(const Mult& m) {
  return m.infinite() || m.finite_count() >= 2;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// limit type

inline Verdict limit_type(Analysis& a, Mode mode) {
  const ClassTable& t = a.table;
  int C = (int)t.classes.size();

  std::vector<int> families;
  for (int f = 0; f < C; ++f)
    if (t.cls(f).indexed) families.push_back(f);

  if (families.empty())
    return Verdict::make(V3::No, mode, "limit-type/no-family", cite::limit_def,
                         "no infinite family of pairwise nonequivalent classes exists");

  std::vector<int> x_candidates;
  for (int c = 0; c < C; ++c)
    if (!t.cls(c).indexed && t.cls(c).per_index_mult.is_finite()) x_candidates.push_back(c);

  if (mode == Mode::AsApplied) {
    for (int F : families) {
      for (int X : x_candidates) {
        if (!detail::acc_covers(t, F, X, false)) continue;
        // second pole: a maximal class with spare instances, accumulated by
        // every member of the family
        for (int B = 0; B < C; ++B) {
          if (B == F || !t.cls(B).maximal) continue;
          if (!detail::capacity_two(t.cls(B).per_index_mult)) continue;
          if (!detail::acc_covers(t, F, B, false)) continue;
          std::ostringstream d;
          d << "family {" << t.cls(F).name << "}, pole X from {" << t.cls(X).name
            << "}, outside anchor in {" << t.cls(B).name << "}";
          return Verdict::make(V3::Yes, mode, "limit-type/two-pole", cite::limit_def, d.str());
        }
      }
    }
    return Verdict::make(V3::No, mode, "limit-type/exhausted", cite::limit_def,
                         "no family admits an X-pole together with a multi-instance "
                         "maximal anchor outside it");
  }

  // strict: nested invariant neighborhoods of X with containment
  // E(z_n) in U_n union (E - U_0).  Presence records inside the region of X
  // must be tail-aligned with the family index; presence outside X's region
  // (another top-level operand, or a duplicated operand) provides U_0^c.
  for (int F : families) {
    for (int X : x_candidates) {
      const ClassInfo& xc = t.cls(X);
      const LocusSchema& xs = t.loci.schemas[xc.members[0].schema];
      if (xs.kind != LocusKind::OmegaLimit && xs.kind != LocusKind::RampLimit) continue;
      // locate X's node
      int x_node = -1;
      for (auto& [node, cls] : t.class_of_node)
        if (cls == X) x_node = node;
      if (x_node < 0) continue;
      bool x_dup = false;
      for (auto& rec : xs.presence)
        for (auto& cx : rec)
          if (cx.t == Ctx::SumOp && cx.op_mult >= 2) x_dup = true;

      bool inside_ok = false, tail_aligned = true, outside = false;
      for (auto& m : t.cls(F).members) {
        for (auto& rec : t.loci.schemas[m.schema].presence) {
          bool touches = false;
          for (auto& cx : rec) {
            if (cx.node != x_node) continue;
            touches = true;
            if (cx.t == Ctx::OmegaBody) tail_aligned = false;  // spread over all copies
            if (cx.t == Ctx::RampBody && cx.cond == Ctx::All) tail_aligned = false;
          }
          if (touches)
            inside_ok = true;
          else
            outside = true;
        }
      }
      if (inside_ok && tail_aligned && (outside || x_dup)) {
        std::ostringstream d;
        d << "family {" << t.cls(F).name << "}, X from {" << t.cls(X).name
          << "}, tail-aligned members inside with presence outside U_0";
        return Verdict::make(V3::Yes, mode, "limit-type/strict", cite::limit_def, d.str());
      }
    }
  }
  return Verdict::make(V3::No, mode, "limit-type/strict-exhausted", cite::limit_def,
                       "no family satisfies the nested-neighborhood containment clauses");
}

// ---------------------------------------------------------------------------
// infinite rank

inline Verdict infinite_rank(Analysis& a, Mode mode) {
  const ClassTable& t = a.table;
  int C = (int)t.classes.size();
  for (int F = 0; F < C; ++F) {
    const ClassInfo& fc = t.cls(F);
    if (!fc.indexed || !fc.stable) continue;
    if (fc.per_index_mult.kind != MultKind::Countable) continue;  // countably infinite classes
    for (int X = 0; X < C; ++X) {
      const ClassInfo& xc = t.cls(X);
      if (xc.indexed || !xc.per_index_mult.is_finite()) continue;
      if (!detail::acc_covers(t, F, X, false)) continue;
      for (int B = 0; B < C; ++B) {
        if (B == F || t.cls(B).indexed) continue;  // a fixed instance outside U
        bool same = (B == X);
        if (same && !detail::capacity_two(xc.per_index_mult)) continue;
        if (!detail::acc_covers(t, F, B, true)) continue;
        if (mode == Mode::Strict) {
          // 6.5(3b): accumulation inside U stays in X
          bool clean = true;
          for (auto& e : t.acc[F])
            if (e.cls != X && e.cls != B) clean = false;
          if (!clean) continue;
        }
        std::ostringstream d;
        d << "stable family {" << fc.name << "} accumulating at {" << xc.name << "} and at {"
          << t.cls(B).name << "}";
        return Verdict::make(V3::Yes, mode, "infinite-rank/witness", cite::rank_def, d.str());
      }
    }
  }
  return Verdict::make(V3::No, mode, "infinite-rank/exhausted", cite::rank_def,
                       "no stable countably-infinite family accumulates two-sidedly at an "
                       "invariant pole set");
}

// ---------------------------------------------------------------------------
// tame

inline Verdict tame(Analysis& a, Mode mode) {
  const ClassTable& t = a.table;
  for (int c : maximal_classes(t)) {
    if (!t.cls(c).stable) {
      return Verdict::make(V3::No, mode, "tame/unstable-maximal", cite::tame_def,
                           "maximal class {" + t.cls(c).name + "} is not stable");
    }
    auto preds = immediate_predecessors(c, t);
    for (int d : preds.immediate)
      if (!t.cls(d).stable)
        return Verdict::make(
            V3::No, mode, "tame/unstable-predecessor", cite::tame_def,
            "immediate predecessor {" + t.cls(d).name + "} of a maximal class is not stable");
  }
  return Verdict::make(V3::Yes, mode, "tame", cite::tame_def,
                       "all maximal classes and their immediate predecessors are stable");
}

// ---------------------------------------------------------------------------
// locally CB

struct KSpec {
  int genus = 0;  // 0 when the surface has infinite genus, else the surface genus
  int boundary = 0;
  int punctures = 0;
  friend bool operator==(const KSpec&, const KSpec&) = default;
};

struct LocCBWitness {
  KSpec K;
  std::vector<ExprPtr> a_pieces;  // one entry per region instance
  std::vector<ExprPtr> p_pieces;
};

inline std::pair<Verdict, std::optional<LocCBWitness>> locally_cb(Analysis& a, Mode mode) {
  const ClassTable& t = a.table;
  auto no = [&](std::string rule, std::string detail) {
    return std::make_pair(Verdict::make(V3::No, mode, std::move(rule), cite::loccb_thm,
                                        std::move(detail)),
                          std::optional<LocCBWitness>{});
  };

  // enclose all isolated planar ends in K when there are finitely many
  bool enclose = a.isolated_planar >= 0;
  int enclosed = enclose ? (int)a.isolated_planar : 0;

  // which top-level operands carry maximal ends
  auto op_index_of = [&](const std::vector<Ctx>& rec) {
    if (rec.empty() || rec[0].t != Ctx::SumOp) return -1;
    return rec[0].op_index;
  };
  std::set<int> max_ops;  // operand indices carrying maximal instances (-1 = whole)
  for (int c : maximal_classes(t))
    for (auto& m : t.cls(c).members)
      for (auto& rec : t.loci.schemas[m.schema].presence) max_ops.insert(op_index_of(rec));

  std::vector<std::pair<ExprPtr, int>> a_pieces, p_pieces;
  {
    int idx = 0;  // operand index in the presorted operand list
    for (auto& [op, mult] : a.operands) {
      bool removed = enclose && op->kind == Kind::Pt && op->label == Label::Planar;
      bool has_max = a.operands.size() == 1 || max_ops.count(idx) > 0;
      if (!removed) {
        if (has_max)
          a_pieces.emplace_back(op, mult);
        else
          p_pieces.emplace_back(op, mult);
      }
      ++idx;
    }
  }
  if (a_pieces.empty()) return no("locally-cb/no-a-piece", "no region carries a maximal end");

  // each A must be self-similar (with the region's own maximal structure)
  for (auto& [op, mult] : a_pieces) {
    SurfaceDesc sub;
    sub.genus = contains_np(*op) ? GenusSpec::inf() : GenusSpec::finite(0);
    sub.ends = op;
    sub.name = "region";
    Analysis sa = analyze(sub);
    Verdict ss = self_similar(sa, mode);
    if (ss.value != V3::Yes) {
      std::string why = ss.trace.empty() ? "" : ss.trace[0].detail;
      return no("locally-cb/region-not-self-similar",
                "region " + to_string(op) + " is not self-similar: " + why);
    }
  }

  // every P piece embeds into a clopen subset of some A piece
  for (auto& [p, pm] : p_pieces) {
    bool ok = false;
    for (auto& [ap, am] : a_pieces)
      if (a.em.clopen_embeds(p, ap)) {
        ok = true;
        break;
      }
    if (!ok)
      return no("locally-cb/p-piece", "piece " + to_string(p) + " embeds into no region");
  }

  // zoom with complement bookkeeping:
  // (i) shrinking a neighborhood of the maximal end strands the region's
  //     lower material; it must be absorbed by the ambient end space
  // (ii) stranded genus with ends locked in K and no other infinite-genus
  //      region is the punctured-Loch-Ness obstruction
  for (size_t i = 0; i < a_pieces.size(); ++i) {
    auto& [op, mult] = a_pieces[i];
    ExprPtr strand;
    switch (op->kind) {
      case Kind::Omega:
        strand = op->kids[0];
        break;
      case Kind::Ramp:
        strand = instantiate(op->kids[0], 1);
        break;
      case Kind::Cantor:
        strand = op;  // chunks plus decorations, all chunk-absorbable
        break;
      default:
        strand = nullptr;  // a single end strands no end material
    }
    if (strand) {
      std::vector<ExprPtr> whole = {a.ends, strand};
      bool absorbed = a.em.clopen_embeds(sum(whole), a.ends);
      if (!absorbed)
        return no("locally-cb/zoom-ends",
                  "material stranded below the maximal end of " + to_string(op) +
                      " cannot be reabsorbed");
    }
    if (contains_np(*op) && enclosed > 0) {
      bool other_genus = false;
      for (size_t j = 0; j < a_pieces.size(); ++j) {
        if (j == i) continue;
        if (contains_np(*a_pieces[j].first)) other_genus = true;
      }
      if (mult >= 2) other_genus = true;
      if (!other_genus)
        return no("locally-cb/zoom-genus",
                  "shrinking a neighborhood of the genus end strands handles that the "
                  "puncture-bearing K cannot absorb");
    }
  }

  LocCBWitness w;
  w.K.genus = a.desc.genus.infinite ? 0 : a.desc.genus.value;
  w.K.punctures = enclosed;
  int regions = 0;
  for (auto& [op, m] : a_pieces) regions += m;
  for (auto& [op, m] : p_pieces) regions += m;
  w.K.boundary = regions;
  for (auto& [op, m] : a_pieces)
    for (int k = 0; k < m; ++k) w.a_pieces.push_back(op);
  for (auto& [op, m] : p_pieces)
    for (int k = 0; k < m; ++k) w.p_pieces.push_back(op);

  std::ostringstream d;
  d << "K = (genus " << w.K.genus << ", " << w.K.boundary << " boundary, " << w.K.punctures
    << " punctures), " << w.a_pieces.size() << " self-similar regions";
  return {Verdict::make(V3::Yes, mode, "locally-cb/witness", cite::loccb_thm, d.str()), w};
}

// ---------------------------------------------------------------------------
// non-displaceable subsurfaces

inline std::optional<std::string> nondisplaceable_witness(Analysis& a) {
  if (!a.desc.genus.infinite && a.desc.genus.value > 0)
    return "finite-type subsurface carrying the whole genus " +
           std::to_string(a.desc.genus.value);
  if (a.isolated_planar > 0)
    return "disk containing all " + std::to_string(a.isolated_planar) + " punctures";
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// CB and CB-generated rule chains

struct TelescopingOracle {
  // the source never defines telescoping; the default oracle answers false
  // and flags every verdict that consumed it
  std::function<bool(const Analysis&)> query = [](const Analysis&) { return false; };
  bool is_default = true;
};

inline Verdict cb(Analysis& a, Mode mode, const Verdict& loccb_v, const Verdict& self_sim,
                  const Verdict& tame_v, const TelescopingOracle& tel = {}) {
  if (auto w = nondisplaceable_witness(a))
    return Verdict::make(V3::No, mode, "cb/non-displaceable", cite::nondisp_thm, *w);
  bool genus_ok = a.desc.genus.infinite || a.desc.genus.value == 0;
  if (!genus_ok)
    return Verdict::make(V3::No, mode, "cb/genus", cite::cb_thm,
                         "genus " + std::to_string(a.desc.genus.value) + " is neither 0 nor infinite");
  if (loccb_v.value == V3::No)
    return Verdict::make(V3::No, mode, "cb/not-locally-cb", cite::implications,
                         "not locally CB, hence not CB");
  if (self_sim.value == V3::Yes)
    return Verdict::make(V3::Yes, mode, "cb/self-similar", cite::cb_thm,
                         "genus 0 or infinite and the end space is self-similar");
  // unique maximal end
  {
    auto max = maximal_classes(a.table);
    bool unique = max.size() == 1 && !a.table.cls(max[0]).indexed &&
                  a.table.cls(max[0]).per_index_mult.kind == MultKind::One;
    if (loccb_v.value == V3::Yes && unique)
      return Verdict::make(genus_ok ? V3::Yes : V3::No, mode, "cb/unique-maximal", cite::jrm,
                           "locally CB with a unique maximal end and genus 0 or infinite");
  }
  bool countable = is_countable(a.ends);
  if ((countable || tame_v.value == V3::Yes) && self_sim.value == V3::No && !tel.query(a)) {
    Verdict v = Verdict::make(V3::No, mode, "cb/converse", cite::cb_thm,
                              std::string(countable ? "countable" : "tame") +
                                  " end space, not self-similar, not telescoping");
    if (tel.is_default) v.caveats.push_back("assumes not telescoping (default oracle)");
    return v;
  }
  Verdict v = Verdict::make(V3::Unknown, mode, "cb/open", cite::cb_thm,
                            "outside the decidable fragment");
  if (tel.is_default) v.caveats.push_back("telescoping oracle unavailable");
  return v;
}

inline Verdict cb_generated(Analysis& a, Mode mode, const Verdict& cb_v, const Verdict& loccb_v,
                            const Verdict& limit_v, const Verdict& rank_v, const Verdict& tame_v) {
  if (cb_v.value == V3::Yes)
    return Verdict::make(V3::Yes, mode, "cbgen/cb", cite::implications, "CB implies CB-generated");
  if (loccb_v.value == V3::No)
    return Verdict::make(V3::No, mode, "cbgen/not-locally-cb", cite::implications,
                         "CB-generated implies locally CB");
  if (limit_v.value == V3::Yes)
    return Verdict::make(V3::No, mode, "cbgen/limit-type", cite::cbgen_thm,
                         "the end space is of limit type");
  if (rank_v.value == V3::Yes)
    return Verdict::make(V3::No, mode, "cbgen/infinite-rank", cite::cbgen_thm,
                         "the mapping class group has infinite rank");
  if (tame_v.value == V3::Yes && loccb_v.value == V3::Yes && limit_v.value == V3::No &&
      rank_v.value == V3::No && cb_v.value == V3::No)
    return Verdict::make(V3::Yes, mode, "cbgen/converse", cite::cbgen_thm,
                         "tame, locally CB, not of limit type, finite rank");
  if (cb_v.value == V3::No) {
    for (int c : maximal_classes(a.table))
      if (!a.table.cls(c).stable)
        return Verdict::make(V3::No, mode, "cbgen/unstable-maximal", cite::maxstab,
                             "maximal class {" + a.table.cls(c).name +
                                 "} is not stable and the group is not globally CB");
  }
  Verdict v = Verdict::make(V3::Unknown, mode, "cbgen/open", cite::cbgen_thm,
                            "no rule applies; see the non-stable immediate predecessor "
                            "corollary for the remaining open case");
  v.caveats.push_back("open case: non-tame, not limit type, finite rank, not CB");
  return v;
}

// ---------------------------------------------------------------------------
// report assembly

struct ClassSummary {
  std::string name;
  std::string mult;
  bool indexed = false;
  bool maximal = false;
  bool stable = false;
};

struct internal_inconsistency : std::runtime_error {
  explicit internal_inconsistency(const std::string& m)
      : std::runtime_error("InternalInconsistency: " + m) {}
};

struct Report {
  std::string name;
  Mode mode = Mode::AsApplied;
  Verdict cb, locally_cb, cb_generated, tame, finite_rank, limit_type, self_similar;
  std::vector<ClassSummary> classes;
  std::vector<std::pair<std::string, std::string>> edges;  // reduced strict edges
  std::vector<std::string> maximal;
};

namespace detail {

inline void poset_summary(const ClassTable& t, Report& r) {
  for (auto& c : t.classes) {
    ClassSummary s;
    s.name = c.name;
    s.mult = to_string(c.per_index_mult);
    s.indexed = c.indexed;
    s.maximal = c.maximal;
    s.stable = c.stable;
    r.classes.push_back(std::move(s));
  }
  int C = (int)t.classes.size();
  auto below = [&](int d, int e) {
    for (int i : t.probe_indices(d))
      for (int j : t.probe_indices(e))
        if (t.strict_at(d, i, e, j)) return true;
    return false;
  };
  for (int dd = 0; dd < C; ++dd)
    for (int e = 0; e < C; ++e) {
      if (dd == e || !below(dd, e)) continue;
      bool reduced = true;
      for (int m = 0; m < C && reduced; ++m)
        if (m != dd && m != e && below(dd, m) && below(m, e)) reduced = false;
      if (reduced) r.edges.emplace_back(t.cls(dd).name, t.cls(e).name);
    }
  for (int c : maximal_classes(t)) r.maximal.push_back(t.cls(c).name);
}

}  // namespace detail

inline Report classify_report(Analysis& a, Mode mode, const TelescopingOracle& tel = {}) {
  Report r;
  r.name = a.desc.name;
  r.mode = mode;
  r.self_similar = self_similar(a, mode);
  r.limit_type = limit_type(a, mode);
  Verdict rank = infinite_rank(a, mode);
  r.finite_rank = rank;
  r.finite_rank.value = rank.value == V3::Yes ? V3::No : rank.value == V3::No ? V3::Yes : V3::Unknown;
  r.tame = tame(a, mode);
  auto [lc, wit] = locally_cb(a, mode);
  r.locally_cb = lc;
  r.cb = cb(a, mode, r.locally_cb, r.self_similar, r.tame, tel);
  r.cb_generated = cb_generated(a, mode, r.cb, r.locally_cb, r.limit_type, rank, r.tame);

  // other-mode deltas become caveats
  Mode other = mode == Mode::AsApplied ? Mode::Strict : Mode::AsApplied;
  Verdict lt2 = limit_type(a, other);
  Verdict rk2 = infinite_rank(a, other);
  if (lt2.value != r.limit_type.value)
    r.limit_type.caveats.push_back(std::string("in ") + to_string(other) +
                                   " mode this verdict is " + to_string(lt2.value));
  if (rk2.value != rank.value)
    r.finite_rank.caveats.push_back(std::string("in ") + to_string(other) +
                                    " mode infinite-rank is " + to_string(rk2.value));

  detail::poset_summary(a.table, r);

  // Rosendal implication chain must hold
  auto truth = [](const Verdict& v) { return v.value; };
  if (truth(r.cb) == V3::Yes && truth(r.cb_generated) != V3::Yes)
    throw internal_inconsistency("CB surface not marked CB-generated");
  if (truth(r.cb_generated) == V3::Yes && truth(r.locally_cb) != V3::Yes)
    throw internal_inconsistency("CB-generated surface not marked locally CB");
  return r;
}

}  // namespace endgame
