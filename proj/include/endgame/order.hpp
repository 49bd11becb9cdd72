#pragma once

// The end preorder and its class poset.  leq(y, x) holds when every
// neighborhood of x contains a clopen copy of some neighborhood of y;
// neighborhood chains are either constant (leaves, omega limits, cantor
// points, tower levels) or shifted ramp tails, so the quantifier alternation
// reduces to finitely many embedding queries plus probe extrapolation over
// family indices.

#include <optional>
#include <set>

#include "endgame/embed.hpp"
#include "endgame/loci.hpp"

namespace endgame {

struct AccEntry {
  int cls;
  Pattern pat;  // member index i accumulates at target instance index j iff pat(i,j)
};

struct ClassMember {
  int schema;
  int offset;  // class index i corresponds to schema index i + offset
};

struct ClassInfo {
  int id = -1;
  std::vector<ClassMember> members;
  bool indexed = false;
  int index_base = 1;
  Mult per_index_mult;
  bool stable = true;
  bool maximal = false;
  std::string name;
};

struct ClassTable {
  LociResult loci;
  std::vector<ClassInfo> classes;
  std::vector<int> class_of_schema;
  std::map<std::pair<int, int>, Pattern> leq_pat;  // class-level, on representative indices
  std::vector<std::vector<AccEntry>> acc;          // per class
  std::map<int, int> class_of_node;                // limit node -> class

  const ClassInfo& cls(int id) const { return classes[id]; }
  bool strict_at(int c, int i, int d, int j) const {
    return leq_pat.at({c, d}).eval(i, j) && !leq_pat.at({d, c}).eval(j, i);
  }
  std::vector<int> probe_indices(int c) const {
    const ClassInfo& ci = classes[c];
    if (!ci.indexed) return {ci.index_base};
    return {ci.index_base, ci.index_base + 1, ci.index_base + 2, ci.index_base + 3};
  }
};

namespace detail {

// one chain element V of the locus (at family index i) embeds into U
inline bool chain_member_into(const LocusSchema& s, int i, const ExprPtr& U, Embedder& em) {
  if (!s.chain_ramp_tail) return em.clopen_embeds(s.nbhd(i), U);
  for (int N : {1, 2, 4})
    if (em.clopen_embeds(s.nbhd_fn(N), U)) return true;
  return false;
}

// forall U in chain(t at j) exists V in chain(s at i) with V clopen-embedding into U
inline bool leq_at(const LocusSchema& s, int i, const LocusSchema& t, int j, Embedder& em) {
  if (!t.chain_ramp_tail) return chain_member_into(s, i, t.nbhd(j), em);
  return chain_member_into(s, i, t.nbhd_fn(2), em) &&
         chain_member_into(s, i, t.nbhd_fn(3), em);
}

inline Pattern fit_pattern(const std::function<bool(int, int)>& g, bool li, int lb, bool ri,
                           int rb, const std::string& what) {
  if (!li && !ri) return g(lb, rb) ? Pattern::always() : Pattern::never();
  if (li && ri) {
    const int P = 4;
    bool cells[P][P];
    for (int i = 0; i < P; ++i)
      for (int j = 0; j < P; ++j) cells[i][j] = g(lb + i, rb + j);
    std::vector<Pattern> cands = {Pattern::always(), Pattern::never(), Pattern::eq(),
                                  Pattern::lt(),     Pattern::le(),    Pattern::gt(),
                                  Pattern::ge()};
    for (int d = -3; d <= 3; ++d)
      if (d != 0)
        cands.push_back(Pattern::fn("iff i=j" + std::string(d > 0 ? "+" : "") + std::to_string(d),
                                    [d](int i, int j) { return i == j + d; }));
    for (auto& c : cands) {
      bool ok = true;
      for (int i = 0; i < P && ok; ++i)
        for (int j = 0; j < P && ok; ++j) ok = (c.eval(lb + i, rb + j) == cells[i][j]);
      if (ok) return c;
    }
    throw bound_exceeded("no index pattern fits " + what);
  }
  // one-sided
  const int P = 5;
  int base = li ? lb : rb;
  std::vector<bool> v(P);
  for (int k = 0; k < P; ++k) v[k] = li ? g(lb + k, rb) : g(lb, rb + k);
  bool all_t = true, all_f = true;
  for (bool b : v) {
    all_t &= b;
    all_f &= !b;
  }
  if (all_t) return Pattern::always();
  if (all_f) return Pattern::never();
  int flips = 0;
  for (int k = 1; k < P; ++k) flips += v[k] != v[k - 1];
  if (flips == 1) {
    int c = base;
    for (int k = 1; k < P; ++k)
      if (v[k] != v[k - 1]) c = base + k;
    if (!v[0]) {  // threshold upward
      if (li) return Pattern::fn("iff i>=" + std::to_string(c), [c](int i, int) { return i >= c; });
      return Pattern::fn("iff j>=" + std::to_string(c), [c](int, int j) { return j >= c; });
    }
    int cc = c - 1;
    if (li) return Pattern::fn("iff i<=" + std::to_string(cc), [cc](int i, int) { return i <= cc; });
    return Pattern::fn("iff j<=" + std::to_string(cc), [cc](int, int j) { return j <= cc; });
  }
  throw bound_exceeded("no threshold pattern fits " + what);
}

inline Pattern schema_leq_pattern(const LocusSchema& s, const LocusSchema& t, Embedder& em) {
  auto g = [&](int i, int j) { return leq_at(s, i, t, j, em); };
  return fit_pattern(g, s.indexed, s.index_base, t.indexed, t.index_base,
                     s.name + " <= " + t.name);
}

inline Mult madd(Mult a, Mult b) {
  if (a.kind == MultKind::CantorMany || b.kind == MultKind::CantorMany) return Mult::cantor();
  if (a.kind == MultKind::Countable || b.kind == MultKind::Countable) return Mult::countable();
  return Mult::finite(a.finite_count() + b.finite_count());
}

}  // namespace detail

inline ClassTable build_class_table(const ExprPtr& validated_ends, Embedder& em) {
  ClassTable tab;
  tab.loci = loci(validated_ends);
  auto& S = tab.loci.schemas;
  int n = (int)S.size();

  // schema-level equivalence with index alignment
  std::vector<int> cls_of(n, -1);
  std::vector<int> off_of(n, 0);
  auto equiv_at = [&](int a, int i, int b, int j) {
    return detail::leq_at(S[a], i, S[b], j, em) && detail::leq_at(S[b], j, S[a], i, em);
  };
  for (int a = 0; a < n; ++a) {
    if (cls_of[a] >= 0) continue;
    int cid = (int)tab.classes.size();
    ClassInfo ci;
    ci.id = cid;
    ci.indexed = S[a].indexed;
    ci.index_base = S[a].index_base;
    ci.members.push_back({a, 0});
    cls_of[a] = cid;
    for (int b = a + 1; b < n; ++b) {
      if (cls_of[b] >= 0) continue;
      if (S[a].indexed != S[b].indexed) continue;
      if (!S[a].indexed) {
        if (equiv_at(a, S[a].index_base, b, S[b].index_base)) {
          ci.members.push_back({b, 0});
          cls_of[b] = cid;
        }
        continue;
      }
      // indexed: find a shift delta with equiv(i, i+delta) on probes and nothing off-shift
      for (int d = -3; d <= 3; ++d) {
        bool ok = true, any = false;
        for (int i = S[a].index_base; i < S[a].index_base + 3 && ok; ++i) {
          int j = i + d;
          if (j < S[b].index_base) continue;
          any = true;
          ok = equiv_at(a, i, b, j);
        }
        if (ok && any) {
          ci.members.push_back({b, d});
          off_of[b] = d;
          cls_of[b] = cid;
          break;
        }
      }
    }
    // combined per-index multiplicity and representative name
    ci.per_index_mult = Mult::finite(0);
    bool first = true;
    for (auto& m : ci.members) {
      ci.per_index_mult =
          first ? S[m.schema].per_index_mult
                : detail::madd(ci.per_index_mult, S[m.schema].per_index_mult);
      first = false;
    }
    ci.name = S[ci.members[0].schema].name;
    tab.classes.push_back(std::move(ci));
  }
  tab.class_of_schema = cls_of;
  for (auto& [node, sid] : tab.loci.limit_schema_of_node) tab.class_of_node[node] = cls_of[sid];

  // class-level leq patterns on representatives
  int C = (int)tab.classes.size();
  for (int c = 0; c < C; ++c)
    for (int d = 0; d < C; ++d) {
      const LocusSchema& sc = S[tab.classes[c].members[0].schema];
      const LocusSchema& sd = S[tab.classes[d].members[0].schema];
      tab.leq_pat[{c, d}] = detail::schema_leq_pattern(sc, sd, em);
    }

  // stability: constant chains are stable, ramp tails by family class
  for (auto& ci : tab.classes) {
    ci.stable = true;
    for (auto& m : ci.members) {
      const LocusSchema& s = S[m.schema];
      if (s.chain_ramp_tail) {
        FamilyClass fc = em.body_family(s.ramp_body);
        if (fc != FamilyClass::Monotone) ci.stable = false;
        if (fc == FamilyClass::Mixed)
          throw bound_exceeded("mixed ramp family in stability analysis: " + s.name);
      }
    }
  }

  // maximality: no strict dominator at any probe index
  for (int c = 0; c < C; ++c) {
    bool dominated_somewhere = false, dominated_everywhere = true;
    for (int i : tab.probe_indices(c)) {
      bool dom = false;
      for (int d = 0; d < C && !dom; ++d) {
        if (d == c) continue;
        for (int j : tab.probe_indices(d))
          if (tab.strict_at(c, i, d, j)) {
            dom = true;
            break;
          }
      }
      dominated_somewhere |= dom;
      dominated_everywhere &= dom;
    }
    tab.classes[c].maximal = !dominated_somewhere;
    (void)dominated_everywhere;
  }

  // accumulation entries
  tab.acc.resize(C);
  // tower groups: map group -> schema ids
  std::map<int, std::vector<int>> groups;
  for (auto& s : S)
    if (s.tower_group >= 0) groups[s.tower_group].push_back(s.id);

  for (int c = 0; c < C; ++c) {
    auto add_entry = [&](int cls, Pattern p) {
      tab.acc[c].push_back(AccEntry{cls, std::move(p)});
    };
    for (auto& m : tab.classes[c].members) {
      const LocusSchema& s = S[m.schema];
      int off = m.offset;
      for (auto& rec : s.presence) {
        // conditions of this record relative to the class index
        for (auto& cx : rec) {
          if (cx.t == Ctx::OmegaBody) {
            int target = tab.class_of_node[cx.node];
            // members appear in every copy of the omega
            add_entry(target, Pattern::always());
          } else if (cx.t == Ctx::RampBody) {
            int target = tab.class_of_node[cx.node];
            if (cx.cond == Ctx::All || cx.cond == Ctx::GeFn)
              add_entry(target, Pattern::always());
            // EqIdx: confined to one body, no limit accumulation
          } else if (cx.t == Ctx::CantorDec) {
            int target = tab.class_of_node[cx.node];
            bool tgt_indexed = tab.classes[target].indexed;
            if (!tgt_indexed) {
              add_entry(target, Pattern::always());
            } else {
              // cantor families are indexed by the body number; locate the
              // member's body condition
              Ctx::Cond cond = Ctx::All;
              std::function<int(int)> nmin;
              for (auto& cy : rec)
                if (cy.t == Ctx::RampBody) {
                  cond = cy.cond;
                  nmin = cy.nmin;
                }
              if (cond == Ctx::EqIdx) {
                add_entry(target, Pattern::fn("iff j=i+" + std::to_string(off),
                                              [off](int i, int j) { return j == i + off; }));
              } else if (cond == Ctx::GeFn && nmin) {
                auto nm = nmin;
                add_entry(target, Pattern::fn("iff j>=nmin(i)", [nm, off](int i, int j) {
                            return j >= nm(i + off);
                          }));
              } else {
                add_entry(target, Pattern::always());
              }
            }
          }
        }
      }
      // tower-internal accumulation: lower ranks accumulate at higher ranks and tops
      if (s.tower_group >= 0 &&
          (s.kind == LocusKind::TowerInterior ||
           (s.kind == LocusKind::Leaf && s.tower_group >= 0))) {
        for (int other : groups[s.tower_group]) {
          if (other == m.schema) continue;
          const LocusSchema& t = S[other];
          int tc = cls_of[other];
          if (t.kind == LocusKind::TowerTop) {
            if (t.indexed) {
              Affine h = t.tower_height;
              add_entry(tc, Pattern::fn("iff height(j)>i", [h, off](int i, int j) {
                          return h.at(j) > i + off;
                        }));
            } else {
              add_entry(tc, Pattern::always());
            }
          } else if (t.kind == LocusKind::TowerInterior) {
            if (s.indexed && t.indexed) {
              add_entry(tc, Pattern::lt());
            } else if (!s.indexed && !t.indexed) {
              if (s.tower_height.b < t.tower_height.b) add_entry(tc, Pattern::always());
            }
          }
        }
      }
    }
  }
  return tab;
}

inline std::vector<int> maximal_classes(const ClassTable& tab) {
  std::vector<int> out;
  for (auto& c : tab.classes)
    if (c.maximal) out.push_back(c.id);
  return out;
}

struct PredResult {
  std::set<int> immediate;
  bool cofinal_chain = false;  // a chain family limits into the class
};

inline PredResult immediate_predecessors(int c, const ClassTable& tab) {
  PredResult out;
  int C = (int)tab.classes.size();
  auto below = [&](int d, int e) {  // exists probe indices with d strictly below e
    for (int i : tab.probe_indices(d))
      for (int j : tab.probe_indices(e))
        if (tab.strict_at(d, i, e, j)) return true;
    return false;
  };
  std::vector<int> preds;
  for (int d = 0; d < C; ++d)
    if (d != c && below(d, c)) preds.push_back(d);
  for (int d : preds) {
    bool blocked = false;
    // self-chain: d_i < d_j < c
    if (tab.classes[d].indexed) {
      for (int i : tab.probe_indices(d))
        for (int j : tab.probe_indices(d))
          if (tab.strict_at(d, i, d, j) && below(d, c)) blocked = true;
      if (blocked) out.cofinal_chain = true;
    }
    for (int e : preds) {
      if (e == d || blocked) continue;
      if (below(d, e) && below(e, c)) blocked = true;
    }
    if (!blocked) out.immediate.insert(d);
  }
  return out;
}

}  // namespace endgame
