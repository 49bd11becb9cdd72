#pragma once

// Decision procedure for labeled clopen embedding of end-space expressions.
//
// clopen_embeds(S, T) decides whether S is homeomorphic, as a labeled pair,
// to a clopen subset of T.  Equality of expressions is mutual clopen
// embedding (a Cantor-Schroeder-Bernstein working assumption, validated
// against the explicit ordinal oracle on the countable finite-rank fragment).
//
// The procedure is structural.  Clopen subsets of each constructor have a
// known shape:
//   - of omega(E,g): either miss the limit (then they sit inside finitely
//     many copies of E) or contain it (then they are a full tail plus finite
//     remainder, i.e. omega(E,g) + pieces of E-copies);
//   - of ramp(body,g): the same with index-shifted tails;
//   - of cantor(dec,l): finite unions of whole decorated chunks plus pieces
//     of finitely many decoration copies.
// Sum sources are matched to target operands by a backtracking partition
// search.  Ramp sources may peel finitely many leading bodies so that the
// remainder lands on a shifted tail.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "endgame/expr.hpp"

namespace endgame {

struct bound_exceeded : std::runtime_error {
  explicit bound_exceeded(const std::string& q)
      : std::runtime_error("BoundExceeded: " + q) {}
};

namespace detail {

// Scattered-rank bookkeeping for fast sound pruning.  `need` is the rank the
// expression requires of a host; `cap` is the rank its clopen subsets can
// reach.  Uncountable content (cantor chunks) is tracked separately.
struct RankKey {
  bool uncountable = false;
  int omegas = 0;  // w-valued part of the rank
  int fin = 0;

  bool rank_le(const RankKey& o) const {
    return omegas != o.omegas ? omegas < o.omegas : fin <= o.fin;
  }
};

inline RankKey rank_key(const Expr& e) {
  switch (e.kind) {
    case Kind::Pt:
      return {};
    case Kind::Sum: {
      RankKey out;
      for (auto& k : e.kids) {
        RankKey r = rank_key(*k);
        out.uncountable |= r.uncountable;
        if (!r.rank_le(out)) {
          out.omegas = r.omegas;
          out.fin = r.fin;
        }
      }
      return out;
    }
    case Kind::Omega: {
      RankKey r = rank_key(*e.kids[0]);
      // over perfect material the limit joins the perfect kernel
      if (!r.uncountable) r.fin += 1;
      return r;
    }
    case Kind::Tower: {
      RankKey r;
      if (e.height.symbolic()) {
        r.omegas = 1;  // unbounded within its ramp
      } else {
        r.fin = e.height.b;
      }
      return r;
    }
    case Kind::Ramp: {
      RankKey r = rank_key(*instantiate(e.kids[0], 1));
      if (has_symbolic_height(*e.kids[0])) {
        r.omegas += 1;
        r.fin = 0;
      } else {
        r.fin += 1;
      }
      return r;
    }
    case Kind::Cantor: {
      RankKey r = e.kids.empty() ? RankKey{} : rank_key(*e.kids[0]);
      r.uncountable = true;
      return r;
    }
  }
  return {};
}

// sound necessary conditions for a clopen embedding
inline bool may_embed(const Expr& src, const Expr& tgt) {
  RankKey s = rank_key(src), t = rank_key(tgt);
  if (s.uncountable && !t.uncountable) return false;
  if (!s.rank_le(t)) return false;
  if (contains_np(src) && !contains_np(tgt)) return false;
  return true;
}

}  // namespace detail

// Behaviour of a ramp body family body(n) under the clopen-embedding order.
enum class FamilyClass {
  Monotone,   // body(n) embeds into body(n+1) and is absorbed by it; tails mutually iso
  Antichain,  // no embedding either way between distinct indices
  Mixed,      // embeds one way but not absorbed; tails pairwise non-iso
};

class Embedder {
 public:
  struct Config {
    int copy_bound = 8;   // finite-sum copy searches
    int shift_max = 4;    // ramp tail shifts / peels
    int start_max = 4;    // ramp window start offsets
    int block_max = 4;    // block sizes for tail equivalence
    int peel_depth = 2;   // speculative ramp peels per query
  };

  Embedder() = default;
  explicit Embedder(Config c) : cfg_(c) {}

  const Config& config() const { return cfg_; }

  bool clopen_embeds(const ExprPtr& src, const ExprPtr& tgt) {
    ExprPtr s = prep(src), t = prep(tgt);
    if (equal(s, t)) return true;
    return match(atoms(s), atoms(t), cfg_.peel_depth);
  }

  bool iso(const ExprPtr& a, const ExprPtr& b) {
    ExprPtr x = prep(a), y = prep(b);
    if (equal(x, y)) return true;
    return match(atoms(x), atoms(y), cfg_.peel_depth) &&
           match(atoms(y), atoms(x), cfg_.peel_depth);
  }

  // Canonical engine form: constant ramps become omegas, concrete towers are
  // expanded, sums are flattened and sorted.
  ExprPtr prep(const ExprPtr& e) { return presort(rewrite(e)); }

  // Classification of a ramp body family (body carries the free parameter).
  FamilyClass body_family(const ExprPtr& body) {
    std::string key = to_string(body);
    if (auto it = fam_memo_.find(key); it != fam_memo_.end()) return it->second;
    FamilyClass out = classify_family(body);
    fam_memo_[key] = out;
    return out;
  }

  // body(start) + ... + body(start+len-1), instantiated and prepped.
  std::vector<ExprPtr> window_atoms(const ExprPtr& body, int start, int len) {
    std::vector<ExprPtr> out;
    for (int i = 0; i < len; ++i) {
      auto inst = prep(instantiate(body, start + i));
      for (auto& a : atoms(inst)) out.push_back(a);
    }
    return out;
  }

 private:
  Config cfg_;
  std::map<std::string, int> memo_;  // -1 in progress, 0 false, 1 true
  std::map<std::string, FamilyClass> fam_memo_;

  ExprPtr rewrite(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Pt:
        return e;
      case Kind::Tower:
        if (!e->height.symbolic()) return desugar(e);
        return e;
      case Kind::Ramp: {
        auto body = rewrite(e->kids[0]);
        if (!has_symbolic_height(*body))  // body independent of the parameter
          return omega(body, e->label);
        return ramp(body, e->label);
      }
      default: {
        auto out = std::make_shared<Expr>(*e);
        for (auto& k : out->kids) k = rewrite(k);
        return out;
      }
    }
  }

  static std::string key_of(const std::vector<ExprPtr>& src, const std::vector<ExprPtr>& tgt) {
    std::string k;
    for (auto& s : src) k += to_string(s) + "&";
    k += "|";
    for (auto& t : tgt) k += to_string(t) + "&";
    return k;
  }

  // --- multiset matching -------------------------------------------------

  bool match(std::vector<ExprPtr> src, std::vector<ExprPtr> tgt, int peel_budget) {
    if (src.empty()) return true;
    if (tgt.empty()) return false;
    std::sort(src.begin(), src.end(), [](auto& a, auto& b) { return cmp(a, b) < 0; });

    std::string key = key_of(src, tgt) + "#" + std::to_string(peel_budget);
    if (auto it = memo_.find(key); it != memo_.end()) {
      if (it->second >= 0) return it->second == 1;
      return false;  // in-progress: least fixed point
    }
    memo_[key] = -1;
    bool out = match_inner(src, tgt, peel_budget);
    memo_[key] = out ? 1 : 0;
    return out;
  }

  bool match_inner(const std::vector<ExprPtr>& src, const std::vector<ExprPtr>& tgt,
                   int peel_budget) {
    // fast sound pruning: every source atom must have a feasible target
    // (ramps are exempt: peeling may still place their pieces)
    for (auto& s : src) {
      if (s->kind == Kind::Ramp) continue;
      bool feasible = false;
      for (auto& t : tgt)
        if (detail::may_embed(*s, *t)) {
          feasible = true;
          break;
        }
      if (!feasible) return false;
    }

    // assign a sub-multiset of src to tgt[0], recurse on the rest
    std::vector<ExprPtr> rest_tgt(tgt.begin() + 1, tgt.end());

    // runs of equal source atoms
    std::vector<std::pair<ExprPtr, int>> runs;
    for (auto& s : src) {
      if (!runs.empty() && equal(runs.back().first, s))
        runs.back().second++;
      else
        runs.emplace_back(s, 1);
    }

    std::vector<int> take(runs.size(), 0);
    // enumerate take-vectors
    std::function<bool(size_t)> go = [&](size_t i) -> bool {
      if (i == runs.size()) {
        std::vector<ExprPtr> group, remain;
        for (size_t r = 0; r < runs.size(); ++r) {
          for (int c = 0; c < take[r]; ++c) group.push_back(runs[r].first);
          for (int c = take[r]; c < runs[r].second; ++c) remain.push_back(runs[r].first);
        }
        if (!group.empty() && !atom_match(group, tgt[0], peel_budget)) return false;
        if (group.empty() && rest_tgt.empty() && !remain.empty()) return false;
        return match(remain, rest_tgt, peel_budget);
      }
      for (int c = runs[i].second; c >= 0; --c) {
        take[i] = c;
        if (go(i + 1)) return true;
      }
      return false;
    };
    if (go(0)) return true;

    // ramp peel: replace a ramp source atom by its first k bodies plus the
    // shifted tail, so the pieces can spread across target operands
    if (peel_budget > 0 && tgt.size() > 1) {
      for (size_t r = 0; r < runs.size(); ++r) {
        if (runs[r].first->kind != Kind::Ramp) continue;
        const ExprPtr& A = runs[r].first;
        for (int k = 1; k <= cfg_.shift_max; ++k) {
          std::vector<ExprPtr> src2 = src;
          for (auto it = src2.begin(); it != src2.end(); ++it)
            if (equal(*it, A)) {
              src2.erase(it);
              break;
            }
          for (auto& b : window_atoms(A->kids[0], 1, k)) src2.push_back(b);
          src2.push_back(prep(ramp(shift_param(A->kids[0], k), A->label)));
          try {
            if (match(src2, tgt, peel_budget - 1)) return true;
          } catch (const bound_exceeded&) {
            // a speculative enlargement that outgrows the bounds just fails
          }
        }
      }
    }
    return false;
  }

  // --- single target atom -------------------------------------------------

  bool atom_match(const std::vector<ExprPtr>& group, const ExprPtr& tgt, int peel_budget) {
    if (group.size() == 1 && equal(group[0], tgt)) return true;
    for (auto& g : group)
      if (g->kind != Kind::Ramp && !detail::may_embed(*g, *tgt)) return false;
    switch (tgt->kind) {
      case Kind::Pt:
        return group.size() == 1 && group[0]->kind == Kind::Pt &&
               group[0]->label == tgt->label;
      case Kind::Omega:
        return omega_match(group, tgt, peel_budget);
      case Kind::Ramp:
        return ramp_match(group, tgt, peel_budget);
      case Kind::Cantor:
        return cantor_match(group, tgt, peel_budget);
      default:
        return false;  // Sum/Tower never appear as prepped atoms
    }
  }

  // Embed the group into finitely many copies of the unit.  One copy per
  // source atom is a complete bound: omega and cantor sources never need to
  // spread over several copies (their tails and chunks are self-similar),
  // and ramp spreading is handled by explicit peeling.
  bool into_copies(const std::vector<ExprPtr>& group, const ExprPtr& unit, int peel_budget,
                   bool& capped) {
    auto unit_atoms = atoms(unit);
    std::vector<ExprPtr> pool;
    int m = std::min<int>(cfg_.copy_bound, (int)group.size());
    for (int i = 0; i < m; ++i)
      for (auto& a : unit_atoms) pool.push_back(a);
    if (match(group, pool, peel_budget)) return true;
    if ((int)group.size() > cfg_.copy_bound) capped = true;
    return false;
  }

  bool omega_match(const std::vector<ExprPtr>& group, const ExprPtr& tgt, int peel_budget) {
    const ExprPtr& E = tgt->kids[0];
    bool capped = false;
    // (a) miss the limit: into finitely many copies of E
    if (into_copies(group, E, peel_budget, capped)) return true;
    // (b) cover the limit
    for (size_t i = 0; i < group.size(); ++i) {
      if (i > 0 && equal(group[i], group[i - 1])) continue;
      if (!covers_omega_limit(group[i], E, tgt->label)) continue;
      std::vector<ExprPtr> rest;
      for (size_t j = 0; j < group.size(); ++j)
        if (j != i) rest.push_back(group[j]);
      if (rest.empty() || into_copies(rest, E, peel_budget, capped)) return true;
    }
    if (capped)
      throw bound_exceeded("omega copy search over " + std::to_string(group.size()) +
                           " operands exceeds the copy bound");
    return false;
  }

  // A is iso to omega(E,g) plus a finite remainder of E-material.
  bool covers_omega_limit(const ExprPtr& A, const ExprPtr& E, Label g) {
    if (A->kind == Kind::Omega) {
      if (A->label != g) return false;
      return blocks_equiv(A->kids[0], E);
    }
    if (A->kind == Kind::Cantor) {
      // omega(E,g) with E made of whole-cantor material collapses to the cantor
      if (A->label != g) return false;
      for (int a = 1; a <= cfg_.block_max; ++a)
        if (iso(replicate(E, a), A)) return true;
      return false;
    }
    return false;  // ramps have strictly growing bodies after prep
  }

  // exists small a,b with X^a iso Y^b (then the omega-tails tile each other)
  bool blocks_equiv(const ExprPtr& X, const ExprPtr& Y) {
    static const std::pair<int, int> pairs[] = {{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1},
                                                {1, 4}, {4, 1}, {2, 3}, {3, 2}};
    for (auto [a, b] : pairs) {
      if (a > cfg_.block_max || b > cfg_.block_max) continue;
      if (iso(replicate(X, a), replicate(Y, b))) return true;
    }
    return false;
  }

  static ExprPtr replicate(const ExprPtr& e, int k) {
    if (k == 1) return e;
    std::vector<ExprPtr> ops(k, e);
    return presort(sum(std::move(ops)));
  }

  bool ramp_match(const std::vector<ExprPtr>& group, const ExprPtr& tgt, int peel_budget) {
    const ExprPtr& body = tgt->kids[0];
    if ((int)group.size() > cfg_.copy_bound)
      throw bound_exceeded("ramp window search over " + std::to_string(group.size()) +
                           " operands exceeds the copy bound");
    // (a) miss the limit: into a window of bodies
    int len_max = std::min<int>(cfg_.copy_bound, (int)group.size() + 1);
    for (int start = 1; start <= cfg_.start_max; ++start)
      for (int len = 1; len <= len_max; ++len)
        if (match(group, window_atoms(body, start, len), peel_budget)) return true;

    // (b) cover the limit: a ramp source lands on a shifted tail
    for (size_t i = 0; i < group.size(); ++i) {
      if (i > 0 && equal(group[i], group[i - 1])) continue;
      const ExprPtr& A = group[i];
      if (A->kind != Kind::Ramp || A->label != tgt->label) continue;
      int cap = 0;
      if (!ramp_tail_covers(A->kids[0], body, cap)) continue;
      std::vector<ExprPtr> rest;
      for (size_t j = 0; j < group.size(); ++j)
        if (j != i) rest.push_back(group[j]);
      if (rest.empty()) return true;
      if (cap > 0 && match(rest, window_atoms(body, 1, cap), peel_budget)) return true;
      if (cap == 0 && body_family(body) == FamilyClass::Monotone) {
        // monotone tails are mutually iso, so早 windows stay available
        for (int len = 1; len <= len_max; ++len)
          if (match(rest, window_atoms(body, 1, len), peel_budget)) return true;
      }
    }
    return false;
  }

  // The family bodyA(n) matches bodyT(n+delta) for some delta >= 0, so the
  // source ramp is iso to the target tail starting at delta+1.  cap reports
  // how many early target bodies remain available.
  bool ramp_tail_covers(const ExprPtr& bodyA, const ExprPtr& bodyT, int& cap) {
    for (int delta = 0; delta <= cfg_.shift_max; ++delta) {
      bool ok = true;
      for (int p = 1; p <= 2 && ok; ++p)
        ok = iso(prep(instantiate(bodyA, p)), prep(instantiate(bodyT, p + delta)));
      if (ok) {
        cap = delta;
        return true;
      }
    }
    if (body_family(bodyA) == FamilyClass::Monotone &&
        body_family(bodyT) == FamilyClass::Monotone) {
      bool ok = true;
      for (int p = 1; p <= 2 && ok; ++p) {
        ok = match(atoms(prep(instantiate(bodyA, p))),
                   window_atoms(bodyT, p, cfg_.block_max + 1), cfg_.peel_depth) &&
             match(atoms(prep(instantiate(bodyT, p))),
                   window_atoms(bodyA, p, cfg_.block_max + 1), cfg_.peel_depth);
      }
      if (ok) {
        cap = 0;
        return true;
      }
    }
    return false;
  }

  bool cantor_match(const std::vector<ExprPtr>& group, const ExprPtr& tgt, int peel_budget) {
    bool has_dec = !tgt->kids.empty();
    bool capped = false;
    // choose per atom: cover a whole chunk, or go into decoration copies
    std::function<bool(size_t, std::vector<ExprPtr>)> go = [&](size_t i,
                                                               std::vector<ExprPtr> dec_pool) -> bool {
      if (i == group.size()) {
        if (dec_pool.empty()) return true;
        if (!has_dec) return false;
        return into_copies(dec_pool, tgt->kids[0], peel_budget, capped);
      }
      if (covers_cantor_chunk(group[i], tgt))
        if (go(i + 1, dec_pool)) return true;
      dec_pool.push_back(group[i]);
      return go(i + 1, std::move(dec_pool));
    };
    bool out = go(0, {});
    if (!out && capped)
      throw bound_exceeded("cantor decoration search exceeds the copy bound");
    return out;
  }

  bool covers_cantor_chunk(const ExprPtr& A, const ExprPtr& tgt) {
    Label l = tgt->label;
    bool tgt_dec = !tgt->kids.empty();
    if (A->kind == Kind::Cantor) {
      if (A->label != l) return false;
      bool a_dec = !A->kids.empty();
      if (!a_dec && !tgt_dec) return true;
      if (a_dec && tgt_dec && blocks_equiv(A->kids[0], tgt->kids[0])) return true;
      // Brouwer: perfect label-homogeneous decorated cantors are plain cantors
      if (perfect_uniform(A, l) && perfect_uniform(tgt, l)) return true;
      return false;
    }
    if (A->kind == Kind::Omega) {
      // omega of whole-chunk material is that cantor again
      if (A->label != l) return false;
      for (int a = 1; a <= cfg_.block_max; ++a)
        if (iso(replicate(A->kids[0], a), tgt)) return true;
      return false;
    }
    return false;
  }

  static bool uniform_label(const Expr& e, Label l) {
    switch (e.kind) {
      case Kind::Pt:
        return e.label == l;
      case Kind::Sum: {
        for (auto& k : e.kids)
          if (!uniform_label(*k, l)) return false;
        return true;
      }
      case Kind::Omega:
      case Kind::Ramp:
        return e.label == l && uniform_label(*e.kids[0], l);
      case Kind::Tower: {
        if (e.label != l) return false;
        bool has_interior = e.height.symbolic() || e.height.b >= 1;
        return !has_interior || e.interior == l;
      }
      case Kind::Cantor:
        return e.label == l && (e.kids.empty() || uniform_label(*e.kids[0], l));
    }
    return false;
  }

  static bool perfect_uniform(const ExprPtr& c, Label l) {
    if (!uniform_label(*c, l)) return false;
    return c->kids.empty() || !has_isolated_any(*c->kids[0]);
  }

  FamilyClass classify_family(const ExprPtr& body) {
    auto inst = [&](int n) { return prep(instantiate(body, n)); };
    auto emb = [&](const ExprPtr& a, const ExprPtr& b) {
      return match(atoms(a), atoms(b), cfg_.peel_depth);
    };
    bool up = true, down = true, absorb = true;
    for (int p = 1; p <= 2; ++p) {
      ExprPtr lo = inst(p), hi = inst(p + 1);
      bool u = emb(lo, hi);
      bool d = emb(hi, lo);
      up &= u;
      down &= d;
      if (u) {
        std::vector<ExprPtr> both = atoms(lo);
        for (auto& a : atoms(hi)) both.push_back(a);
        absorb &= match(both, atoms(hi), cfg_.peel_depth);
      } else {
        absorb = false;
      }
    }
    if (up && absorb) return FamilyClass::Monotone;
    if (!up && !down) return FamilyClass::Antichain;
    return FamilyClass::Mixed;
  }
};

}  // namespace endgame
