#pragma once

// Brute-force oracle for labeled clopen embedding on the countable
// finite-rank fragment (no ramps, no cantor sets, scattered rank <= 3).
//
// Expressions are realized as explicit labeled ordinal point sets: a
// positional sequence of units, where a unit is a single point or an
// omega-repetition of a lower sequence followed by its limit point.  The
// realization of a sequence is the ordinal interval [0, gamma] for the CNF
// ordinal gamma computed below (gamma < omega^4 on this fragment), with the
// label function induced by the units.  Clopen subsets of such an interval
// are finite unions of subintervals, so embedding is decided by exhaustively
// assigning source units to target units; a unit landing on a limit point
// must carry an omega-tail that tiles the target tail (block equivalence),
// and everything else falls into finitely many body copies.
//
// The oracle shares no code with the main engine: no rewriting, no
// normalization, no family analysis.  It exists to check the engine.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "endgame/expr.hpp"

namespace endgame::oracle {

struct OrdUnit;
using OrdSeq = std::vector<OrdUnit>;

struct OrdUnit {
  bool leaf = true;
  Label label = Label::Planar;
  OrdSeq body;  // for limit units: the repeated block
};

struct out_of_scope : std::runtime_error {
  explicit out_of_scope(const std::string& m) : std::runtime_error("OutOfScope: " + m) {}
};

inline void build(const Expr& e, OrdSeq& out) {
  switch (e.kind) {
    case Kind::Pt:
      out.push_back(OrdUnit{true, e.label, {}});
      return;
    case Kind::Sum:
      for (auto& k : e.kids) build(*k, out);
      return;
    case Kind::Omega: {
      OrdUnit u;
      u.leaf = false;
      u.label = e.label;
      build(*e.kids[0], u.body);
      out.push_back(std::move(u));
      return;
    }
    case Kind::Tower: {
      if (e.height.symbolic()) throw out_of_scope("symbolic tower height");
      ExprPtr d = desugar(std::make_shared<Expr>(e));
      build(*d, out);
      return;
    }
    default:
      throw out_of_scope("ramp/cantor constructor");
  }
}

inline OrdSeq realize(const ExprPtr& e) {
  if (finite_rank(*e) < 0 || finite_rank(*e) > 3)
    throw out_of_scope("rank above 3 or non-scattered constructor");
  OrdSeq s;
  build(*e, s);
  return s;
}

// CNF ordinal extent of the realization, e.g. "w^2*3+w*1+2".
struct Cnf {
  // coefficient of w^k at index k
  std::vector<long long> c;
  void add(int k, long long v) {
    if ((int)c.size() <= k) c.resize(k + 1, 0);
    c[k] += v;
  }
};

inline int unit_rank(const OrdUnit& u) {
  if (u.leaf) return 0;
  int r = 0;
  for (auto& b : u.body) r = std::max(r, unit_rank(b));
  return r + 1;
}

inline Cnf extent(const OrdSeq& s) {
  Cnf total;
  for (auto& u : s) {
    if (u.leaf) {
      total.add(0, 1);
    } else {
      int r = unit_rank(u);
      // (extent of body) * omega collapses to w^r, then the limit point adds 1;
      // ordinal addition absorbs lower terms on the left
      for (int k = 0; k < (int)total.c.size() && k < r; ++k) total.c[k] = 0;
      total.add(r, 1);
      total.add(0, 1);
    }
  }
  return total;
}

inline std::string cnf_string(const Cnf& cnf) {
  std::string out;
  for (int k = (int)cnf.c.size() - 1; k >= 0; --k) {
    if (cnf.c[k] == 0) continue;
    if (!out.empty()) out += "+";
    if (k == 0) {
      out += std::to_string(cnf.c[k]);
    } else {
      out += (k == 1) ? "w" : ("w^" + std::to_string(k));
      if (cnf.c[k] != 1) out += "*" + std::to_string(cnf.c[k]);
    }
  }
  return out.empty() ? "0" : out;
}

// --- decision procedure ----------------------------------------------------

inline std::string u_key(const OrdUnit& u);

inline std::string s_key(const OrdSeq& s) {
  std::string k;
  for (auto& u : s) k += u_key(u);
  return k;
}

inline std::string u_key(const OrdUnit& u) {
  if (u.leaf) return u.label == Label::Planar ? "p" : "g";
  return std::string(u.label == Label::Planar ? "L(" : "G(") + s_key(u.body) + ")";
}

inline bool o_match(const OrdSeq& src, const OrdSeq& tgt, std::map<std::string, int>& memo);

inline OrdSeq rep(const OrdSeq& s, int k) {
  OrdSeq out;
  for (int i = 0; i < k; ++i)
    for (auto& u : s) out.push_back(u);
  return out;
}

inline bool o_iso(const OrdSeq& a, const OrdSeq& b, std::map<std::string, int>& memo) {
  return o_match(a, b, memo) && o_match(b, a, memo);
}

// Can the omega-tail of a limit unit over block A tile the tail over block B?
inline bool o_tailequiv(const OrdSeq& A, const OrdSeq& B, std::map<std::string, int>& memo) {
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      if (o_iso(rep(A, a), rep(B, b), memo)) return true;
  return false;
}

// Can the whole group (a multiset of source units) embed into one target unit?
inline bool o_fit(const OrdSeq& group, const OrdUnit& t, std::map<std::string, int>& memo) {
  if (group.empty()) return true;
  if (t.leaf)
    return group.size() == 1 && group[0].leaf && group[0].label == t.label;
  // limit unit: some source unit may cover the limit point
  for (size_t i = 0; i <= group.size(); ++i) {
    OrdSeq rest;
    bool cover_ok = true;
    if (i < group.size()) {
      const OrdUnit& c = group[i];
      cover_ok = !c.leaf && c.label == t.label && o_tailequiv(c.body, t.body, memo);
      if (cover_ok)
        for (size_t j = 0; j < group.size(); ++j)
          if (j != i) rest.push_back(group[j]);
    } else {
      rest = group;  // nobody covers the limit
    }
    if (!cover_ok) continue;
    // the rest goes into finitely many body copies; one copy per unit is a
    // complete bound (limit units never spread: their tails are self-similar)
    bool ok = rest.empty();
    if (!ok) {
      OrdSeq pool;
      for (size_t m = 0; m < rest.size(); ++m)
        for (auto& u : t.body) pool.push_back(u);
      ok = o_match(rest, pool, memo);
    }
    if (ok) return true;
  }
  return false;
}

inline bool o_match(const OrdSeq& src, const OrdSeq& tgt, std::map<std::string, int>& memo) {
  if (src.empty()) return true;
  if (tgt.empty()) return false;
  std::string key = s_key(src) + "|" + s_key(tgt);
  if (auto it = memo.find(key); it != memo.end()) return it->second == 1;
  memo[key] = 0;

  // assign a sub-multiset of src to tgt[0]
  OrdSeq rest_tgt(tgt.begin() + 1, tgt.end());
  size_t n = src.size();
  bool found = false;
  for (uint32_t mask = 0; mask < (1u << n) && !found; ++mask) {
    OrdSeq group, remain;
    for (size_t i = 0; i < n; ++i)
      ((mask >> i) & 1 ? group : remain).push_back(src[i]);
    if (!group.empty() && !o_fit(group, tgt[0], memo)) continue;
    found = o_match(remain, rest_tgt, memo);
  }
  memo[key] = found ? 1 : 0;
  return found;
}

// Public entry: both expressions realized as explicit ordinal point sets.
inline bool embeds(const ExprPtr& src, const ExprPtr& tgt) {
  OrdSeq s = realize(src), t = realize(tgt);
  std::map<std::string, int> memo;
  return o_match(s, t, memo);
}

inline bool iso(const ExprPtr& a, const ExprPtr& b) {
  OrdSeq x = realize(a), y = realize(b);
  std::map<std::string, int> memo;
  return o_iso(x, y, memo);
}

inline std::string extent_string(const ExprPtr& e) { return cnf_string(extent(realize(e))); }

// --- random expressions on the oracle's domain ------------------------------

// Random countable expression of scattered rank <= max_rank.  When
// planar_only is set every label is planar (used below a planar limit so
// that E_G stays closed).
inline ExprPtr random_scattered(std::mt19937& rng, int max_rank, bool planar_only,
                                int width_budget = 4) {
  auto coin = [&](int pct) { return (int)(rng() % 100) < pct; };
  auto lbl = [&]() { return planar_only || coin(55) ? Label::Planar : Label::NonPlanar; };
  if (max_rank == 0 || coin(30)) return pt(lbl());
  if (coin(40) && width_budget >= 2) {
    int k = std::min(2 + (int)(rng() % 2), width_budget);
    std::vector<ExprPtr> ops;
    for (int i = 0; i < k; ++i)
      ops.push_back(random_scattered(rng, max_rank, planar_only, width_budget - k));
    return sum(std::move(ops));
  }
  Label lim = lbl();
  ExprPtr inner = random_scattered(rng, max_rank - 1, planar_only || lim == Label::Planar,
                                   width_budget);
  return omega(inner, lim);
}

}  // namespace endgame::oracle
