#pragma once

// Symbolic loci: a finite presentation of the end set.  Every end of the
// denoted space is an instance of exactly one locus schema.  Schemas may be
// indexed families (tower ranks, ramp body indices) carrying per-index
// multiplicities and presence conditions.

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "endgame/expr.hpp"

namespace endgame {

enum class MultKind : uint8_t { One, Finite, Countable, CantorMany };

struct Mult {
  MultKind kind = MultKind::One;
  int k = 1;  // for Finite

  static Mult one() { return {MultKind::One, 1}; }
  static Mult finite(int k) { return k == 1 ? one() : Mult{MultKind::Finite, k}; }
  static Mult countable() { return {MultKind::Countable, 1}; }
  static Mult cantor() { return {MultKind::CantorMany, 1}; }

  bool is_finite() const { return kind == MultKind::One || kind == MultKind::Finite; }
  int finite_count() const { return kind == MultKind::One ? 1 : k; }
  bool infinite() const { return !is_finite(); }
};

inline Mult operator*(Mult a, Mult b) {
  if (a.kind == MultKind::CantorMany || b.kind == MultKind::CantorMany) return Mult::cantor();
  if (a.kind == MultKind::Countable || b.kind == MultKind::Countable) return Mult::countable();
  return Mult::finite(a.finite_count() * b.finite_count());
}

inline std::string to_string(Mult m) {
  switch (m.kind) {
    case MultKind::One: return "1";
    case MultKind::Finite: return std::to_string(m.k);
    case MultKind::Countable: return "omega";
    case MultKind::CantorMany: return "cantor";
  }
  return "?";
}

// Relation over a pair of family indices (i: left, j: right).  Non-indexed
// sides ignore their variable.
struct Pattern {
  std::string name = "never";
  std::function<bool(int, int)> f = [](int, int) { return false; };

  bool eval(int i, int j) const { return f(i, j); }

  static Pattern always() { return {"always", [](int, int) { return true; }}; }
  static Pattern never() { return {"never", [](int, int) { return false; }}; }
  static Pattern lt() { return {"iff i<j", [](int i, int j) { return i < j; }}; }
  static Pattern le() { return {"iff i<=j", [](int i, int j) { return i <= j; }}; }
  static Pattern gt() { return {"iff i>j", [](int i, int j) { return i > j; }}; }
  static Pattern ge() { return {"iff i>=j", [](int i, int j) { return i >= j; }}; }
  static Pattern eq() { return {"iff i=j", [](int i, int j) { return i == j; }}; }
  static Pattern fn(std::string n, std::function<bool(int, int)> g) { return {std::move(n), std::move(g)}; }
};

// Presence context of locus members, root-to-locus.
struct Ctx {
  enum T { SumOp, OmegaBody, RampBody, CantorDec } t;
  int node = -1;  // id of the enclosing Omega/Ramp/Cantor node
  int op_mult = 1;
  int op_index = -1;  // position of the (distinct) operand in its sum
  // RampBody: which bodies hold members, as a function of the schema's family
  // index i: all bodies, body i itself, or bodies n >= nmin(i).
  enum Cond { All, EqIdx, GeFn } cond = All;
  std::function<int(int)> nmin;  // for GeFn
};

enum class LocusKind : uint8_t { Leaf, OmegaLimit, RampLimit, TowerTop, TowerInterior, CantorPoint };

struct LocusSchema {
  int id = -1;
  LocusKind kind;
  Label label;
  bool indexed = false;
  int index_base = 1;
  ExprPtr nbhd_const;                   // non-indexed neighborhood type
  std::function<ExprPtr(int)> nbhd_fn;  // indexed neighborhood type
  bool chain_ramp_tail = false;         // chain = shifted tails of ramp_body
  ExprPtr ramp_body;
  Mult per_index_mult;
  std::vector<std::vector<Ctx>> presence;  // one ctx chain per occurrence
  int tower_group = -1;                    // groups tops/interiors of one tower source
  Affine tower_height{};                   // for tower groups
  std::string name;

  ExprPtr nbhd(int i) const { return indexed ? nbhd_fn(i) : nbhd_const; }
};

struct LociResult {
  std::vector<LocusSchema> schemas;
  std::map<int, int> limit_schema_of_node;  // node id -> schema id
};

namespace detail {

struct LociWalker {
  LociResult out;
  int next_node = 0;
  int next_tower_group = 0;

  int add(LocusSchema s) {
    s.id = (int)out.schemas.size();
    out.schemas.push_back(std::move(s));
    return out.schemas.back().id;
  }

  // An n-independent subtree of an indexed node occurs in every body.
  static std::vector<Ctx> demote_eq_to_all(std::vector<Ctx> ctxs) {
    for (auto& c : ctxs)
      if (c.t == Ctx::RampBody && c.cond == Ctx::EqIdx) c.cond = Ctx::All;
    return ctxs;
  }

  // mult: multiplicity of the surrounding context per family index
  void walk(const ExprPtr& e, std::vector<Ctx> ctxs, Mult mult, bool indexed_ctx) {
    switch (e->kind) {
      case Kind::Pt: {
        LocusSchema s;
        s.kind = LocusKind::Leaf;
        s.label = e->label;
        s.nbhd_const = e;
        s.per_index_mult = mult;
        s.indexed = indexed_ctx;
        s.presence = {ctxs};
        s.name = std::string("pt[") + label_name(e->label) + "]";
        if (indexed_ctx) {
          ExprPtr cap = e;
          s.nbhd_fn = [cap](int) { return cap; };
        }
        add(s);
        return;
      }
      case Kind::Sum: {
        // group equal operands (presorted upstream)
        std::vector<ExprPtr> ops = atoms(e);
        int run = 0;
        for (size_t i = 0; i < ops.size();) {
          size_t j = i;
          while (j < ops.size() && equal(ops[i], ops[j])) ++j;
          auto c2 = ctxs;
          Ctx sc;
          sc.t = Ctx::SumOp;
          sc.op_mult = (int)(j - i);
          sc.op_index = run++;
          c2.push_back(sc);
          walk(ops[i], c2, mult * Mult::finite((int)(j - i)), indexed_ctx);
          i = j;
        }
        return;
      }
      case Kind::Omega: {
        int node = next_node++;
        LocusSchema s;
        s.kind = LocusKind::OmegaLimit;
        s.label = e->label;
        s.per_index_mult = mult;
        s.indexed = indexed_ctx;
        s.presence = {ctxs};
        s.name = "limit:" + to_string(e);
        if (indexed_ctx) {
          ExprPtr cap = e;
          s.nbhd_fn = [cap](int n) { return instantiate(cap, n); };
          s.nbhd_const = cap;
        } else {
          s.nbhd_const = e;
        }
        int sid = add(s);
        out.limit_schema_of_node[node] = sid;
        auto c2 = ctxs;
        Ctx oc;
        oc.t = Ctx::OmegaBody;
        oc.node = node;
        c2.push_back(oc);
        bool child_sym = indexed_ctx && has_symbolic_height(*e->kids[0]);
        if (indexed_ctx && !child_sym) {
          walk(e->kids[0], demote_eq_to_all(c2), mult * Mult::countable() * Mult::countable(),
               false);
        } else {
          walk(e->kids[0], c2, mult * Mult::countable(), indexed_ctx);
        }
        return;
      }
      case Kind::Ramp: {
        int node = next_node++;
        LocusSchema s;
        s.kind = LocusKind::RampLimit;
        s.label = e->label;
        s.per_index_mult = mult;
        s.indexed = indexed_ctx;
        s.presence = {ctxs};
        s.chain_ramp_tail = true;
        s.ramp_body = e->kids[0];
        s.nbhd_const = e;
        {
          ExprPtr body = e->kids[0];
          Label lab = e->label;
          s.nbhd_fn = [body, lab](int n) { return ramp(shift_param(body, n - 1), lab); };
        }
        s.name = "ramp-limit[" + std::string(label_name(e->label)) + "]";
        int sid = add(s);
        out.limit_schema_of_node[node] = sid;
        walk_ramp_body(e->kids[0], ctxs, node, mult);
        return;
      }
      case Kind::Tower: {
        if (indexed_ctx && !e->height.symbolic()) {
          walk_tower(e, demote_eq_to_all(ctxs), mult * Mult::countable(), false);
        } else {
          walk_tower(e, ctxs, mult, e->height.symbolic());
        }
        return;
      }
      case Kind::Cantor: {
        int node = next_node++;
        LocusSchema s;
        s.kind = LocusKind::CantorPoint;
        s.label = e->label;
        s.per_index_mult = mult * Mult::cantor();
        s.indexed = indexed_ctx;
        s.presence = {ctxs};
        s.nbhd_const = e;
        if (indexed_ctx) {
          ExprPtr cap = e;
          s.nbhd_fn = [cap](int n) { return instantiate(cap, n); };
        }
        s.name = "cantor[" + std::string(label_name(e->label)) + "]";
        int sid = add(s);
        out.limit_schema_of_node[node] = sid;
        if (!e->kids.empty()) {
          auto c2 = ctxs;
          Ctx cc;
          cc.t = Ctx::CantorDec;
          cc.node = node;
          c2.push_back(cc);
          bool child_sym = indexed_ctx && has_symbolic_height(*e->kids[0]);
          if (indexed_ctx && !child_sym) {
            walk(e->kids[0], demote_eq_to_all(c2), mult * Mult::countable() * Mult::countable(),
                 false);
          } else {
            walk(e->kids[0], c2, mult * Mult::countable(), indexed_ctx);
          }
        }
        return;
      }
    }
  }

  // Inside a ramp body: subtrees independent of the parameter occur in every
  // body (presence All, multiplicity times omega); dependent subtrees become
  // families indexed by the body number (presence EqIdx).
  void walk_ramp_body(const ExprPtr& body, std::vector<Ctx> ctxs, int ramp_node, Mult mult) {
    if (!has_symbolic_height(*body)) {
      auto c2 = ctxs;
      Ctx rc;
      rc.t = Ctx::RampBody;
      rc.node = ramp_node;
      rc.cond = Ctx::All;
      c2.push_back(rc);
      walk(body, c2, mult * Mult::countable(), false);
      return;
    }
    switch (body->kind) {
      case Kind::Sum: {
        std::vector<ExprPtr> ops = atoms(body);
        int run = 0;
        for (size_t i = 0; i < ops.size();) {
          size_t j = i;
          while (j < ops.size() && equal(ops[i], ops[j])) ++j;
          auto c2 = ctxs;
          Ctx sc;
          sc.t = Ctx::SumOp;
          sc.op_mult = (int)(j - i);
          sc.op_index = run++;
          c2.push_back(sc);
          walk_ramp_body(ops[i], c2, ramp_node, mult * Mult::finite((int)(j - i)));
          i = j;
        }
        return;
      }
      case Kind::Tower: {
        auto c2 = ctxs;
        Ctx rc;
        rc.t = Ctx::RampBody;
        rc.node = ramp_node;
        rc.cond = Ctx::EqIdx;
        c2.push_back(rc);
        walk_tower(body, c2, mult, true);
        return;
      }
      case Kind::Omega:
      case Kind::Cantor: {
        // the node itself becomes an indexed family living in body n
        auto c2 = ctxs;
        Ctx rc;
        rc.t = Ctx::RampBody;
        rc.node = ramp_node;
        rc.cond = Ctx::EqIdx;
        c2.push_back(rc);
        walk(body, c2, mult, true);
        return;
      }
      default: {
        auto c2 = ctxs;
        Ctx rc;
        rc.t = Ctx::RampBody;
        rc.node = ramp_node;
        rc.cond = Ctx::All;
        c2.push_back(rc);
        walk(body, c2, mult * Mult::countable(), false);
        return;
      }
    }
  }

  // Tower loci: the top plus interior ranks.  For a symbolic height the top
  // is a family over the body index; interiors are a family over the rank,
  // present in every body tall enough.
  void walk_tower(const ExprPtr& t, std::vector<Ctx> ctxs, Mult mult, bool symbolic) {
    int group = next_tower_group++;
    Label top = t->label, in = t->interior;
    if (!symbolic) {
      int h = t->height.b;
      if (h == 0) {
        LocusSchema s;
        s.kind = LocusKind::Leaf;
        s.label = top;
        s.nbhd_const = pt(top);
        s.per_index_mult = mult;
        s.presence = {ctxs};
        s.tower_group = group;
        s.tower_height = t->height;
        s.name = std::string("pt[") + label_name(top) + "]";
        add(s);
        return;
      }
      LocusSchema stop;
      stop.kind = LocusKind::TowerTop;
      stop.label = top;
      stop.nbhd_const = t;
      stop.per_index_mult = mult;
      stop.presence = {ctxs};
      stop.tower_group = group;
      stop.tower_height = t->height;
      stop.name = "tower-top(" + std::to_string(h) + ")[" + label_name(top) + "]";
      add(stop);
      for (int j = 0; j < h; ++j) {
        LocusSchema s;
        s.kind = j == 0 ? LocusKind::Leaf : LocusKind::TowerInterior;
        s.label = in;
        s.nbhd_const = j == 0 ? pt(in) : tower(j, in, in);
        s.per_index_mult = mult * Mult::countable();
        s.presence = {ctxs};
        s.tower_group = group;
        s.tower_height = Affine{0, j};
        s.name = "tower-rank(" + std::to_string(j) + ")[" + label_name(in) + "]";
        add(s);
      }
      return;
    }
    // symbolic tower inside a ramp body
    Affine h = t->height;
    LocusSchema stop;
    stop.kind = LocusKind::TowerTop;
    stop.label = top;
    stop.indexed = true;
    stop.index_base = 1;
    stop.nbhd_fn = [h, in, top](int n) { return tower(h.at(n), in, top); };
    stop.nbhd_const = t;
    stop.per_index_mult = mult;
    stop.presence = {ctxs};  // ctxs already carry RampBody EqIdx
    stop.tower_group = group;
    stop.tower_height = h;
    stop.name = std::string("tower-top(n)[") + label_name(top) + "]";
    add(stop);

    LocusSchema si;
    si.kind = LocusKind::TowerInterior;
    si.label = in;
    si.indexed = true;
    si.index_base = 0;
    si.nbhd_fn = [in](int j) { return j == 0 ? pt(in) : tower(j, in, in); };
    si.nbhd_const = pt(in);
    si.per_index_mult = mult * Mult::countable();
    {
      // rank-j interiors exist in body n iff height(n) > j
      std::function<int(int)> nmin = [h](int rank) {
        int n = 1;
        while (h.at(n) <= rank) ++n;
        return n;
      };
      auto c2 = ctxs;
      for (auto& c : c2)
        if (c.t == Ctx::RampBody && c.cond == Ctx::EqIdx) {
          c.cond = Ctx::GeFn;
          c.nmin = nmin;
        }
      si.presence = {c2};
    }
    si.tower_group = group;
    si.tower_height = h;
    si.name = std::string("tower-rank(j)[") + label_name(in) + "]";
    add(si);
  }
};

}  // namespace detail

inline LociResult loci(const ExprPtr& validated_ends) {
  detail::LociWalker w;
  w.walk(presort(validated_ends), {}, Mult::one(), false);
  return w.out;
}

}  // namespace endgame
