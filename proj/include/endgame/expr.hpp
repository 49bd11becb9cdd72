#pragma once

// Symbolic end-space expressions for infinite-type surfaces.
//
// An expression denotes a compact, totally disconnected, metrizable space of
// ends together with the closed subset of ends accumulated by genus.  Labels
// mark membership in that subset.  The grammar is deliberately small: points,
// finite clopen unions, one-point compactifications of omega-indexed copies
// (plain or ramped over an affine parameter), and Cantor sets with an
// optional homogeneous decoration.

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace endgame {

enum class Label : uint8_t { Planar, NonPlanar };

inline const char* label_name(Label l) {
  return l == Label::Planar ? "planar" : "np";
}

// a*n + b over the ramp parameter n >= 1.  a == 0 means a concrete height.
struct Affine {
  int a = 0;
  int b = 0;

  bool symbolic() const { return a != 0; }
  int at(int n) const { return a * n + b; }
  friend bool operator==(const Affine&, const Affine&) = default;
};

enum class Kind : uint8_t { Pt, Sum, Omega, Tower, Ramp, Cantor };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  Kind kind;
  Label label = Label::Planar;     // Pt label / limit label / tower top / cantor label
  Label interior = Label::Planar;  // tower interior
  Affine height{};                 // tower height
  std::vector<ExprPtr> kids;       // Sum operands; single child for Omega/Ramp; Cantor decoration (0 or 1)

  Expr(Kind k) : kind(k) {}
};

inline ExprPtr pt(Label l) {
  auto e = std::make_shared<Expr>(Kind::Pt);
  e->label = l;
  return e;
}

inline ExprPtr sum(std::vector<ExprPtr> ops) {
  assert(ops.size() >= 2);
  auto e = std::make_shared<Expr>(Kind::Sum);
  e->kids = std::move(ops);
  return e;
}

inline ExprPtr omega(ExprPtr inner, Label limit) {
  auto e = std::make_shared<Expr>(Kind::Omega);
  e->label = limit;
  e->kids = {std::move(inner)};
  return e;
}

inline ExprPtr tower(Affine h, Label interior, Label top) {
  auto e = std::make_shared<Expr>(Kind::Tower);
  e->height = h;
  e->interior = interior;
  e->label = top;
  return e;
}

inline ExprPtr tower(int h, Label interior, Label top) {
  return tower(Affine{0, h}, interior, top);
}

inline ExprPtr ramp(ExprPtr body, Label limit) {
  auto e = std::make_shared<Expr>(Kind::Ramp);
  e->label = limit;
  e->kids = {std::move(body)};
  return e;
}

inline ExprPtr cantor(Label l) {
  auto e = std::make_shared<Expr>(Kind::Cantor);
  e->label = l;
  return e;
}

inline ExprPtr cantor_acc(ExprPtr dec, Label l) {
  auto e = std::make_shared<Expr>(Kind::Cantor);
  e->label = l;
  e->kids = {std::move(dec)};
  return e;
}

// ---------------------------------------------------------------------------
// Structural order / equality.  This is the fixed total order used for
// canonical sorting of Sum operands and for memo keys.

inline int cmp(const Expr& x, const Expr& y);

inline int cmp(const ExprPtr& x, const ExprPtr& y) { return cmp(*x, *y); }

inline int cmp(const Expr& x, const Expr& y) {
  auto c3 = [](auto a, auto b) { return a < b ? -1 : (b < a ? 1 : 0); };
  if (int c = c3(static_cast<int>(x.kind), static_cast<int>(y.kind))) return c;
  if (int c = c3(static_cast<int>(x.label), static_cast<int>(y.label))) return c;
  if (int c = c3(static_cast<int>(x.interior), static_cast<int>(y.interior))) return c;
  if (int c = c3(x.height.a, y.height.a)) return c;
  if (int c = c3(x.height.b, y.height.b)) return c;
  if (int c = c3(x.kids.size(), y.kids.size())) return c;
  for (size_t i = 0; i < x.kids.size(); ++i)
    if (int c = cmp(*x.kids[i], *y.kids[i])) return c;
  return 0;
}

inline bool equal(const ExprPtr& x, const ExprPtr& y) { return cmp(*x, *y) == 0; }

// ---------------------------------------------------------------------------
// Printing, in the surface-file grammar.  Runs of equal Sum operands print
// with a multiplicity prefix.

inline void print_to(const Expr& e, std::ostream& os) {
  switch (e.kind) {
    case Kind::Pt:
      os << (e.label == Label::Planar ? "P" : "G");
      break;
    case Kind::Sum: {
      for (size_t i = 0; i < e.kids.size();) {
        size_t j = i;
        while (j < e.kids.size() && equal(e.kids[i], e.kids[j])) ++j;
        if (i) os << " + ";
        if (j - i > 1) os << (j - i) << "*";
        bool paren = (j - i > 1) && e.kids[i]->kind == Kind::Sum;
        if (paren) os << "(";
        print_to(*e.kids[i], os);
        if (paren) os << ")";
        i = j;
      }
      break;
    }
    case Kind::Omega:
      os << "omega(";
      print_to(*e.kids[0], os);
      os << ", " << label_name(e.label) << ")";
      break;
    case Kind::Tower:
      os << "tower(";
      if (e.height.a == 0) {
        os << e.height.b;
      } else {
        if (e.height.a != 1) os << e.height.a << "*";
        os << "n";
        if (e.height.b != 0) os << "+" << e.height.b;
      }
      os << "; " << label_name(e.interior) << ", " << label_name(e.label) << ")";
      break;
    case Kind::Ramp:
      os << "ramp(n -> ";
      print_to(*e.kids[0], os);
      os << ", " << label_name(e.label) << ")";
      break;
    case Kind::Cantor:
      os << "cantor(";
      if (!e.kids.empty()) {
        os << "acc: ";
        print_to(*e.kids[0], os);
        os << ", ";
      }
      os << label_name(e.label) << ")";
      break;
  }
}

inline std::string to_string(const Expr& e) {
  std::ostringstream os;
  print_to(e, os);
  return os.str();
}

inline std::string to_string(const ExprPtr& e) { return to_string(*e); }

// ---------------------------------------------------------------------------
// Simple structural queries.

inline bool contains_np(const Expr& e) {
  if (e.kind == Kind::Pt || e.kind == Kind::Omega || e.kind == Kind::Ramp ||
      e.kind == Kind::Cantor) {
    if (e.label == Label::NonPlanar) return true;
  }
  if (e.kind == Kind::Tower) {
    if (e.label == Label::NonPlanar) return true;
    bool has_interior = e.height.symbolic() || e.height.b >= 1;
    if (has_interior && e.interior == Label::NonPlanar) return true;
  }
  for (auto& k : e.kids)
    if (contains_np(*k)) return true;
  return false;
}

inline bool contains_kind(const Expr& e, Kind k) {
  if (e.kind == k) return true;
  for (auto& c : e.kids)
    if (contains_kind(*c, k)) return true;
  return false;
}

inline bool is_countable(const Expr& e) { return !contains_kind(e, Kind::Cantor); }
inline bool is_countable(const ExprPtr& e) { return is_countable(*e); }

inline bool has_symbolic_height(const Expr& e) {
  if (e.kind == Kind::Tower && e.height.symbolic()) return true;
  if (e.kind == Kind::Ramp) return false;  // inner ramp binds its own parameter
  for (auto& k : e.kids)
    if (has_symbolic_height(*k)) return true;
  return false;
}

// True iff the expression has an isolated point of the given label reachable
// through clopen body/decoration copies.
inline bool has_isolated(const Expr& e, Label l) {
  switch (e.kind) {
    case Kind::Pt:
      return e.label == l;
    case Kind::Sum: {
      for (auto& k : e.kids)
        if (has_isolated(*k, l)) return true;
      return false;
    }
    case Kind::Omega:
      return has_isolated(*e.kids[0], l);
    case Kind::Tower: {
      bool has_interior = e.height.symbolic() || e.height.b >= 1;
      if (!has_interior) return e.label == l;  // height 0 is a point
      return e.interior == l;                  // base punctures carry the interior label
    }
    case Kind::Ramp:
      return has_isolated(*e.kids[0], l);
    case Kind::Cantor:
      return !e.kids.empty() && has_isolated(*e.kids[0], l);
  }
  return false;
}

inline bool has_isolated_any(const Expr& e) {
  return has_isolated(e, Label::Planar) || has_isolated(e, Label::NonPlanar);
}

// ---------------------------------------------------------------------------
// Parameter substitution and tower desugaring.

struct symbolic_height_error : std::runtime_error {
  symbolic_height_error() : std::runtime_error("SymbolicHeight: affine tower height outside a ramp body") {}
};

// Substitute a concrete value for the ramp parameter in a ramp body.
// Stops at nested Ramp nodes (they bind their own parameter).
inline ExprPtr instantiate(const ExprPtr& e, int n) {
  switch (e->kind) {
    case Kind::Pt:
      return e;
    case Kind::Tower: {
      if (!e->height.symbolic()) return e;
      return tower(e->height.at(n), e->interior, e->label);
    }
    case Kind::Ramp:
      return e;
    default: {
      std::vector<ExprPtr> ks;
      ks.reserve(e->kids.size());
      bool changed = false;
      for (auto& k : e->kids) {
        auto k2 = instantiate(k, n);
        changed |= (k2 != k);
        ks.push_back(std::move(k2));
      }
      if (!changed) return e;
      auto out = std::make_shared<Expr>(*e);
      out->kids = std::move(ks);
      return out;
    }
  }
}

// Shift the ramp parameter: body'(n) = body(n + delta).  Affine heights stay affine.
inline ExprPtr shift_param(const ExprPtr& e, int delta) {
  switch (e->kind) {
    case Kind::Tower: {
      if (!e->height.symbolic()) return e;
      Affine h{e->height.a, e->height.b + e->height.a * delta};
      return tower(h, e->interior, e->label);
    }
    case Kind::Pt:
    case Kind::Ramp:
      return e;
    default: {
      auto out = std::make_shared<Expr>(*e);
      for (auto& k : out->kids) k = shift_param(k, delta);
      return out;
    }
  }
}

// Expand Tower sugar into nested Omegas.  Requires concrete heights.
inline ExprPtr desugar(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::Pt:
      return e;
    case Kind::Tower: {
      if (e->height.symbolic()) throw symbolic_height_error();
      ExprPtr cur = pt(e->height.b == 0 ? e->label : e->interior);
      for (int h = 1; h <= e->height.b; ++h)
        cur = omega(cur, h == e->height.b ? e->label : e->interior);
      return cur;
    }
    default: {
      auto out = std::make_shared<Expr>(*e);
      for (auto& k : out->kids) k = desugar(k);
      return out;
    }
  }
}

// Flatten nested sums and sort operands (no absorption; see normalize.hpp for
// the full rewrite system).  Used for canonical memo keys and multiplicity
// detection.
inline void collect_operands(const ExprPtr& e, std::vector<ExprPtr>& out);

inline ExprPtr presort(const ExprPtr& e) {
  if (e->kind == Kind::Sum) {
    std::vector<ExprPtr> ops;
    collect_operands(e, ops);
    std::sort(ops.begin(), ops.end(), [](const ExprPtr& a, const ExprPtr& b) { return cmp(a, b) < 0; });
    if (ops.size() == 1) return ops[0];
    return sum(std::move(ops));
  }
  auto out = std::make_shared<Expr>(*e);
  for (auto& k : out->kids) k = presort(k);
  return out;
}

inline void collect_operands(const ExprPtr& e, std::vector<ExprPtr>& out) {
  if (e->kind == Kind::Sum) {
    for (auto& k : e->kids) collect_operands(k, out);
  } else {
    out.push_back(presort(e));
  }
}

// Top-level atoms of a (possibly Sum) expression.
inline std::vector<ExprPtr> atoms(const ExprPtr& e) {
  std::vector<ExprPtr> out;
  collect_operands(e, out);
  return out;
}

// Finite scattered rank of Ramp/Cantor-free expressions; -1 if out of scope.
inline int finite_rank(const Expr& e) {
  switch (e.kind) {
    case Kind::Pt:
      return 0;
    case Kind::Sum: {
      int r = 0;
      for (auto& k : e.kids) {
        int kr = finite_rank(*k);
        if (kr < 0) return -1;
        r = std::max(r, kr);
      }
      return r;
    }
    case Kind::Omega: {
      int r = finite_rank(*e.kids[0]);
      return r < 0 ? -1 : r + 1;
    }
    case Kind::Tower:
      return e.height.symbolic() ? -1 : e.height.b;
    default:
      return -1;
  }
}

}  // namespace endgame
