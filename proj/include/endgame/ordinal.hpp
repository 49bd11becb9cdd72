#pragma once

// Ordinal type of countable expressions.  A countable compact end space is
// homeomorphic to w^alpha * n + 1; alpha here ranges over ordinals of the
// form w*c + k (towers give finite alpha, ramps with unbounded body ranks
// give limit exponents).

#include <string>

#include "endgame/expr.hpp"

namespace endgame {

struct uncountable_error : std::runtime_error {
  uncountable_error() : std::runtime_error("Uncountable: cantor constructor present") {}
};

// alpha = w * omegas + fin
struct Alpha {
  int omegas = 0;
  int fin = 0;

  friend bool operator==(const Alpha&, const Alpha&) = default;
  friend bool operator<(const Alpha& a, const Alpha& b) {
    return a.omegas != b.omegas ? a.omegas < b.omegas : a.fin < b.fin;
  }
  Alpha succ() const { return {omegas, fin + 1}; }
};

struct OrdinalType {
  Alpha alpha;
  int n = 1;
  friend bool operator==(const OrdinalType&, const OrdinalType&) = default;
};

inline std::string to_string(const Alpha& a) {
  if (a.omegas == 0) return std::to_string(a.fin);
  std::string out = a.omegas == 1 ? "w" : ("w*" + std::to_string(a.omegas));
  if (a.fin) out += "+" + std::to_string(a.fin);
  return out;
}

inline std::string to_string(const OrdinalType& t) {
  std::string a = to_string(t.alpha);
  if (t.alpha == Alpha{0, 0}) return t.n == 1 ? "1" : std::to_string(t.n);
  bool atomic = t.alpha.omegas == 0 || (t.alpha.omegas == 1 && t.alpha.fin == 0);
  std::string base = "w^" + (atomic ? a : "(" + a + ")");
  if (t.n != 1) base += "*" + std::to_string(t.n);
  return base + "+1";
}

inline OrdinalType ordinal_type(const ExprPtr& e) {
  switch (e->kind) {
    case Kind::Pt:
      return {{0, 0}, 1};
    case Kind::Sum: {
      Alpha best{0, 0};
      int count = 0;
      for (auto& k : e->kids) {
        OrdinalType t = ordinal_type(k);
        if (best < t.alpha) {
          best = t.alpha;
          count = t.n;
        } else if (t.alpha == best) {
          count += t.n;
        }
      }
      return {best, count};
    }
    case Kind::Omega:
      return {ordinal_type(e->kids[0]).alpha.succ(), 1};
    case Kind::Tower: {
      if (e->height.symbolic()) throw symbolic_height_error();
      return {{0, e->height.b}, 1};
    }
    case Kind::Ramp: {
      const ExprPtr& body = e->kids[0];
      if (!has_symbolic_height(*body)) return {ordinal_type(body).alpha.succ(), 1};
      // unbounded body ranks: the limit point has rank sup_n(alpha(n)) = next w
      Alpha a1 = ordinal_type(instantiate(body, 1)).alpha;
      return {{a1.omegas + 1, 0}, 1};
    }
    case Kind::Cantor:
      throw uncountable_error();
  }
  return {{0, 0}, 1};
}

}  // namespace endgame
