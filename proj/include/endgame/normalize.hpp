#pragma once

// Canonical forms.  The rewrite system:
//   R1  flatten nested sums
//   R2  sort sum operands by the fixed structural order
//   R3  runs of equal operands are the multiplicity form (printing collapses them)
//   R4  drop a sum operand absorbed by an omega sibling: X vanishes next to
//       omega(E,g) when X embeds into finitely many copies of E
//   R5  drop a sum operand absorbed by a monotone ramp sibling's tail
// plus the denotation-preserving rewrite of parameter-free ramps to omegas.
// The result is a fixed point; equality of denotations is mutual clopen
// embedding, under which R4/R5 are exact.

#include "endgame/embed.hpp"
#include "endgame/expr.hpp"

namespace endgame {

namespace detail {

inline ExprPtr normalize_node(const ExprPtr& e, Embedder& em, int absorb_bound);

inline bool absorbed_by_sibling(const ExprPtr& x, const ExprPtr& sib, Embedder& em,
                                int absorb_bound) {
  if (sib->kind == Kind::Omega) {
    const ExprPtr& unit = sib->kids[0];
    std::vector<ExprPtr> pool;
    auto unit_atoms = atoms(em.prep(unit));
    auto xa = atoms(em.prep(x));
    for (int m = 1; m <= absorb_bound; ++m) {
      for (auto& a : unit_atoms) pool.push_back(a);
      bool ok = false;
      try {
        ok = em.clopen_embeds(x, pool.size() == 1 ? pool[0] : sum(pool));
      } catch (const bound_exceeded&) {
        ok = false;
      }
      if (ok) return true;
      if ((int)xa.size() < m) break;
    }
    return false;
  }
  if (sib->kind == Kind::Ramp) {
    const ExprPtr& body = sib->kids[0];
    if (em.body_family(body) != FamilyClass::Monotone) return false;
    for (int probe = 1; probe <= 2; ++probe) {
      auto window = em.window_atoms(body, probe, absorb_bound);
      bool ok = false;
      try {
        ok = em.clopen_embeds(x, window.size() == 1 ? window[0] : sum(window));
      } catch (const bound_exceeded&) {
        ok = false;
      }
      if (!ok) return false;
    }
    return true;
  }
  if (sib->kind == Kind::Cantor) {
    // chunks absorb decoration-material copies and further chunks
    try {
      return em.clopen_embeds(x, sib) && em.clopen_embeds(sum({sib, x}), sib);
    } catch (const bound_exceeded&) {
      return false;
    }
  }
  return false;
}

inline ExprPtr normalize_node(const ExprPtr& e, Embedder& em, int absorb_bound) {
  switch (e->kind) {
    case Kind::Pt:
    case Kind::Tower:
      return e;
    case Kind::Omega:
      return omega(normalize_node(e->kids[0], em, absorb_bound), e->label);
    case Kind::Ramp: {
      auto body = normalize_node(e->kids[0], em, absorb_bound);
      if (!has_symbolic_height(*body)) return omega(body, e->label);
      return ramp(body, e->label);
    }
    case Kind::Cantor: {
      if (e->kids.empty()) return e;
      return cantor_acc(normalize_node(e->kids[0], em, absorb_bound), e->label);
    }
    case Kind::Sum: {
      std::vector<ExprPtr> ops;
      for (auto& k : e->kids) {
        auto nk = normalize_node(k, em, absorb_bound);
        collect_operands(nk, ops);  // R1
      }
      // R4/R5: absorption against limit-bearing siblings
      bool changed = true;
      while (changed) {
        changed = false;
        for (size_t i = 0; i < ops.size() && !changed; ++i) {
          if (ops[i]->kind == Kind::Omega || ops[i]->kind == Kind::Ramp ||
              ops[i]->kind == Kind::Cantor)
            continue;
          for (size_t j = 0; j < ops.size() && !changed; ++j) {
            if (j == i) continue;
            if (ops[j]->kind != Kind::Omega && ops[j]->kind != Kind::Ramp &&
                ops[j]->kind != Kind::Cantor)
              continue;
            if (absorbed_by_sibling(ops[i], ops[j], em, absorb_bound)) {
              ops.erase(ops.begin() + i);
              changed = true;
            }
          }
        }
      }
      std::sort(ops.begin(), ops.end(),
                [](const ExprPtr& a, const ExprPtr& b) { return cmp(a, b) < 0; });  // R2
      if (ops.size() == 1) return ops[0];
      return sum(std::move(ops));
    }
  }
  return e;
}

}  // namespace detail

inline ExprPtr normalize(const ExprPtr& e, Embedder& em, int absorb_bound = 8) {
  ExprPtr cur = e;
  for (int round = 0; round < 8; ++round) {
    ExprPtr next = detail::normalize_node(cur, em, absorb_bound);
    if (equal(next, cur)) return next;
    cur = next;
  }
  return cur;
}

inline ExprPtr normalize(const ExprPtr& e) {
  Embedder em;
  return normalize(e, em);
}

}  // namespace endgame
