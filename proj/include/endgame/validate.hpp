#pragma once

// Surface descriptions and their validation.
//
// A surface is described by its genus and end-space expression (boundary is
// always empty).  Validation enforces the Kerekjarto-Richards bookkeeping:
// genus is infinite exactly when some end is accumulated by genus, the set of
// such ends must be closed, and finite-type surfaces are rejected.

#include <optional>
#include <string>
#include <utility>

#include "endgame/expr.hpp"

namespace endgame {

struct GenusSpec {
  bool infinite = false;
  int value = 0;  // meaningful when !infinite

  static GenusSpec inf() { return {true, 0}; }
  static GenusSpec finite(int g) { return {false, g}; }
  friend bool operator==(const GenusSpec&, const GenusSpec&) = default;
};

inline std::string to_string(const GenusSpec& g) {
  return g.infinite ? "inf" : std::to_string(g.value);
}

struct SurfaceDesc {
  GenusSpec genus;
  ExprPtr ends;  // may be null (rejected as EmptyEnds)
  std::string name;
};

enum class ValidationErrorKind {
  GenusMismatch,
  EmptyEnds,
  FiniteType,
  MalformedRamp,
};

struct validation_error : std::runtime_error {
  ValidationErrorKind kind;
  validation_error(ValidationErrorKind k, const std::string& msg)
      : std::runtime_error(msg), kind(k) {}
};

namespace detail {

inline void check_structure(const Expr& e, bool in_ramp_body) {
  switch (e.kind) {
    case Kind::Pt:
      return;
    case Kind::Sum:
      if (e.kids.size() < 2)
        throw validation_error(ValidationErrorKind::MalformedRamp, "sum arity must be >= 2");
      for (auto& k : e.kids) check_structure(*k, in_ramp_body);
      return;
    case Kind::Omega:
      check_structure(*e.kids[0], in_ramp_body);
      return;
    case Kind::Tower: {
      if (e.height.symbolic()) {
        if (!in_ramp_body)
          throw validation_error(ValidationErrorKind::MalformedRamp,
                                 "symbolic tower height outside a ramp body");
        if (e.height.a < 0 || e.height.b < 0 || e.height.a + e.height.b < 1)
          throw validation_error(ValidationErrorKind::MalformedRamp,
                                 "affine tower height must satisfy a+b >= 1 and a,b >= 0");
      } else if (e.height.b < 0) {
        throw validation_error(ValidationErrorKind::MalformedRamp, "negative tower height");
      }
      return;
    }
    case Kind::Ramp:
      if (in_ramp_body)
        throw validation_error(ValidationErrorKind::MalformedRamp,
                               "nested ramp: bodies carry at most one parameter");
      check_structure(*e.kids[0], true);
      return;
    case Kind::Cantor:
      if (!e.kids.empty()) check_structure(*e.kids[0], in_ramp_body);
      return;
  }
}

// E_G(S) is closed: a planar limit point cannot be approached by non-planar
// material.  Limits of copies see everything inside the copies, so a planar
// Omega/Ramp/Cantor label demands an entirely planar interior.
inline void check_genus_closure(const Expr& e) {
  bool limit_node = e.kind == Kind::Omega || e.kind == Kind::Ramp || e.kind == Kind::Cantor;
  if (limit_node && e.label == Label::Planar) {
    for (auto& k : e.kids)
      if (contains_np(*k))
        throw validation_error(ValidationErrorKind::GenusMismatch,
                               "planar limit accumulated by genus (E_G must be closed)");
  }
  if (e.kind == Kind::Tower && e.label == Label::Planar && e.interior == Label::NonPlanar) {
    bool has_interior = e.height.symbolic() || e.height.b >= 1;
    if (has_interior)
      throw validation_error(ValidationErrorKind::GenusMismatch,
                             "planar tower top over non-planar interior (E_G must be closed)");
  }
  for (auto& k : e.kids) check_genus_closure(*k);
}

inline bool finite_type(const GenusSpec& g, const Expr& e) {
  if (g.infinite) return false;
  // finite everything: a finite sum of points with finite genus
  if (e.kind == Kind::Pt) return true;
  if (e.kind == Kind::Sum) {
    for (auto& k : e.kids)
      if (!finite_type(g, *k)) return false;
    return true;
  }
  return false;
}

}  // namespace detail

struct ValidatedSurface {
  SurfaceDesc desc;
  const Expr& ends() const { return *desc.ends; }
};

inline ValidatedSurface validate(const SurfaceDesc& desc) {
  if (!desc.ends)
    throw validation_error(ValidationErrorKind::EmptyEnds, "surface has no end expression");
  detail::check_structure(*desc.ends, false);

  bool np = contains_np(*desc.ends);
  if (desc.genus.infinite && !np)
    throw validation_error(ValidationErrorKind::GenusMismatch,
                           "infinite genus must accumulate at a non-planar end");
  if (!desc.genus.infinite && np)
    throw validation_error(ValidationErrorKind::GenusMismatch,
                           "finite genus is incompatible with non-planar ends");
  if (!desc.genus.infinite && desc.genus.value < 0)
    throw validation_error(ValidationErrorKind::GenusMismatch, "negative genus");

  detail::check_genus_closure(*desc.ends);

  if (detail::finite_type(desc.genus, *desc.ends))
    throw validation_error(ValidationErrorKind::FiniteType,
                           "description denotes a finite-type surface");

  return ValidatedSurface{desc};
}

}  // namespace endgame
