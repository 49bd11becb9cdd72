#pragma once

// Synthesis of the CB generating-set recipe: the identity neighborhood V_K,
// a finite generating set for Map(K), finitely many handle shifts and
// generalized shifts between complementary regions, and half-twists
// permuting equivalent maximal ends.  Shift inventories follow the source
// reductions: one representative per region pair and type, lower-order
// shifts and lower-class twists dismissed as conjugates through V_K and the
// emitted shifts.

#include "endgame/classify.hpp"

namespace endgame {

struct not_cb_generated : std::runtime_error {
  not_cb_generated() : std::runtime_error("NotCBGenerated: recipe requires a CB-generated group") {}
};

struct missing_witness : std::runtime_error {
  missing_witness() : std::runtime_error("MissingWitness: no locally-CB witness available") {}
};

struct ShiftTemplate {
  bool handle = false;  // torus-with-one-boundary marker
  ExprPtr sigma;        // end pair of the glued surface, when not a handle

  std::string describe() const {
    if (handle) return "handle";
    return "sigma=" + to_string(sigma);
  }
};

struct ShiftGen {
  int region_a = 0, region_b = 0;  // region instance indices
  ShiftTemplate tmpl;
};

struct HalfTwistGen {
  std::string class_name;
  int region_a = 0, region_b = 0;
};

struct GenSetRecipe {
  bool globally_cb = false;
  KSpec identity_nbhd;
  std::string twist_set;
  std::vector<ShiftGen> handle_shifts;
  std::vector<ShiftGen> generalized_shifts;
  std::vector<HalfTwistGen> half_twists;
  std::vector<std::string> notes;
};

namespace detail {

// The top accumulation material at a region's maximal ends; nullptr marks a
// handle (plain genus accumulation).
inline ExprPtr top_material(const ExprPtr& region) {
  switch (region->kind) {
    case Kind::Pt:
      return region->label == Label::NonPlanar ? nullptr : pt(Label::Planar);
    case Kind::Omega:
      return region->kids[0];
    case Kind::Tower: {
      if (!region->height.symbolic() && region->height.b >= 1)
        return tower(region->height.b - 1, region->interior, region->interior);
      return nullptr;
    }
    case Kind::Cantor:
      if (region->kids.empty())
        return region->label == Label::NonPlanar ? nullptr : pt(Label::Planar);
      return region->kids[0];
    default:
      return nullptr;
  }
}

inline bool is_handle(const ExprPtr& mat) { return mat == nullptr; }

}  // namespace detail

inline GenSetRecipe synthesize(Analysis& a, const Report& r,
                               const std::optional<LocCBWitness>& wit) {
  if (r.cb.value == V3::Yes) {
    GenSetRecipe rec;
    rec.globally_cb = true;
    if (wit) rec.identity_nbhd = wit->K;
    rec.twist_set = "globally CB: the whole group is a CB generating set";
    rec.notes.push_back("globally CB; shift and twist inventories are empty");
    return rec;
  }
  if (r.cb_generated.value != V3::Yes) throw not_cb_generated();
  if (!wit) throw missing_witness();

  GenSetRecipe rec;
  rec.identity_nbhd = wit->K;
  {
    std::ostringstream os;
    os << "finite generating set of Map(K) for K = (genus " << wit->K.genus << ", "
       << wit->K.boundary << " boundary curves, " << wit->K.punctures
       << " punctures) (Dehn-Lickorish)";
    rec.twist_set = os.str();
  }

  // region instances, grouped into runs of identical regions
  const auto& regions = wit->a_pieces;
  std::vector<std::pair<ExprPtr, std::vector<int>>> groups;  // expr -> instance indices
  for (int i = 0; i < (int)regions.size(); ++i) {
    if (!groups.empty() && equal(groups.back().first, regions[i]))
      groups.back().second.push_back(i);
    else
      groups.push_back({regions[i], {i}});
  }

  auto emit_shift = [&](int ra, int rb, const ExprPtr& mat) {
    ShiftGen s;
    s.region_a = ra;
    s.region_b = rb;
    s.tmpl.handle = detail::is_handle(mat);
    s.tmpl.sigma = mat;
    if (s.tmpl.handle)
      rec.handle_shifts.push_back(std::move(s));
    else
      rec.generalized_shifts.push_back(std::move(s));
  };

  // within a group of equivalent regions: a star of shifts anchored at the
  // last instance, one per other instance
  for (auto& [expr, inst] : groups) {
    if (inst.size() < 2) continue;
    ExprPtr mat = detail::top_material(expr);
    for (size_t i = 0; i + 1 < inst.size(); ++i) emit_shift(inst[i], inst.back(), mat);
    rec.notes.push_back("star of shifts anchored at region " + std::to_string(inst.back()) +
                        "; other pairs are conjugate through V_K");
  }

  // across nonequivalent groups: one shift per adjacent pair whose material
  // is comparable; the top group keeps an internal representative when it
  // has several equivalent ends to shift between
  if (groups.size() >= 2) {
    Embedder& em = a.em;
    for (size_t g = 0; g + 1 < groups.size(); ++g) {
      ExprPtr lo = detail::top_material(groups[g].first);
      ExprPtr hi = detail::top_material(groups[g + 1].first);
      ExprPtr common;
      bool handle = false;
      if (detail::is_handle(lo) || detail::is_handle(hi)) {
        bool both_np = contains_np(*groups[g].first) && contains_np(*groups[g + 1].first);
        if (!both_np) continue;
        if (detail::is_handle(lo) && detail::is_handle(hi)) {
          handle = true;
        } else {
          ExprPtr other = detail::is_handle(lo) ? hi : lo;
          if (!contains_np(*other)) continue;
          handle = true;  // handles ride inside the richer material
        }
      } else if (em.clopen_embeds(lo, hi)) {
        common = lo;
      } else if (em.clopen_embeds(hi, lo)) {
        common = hi;
      } else {
        continue;  // incomparable end types: no shift exists
      }
      emit_shift(groups[g].second.back(), groups[g + 1].second.front(),
                 handle ? nullptr : common);
    }
    // internal representative for the top group
    auto& top = groups.back();
    SurfaceDesc sub;
    sub.genus = contains_np(*top.first) ? GenusSpec::inf() : GenusSpec::finite(0);
    sub.ends = top.first;
    sub.name = "region";
    Analysis sa = analyze(sub);
    auto maxes = maximal_classes(sa.table);
    bool many_ends = false;
    for (int c : maxes) {
      const auto& ci = sa.table.cls(c);
      if (ci.per_index_mult.infinite() ||
          (ci.per_index_mult.is_finite() && ci.per_index_mult.finite_count() >= 2))
        many_ends = true;
    }
    if (many_ends) {
      emit_shift(top.second.front(), top.second.front(), detail::top_material(top.first));
      rec.notes.push_back("one shift of the top type between ends of region " +
                          std::to_string(top.second.front()));
    }
    rec.notes.push_back(
        "lower-order shifts between adjacent regions are conjugates through V_K");
  }

  // half-twists: one adjacent transposition per pair of equivalent maximal
  // end instances in distinct regions; lower spanning classes permute via
  // conjugation with the shifts
  for (int c : maximal_classes(a.table)) {
    const ClassInfo& ci = a.table.cls(c);
    if (ci.indexed || !ci.per_index_mult.is_finite()) continue;
    int count = ci.per_index_mult.finite_count();
    if (count < 2) continue;
    // the instances live in `count` region copies of the duplicated operand
    for (int i = 0; i + 1 < count; ++i) {
      HalfTwistGen h;
      h.class_name = ci.name;
      h.region_a = i;
      h.region_b = i + 1;
      rec.half_twists.push_back(std::move(h));
    }
    rec.notes.push_back("half-twists permute the class {" + ci.name +
                        "}; lower classes permute via shift conjugation");
  }

  return rec;
}

}  // namespace endgame
