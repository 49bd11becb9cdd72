#include <gtest/gtest.h>

#include "endgame/embed.hpp"
#include "endgame/oracle.hpp"

using namespace endgame;

namespace {
const Label P = Label::Planar;
const Label NP = Label::NonPlanar;

ExprPtr T(int h, Label in, Label top) { return tower(h, in, top); }
}  // namespace

TEST(ClopenEmbeds, TowersWithGenusTopsAreIncomparable) {
  Embedder em;
  EXPECT_FALSE(em.clopen_embeds(T(1, P, NP), T(2, P, NP)));
  EXPECT_FALSE(em.clopen_embeds(T(2, P, NP), T(1, P, NP)));
}

TEST(ClopenEmbeds, PointIntoOmega) {
  Embedder em;
  EXPECT_TRUE(em.clopen_embeds(pt(P), omega(pt(P), P)));
  EXPECT_FALSE(em.clopen_embeds(pt(NP), omega(pt(P), P)));
}

TEST(ClopenEmbeds, TwoCopiesIntoHigherOmega) {
  // two disjoint clopen copies of w^2+1 inside w^3+1; frozen after checking
  // the explicit ordinal model
  auto src = sum({T(2, P, P), T(2, P, P)});
  auto tgt = omega(T(2, P, P), P);
  ASSERT_TRUE(oracle::embeds(src, tgt));
  Embedder em;
  EXPECT_TRUE(em.clopen_embeds(src, tgt));
}

TEST(ClopenEmbeds, PlanarTowersAreMonotone) {
  Embedder em;
  EXPECT_TRUE(em.clopen_embeds(T(1, P, P), T(2, P, P)));
  EXPECT_TRUE(em.clopen_embeds(T(2, NP, NP), T(3, NP, NP)));
  EXPECT_FALSE(em.clopen_embeds(T(2, P, P), T(1, P, P)));
}

TEST(Iso, Reflexive) {
  Embedder em;
  auto e = sum({pt(NP), omega(T(2, P, P), P)});
  EXPECT_TRUE(em.iso(e, e));
}

TEST(Iso, AbsorbedPoint) {
  Embedder em;
  EXPECT_TRUE(em.iso(sum({pt(P), omega(pt(P), P)}), omega(pt(P), P)));
}

TEST(Iso, DistinguishesGenusTowers) {
  Embedder em;
  EXPECT_FALSE(em.iso(T(1, P, NP), T(2, P, NP)));
}

TEST(ClopenEmbeds, RampTails) {
  Embedder em;
  auto dbody = tower(Affine{1, 0}, P, NP);
  auto d_expr = ramp(dbody, NP);
  auto tail2 = ramp(shift_param(dbody, 1), NP);
  // a tail is clopen in the whole ramp
  EXPECT_TRUE(em.clopen_embeds(tail2, d_expr));
  // but an antichain ramp does not embed into its own tail
  EXPECT_FALSE(em.clopen_embeds(d_expr, tail2));

  auto kbody = tower(Affine{1, 0}, P, P);
  auto k_expr = ramp(kbody, P);
  auto ktail = ramp(shift_param(kbody, 2), P);
  // monotone ramps have mutually iso tails
  EXPECT_TRUE(em.iso(k_expr, ktail));
}

TEST(ClopenEmbeds, FamilyClassification) {
  Embedder em;
  EXPECT_EQ(em.body_family(tower(Affine{1, 0}, P, P)), FamilyClass::Monotone);
  EXPECT_EQ(em.body_family(tower(Affine{1, 0}, P, NP)), FamilyClass::Antichain);
  EXPECT_EQ(em.body_family(tower(Affine{1, 0}, NP, NP)), FamilyClass::Monotone);
  EXPECT_EQ(em.body_family(cantor_acc(tower(Affine{1, 0}, NP, NP), NP)),
            FamilyClass::Antichain);
}

TEST(ClopenEmbeds, CantorChunks) {
  Embedder em;
  // any clopen chunk of a cantor set is a cantor set
  EXPECT_TRUE(em.iso(sum({cantor(P), cantor(P)}), cantor(P)));
  // decorated chunks require matching decorations
  auto c1 = cantor_acc(T(1, NP, NP), NP);
  auto c2 = cantor_acc(T(2, NP, NP), NP);
  EXPECT_FALSE(em.clopen_embeds(c1, c2));
  EXPECT_FALSE(em.clopen_embeds(c2, c1));
  // decorations themselves embed into the decoration copies
  EXPECT_TRUE(em.clopen_embeds(T(1, NP, NP), c1));
  EXPECT_FALSE(em.clopen_embeds(cantor(P), c1));
}

TEST(ClopenEmbeds, CantorAbsorbsDecorationMaterial) {
  Embedder em;
  auto c = cantor_acc(pt(NP), NP);
  EXPECT_TRUE(em.iso(sum({pt(NP), c}), c));
}

TEST(ClopenEmbeds, OmegaOfCantorCollapses) {
  Embedder em;
  // w copies of a cantor set compactify to a cantor set (Brouwer)
  EXPECT_TRUE(em.iso(omega(cantor(P), P), cantor(P)));
  EXPECT_FALSE(em.iso(omega(cantor(P), P), cantor(NP)));
}

TEST(ClopenEmbeds, BlockEquivalentOmegas) {
  Embedder em;
  auto e1 = omega(sum({pt(P), pt(P)}), P);
  auto e2 = omega(pt(P), P);
  EXPECT_TRUE(em.iso(e1, e2));
  EXPECT_FALSE(em.iso(omega(pt(NP), NP), omega(pt(P), P)));
}

TEST(Properties, ReflexiveTransitiveOnRandoms) {
  std::mt19937 rng(21);
  Embedder em;
  std::vector<ExprPtr> pool;
  for (int i = 0; i < 12; ++i) pool.push_back(oracle::random_scattered(rng, 2, false));
  for (auto& e : pool) EXPECT_TRUE(em.clopen_embeds(e, e)) << to_string(e);
  int checked = 0;
  for (auto& a : pool)
    for (auto& b : pool)
      for (auto& c : pool) {
        if (em.clopen_embeds(a, b) && em.clopen_embeds(b, c)) {
          ++checked;
          EXPECT_TRUE(em.clopen_embeds(a, c))
              << to_string(a) << " -> " << to_string(b) << " -> " << to_string(c);
        }
      }
  EXPECT_GT(checked, 0);
}

TEST(Properties, IsoIsEquivalence) {
  std::mt19937 rng(22);
  Embedder em;
  std::vector<ExprPtr> pool;
  for (int i = 0; i < 10; ++i) pool.push_back(oracle::random_scattered(rng, 2, false));
  for (auto& a : pool)
    for (auto& b : pool)
      for (auto& c : pool)
        if (em.iso(a, b) && em.iso(b, c)) EXPECT_TRUE(em.iso(a, c));
}

TEST(Bounds, LoudFailure) {
  Embedder em(Embedder::Config{.copy_bound = 2});
  std::vector<ExprPtr> many(4, tower(1, P, P));
  EXPECT_THROW(em.clopen_embeds(sum(many), omega(tower(1, P, P), P)), bound_exceeded);
}
