#include <gtest/gtest.h>

#include "endgame/embed.hpp"
#include "endgame/oracle.hpp"

using namespace endgame;

namespace {
const Label P = Label::Planar;
const Label NP = Label::NonPlanar;
}  // namespace

TEST(Oracle, KnownAnchors) {
  EXPECT_FALSE(oracle::embeds(tower(1, P, NP), tower(2, P, NP)));
  EXPECT_TRUE(oracle::embeds(pt(P), omega(pt(P), P)));
  EXPECT_TRUE(oracle::iso(sum({pt(P), omega(pt(P), P)}), omega(pt(P), P)));
  EXPECT_TRUE(oracle::embeds(sum({tower(2, P, P), tower(2, P, P)}), omega(tower(2, P, P), P)));
}

TEST(Oracle, OrdinalExtents) {
  EXPECT_EQ(oracle::extent_string(pt(P)), "1");
  EXPECT_EQ(oracle::extent_string(omega(pt(P), P)), "w+1");
  EXPECT_EQ(oracle::extent_string(tower(2, P, P)), "w^2+1");
  EXPECT_EQ(oracle::extent_string(sum({tower(2, P, P), tower(2, P, P)})), "w^2*2+1");
  EXPECT_EQ(oracle::extent_string(sum({pt(P), omega(pt(P), P)})), "w+1");
}

TEST(Oracle, OutOfScope) {
  EXPECT_THROW(oracle::realize(cantor(P)), oracle::out_of_scope);
  EXPECT_THROW(oracle::realize(ramp(tower(Affine{1, 0}, P, P), P)), oracle::out_of_scope);
  EXPECT_THROW(oracle::realize(tower(4, P, P)), oracle::out_of_scope);
}

// The acceptance-level agreement suite runs 200+ cases; this is the quick
// development version.
TEST(Oracle, AgreesWithEngine) {
  std::mt19937 rng(5);
  Embedder em;
  int cases = 120;
  for (int i = 0; i < cases; ++i) {
    ExprPtr s = oracle::random_scattered(rng, 3, false);
    ExprPtr t = oracle::random_scattered(rng, 3, false);
    bool engine = em.clopen_embeds(s, t);
    bool desk = oracle::embeds(s, t);
    ASSERT_EQ(engine, desk) << to_string(s) << "  into  " << to_string(t);
  }
}
