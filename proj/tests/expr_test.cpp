#include <gtest/gtest.h>

#include "endgame/normalize.hpp"
#include "endgame/ordinal.hpp"
#include "endgame/oracle.hpp"
#include "endgame/validate.hpp"

using namespace endgame;

namespace {
const Label P = Label::Planar;
const Label NP = Label::NonPlanar;
}  // namespace

TEST(Desugar, TowerUnfolds) {
  EXPECT_TRUE(equal(desugar(tower(1, P, NP)), omega(pt(P), NP)));
  EXPECT_TRUE(equal(desugar(tower(0, P, P)), pt(P)));
  EXPECT_TRUE(equal(desugar(tower(2, P, P)), omega(omega(pt(P), P), P)));
}

TEST(Desugar, Idempotent) {
  auto e = sum({tower(3, P, NP), pt(P), omega(tower(2, NP, NP), NP)});
  EXPECT_TRUE(equal(desugar(desugar(e)), desugar(e)));
}

TEST(Validate, LochNess) {
  SurfaceDesc d{GenusSpec::inf(), pt(NP), "loch"};
  EXPECT_NO_THROW(validate(d));
}

TEST(Validate, GenusMismatch) {
  SurfaceDesc d{GenusSpec::finite(5), pt(NP), "bad"};
  try {
    validate(d);
    FAIL() << "expected GenusMismatch";
  } catch (const validation_error& e) {
    EXPECT_EQ(e.kind, ValidationErrorKind::GenusMismatch);
  }
}

TEST(Validate, FiniteType) {
  SurfaceDesc d{GenusSpec::finite(0), sum({pt(P), pt(P), pt(P)}), "sphere3"};
  try {
    validate(d);
    FAIL() << "expected FiniteType";
  } catch (const validation_error& e) {
    EXPECT_EQ(e.kind, ValidationErrorKind::FiniteType);
  }
}

TEST(Validate, EmptyEnds) {
  SurfaceDesc d{GenusSpec::inf(), nullptr, "empty"};
  try {
    validate(d);
    FAIL() << "expected EmptyEnds";
  } catch (const validation_error& e) {
    EXPECT_EQ(e.kind, ValidationErrorKind::EmptyEnds);
  }
}

TEST(Validate, ClosednessOfGenusEnds) {
  // a planar limit accumulated by non-planar ends contradicts closedness
  SurfaceDesc d{GenusSpec::inf(), omega(pt(NP), P), "bad-closure"};
  EXPECT_THROW(validate(d), validation_error);
}

TEST(Validate, NestedRampRejected) {
  auto body = ramp(tower(Affine{1, 0}, P, P), P);
  SurfaceDesc d{GenusSpec::finite(0), ramp(body, P), "nested"};
  try {
    validate(d);
    FAIL() << "expected MalformedRamp";
  } catch (const validation_error& e) {
    EXPECT_EQ(e.kind, ValidationErrorKind::MalformedRamp);
  }
}

TEST(Validate, SymbolicHeightOutsideRamp) {
  SurfaceDesc d{GenusSpec::finite(0), tower(Affine{1, 0}, P, P), "sym"};
  EXPECT_THROW(validate(d), validation_error);
}

TEST(Normalize, AbsorptionIntoOmega) {
  // verified against the explicit ordinal model: w+1+1 iso w+1
  auto lhs = sum({pt(P), omega(pt(P), P)});
  auto rhs = omega(pt(P), P);
  ASSERT_TRUE(oracle::iso(lhs, rhs));
  Embedder em;
  EXPECT_TRUE(equal(normalize(lhs, em), rhs));
}

TEST(Normalize, FlattensAndSorts) {
  auto a = pt(P), b = pt(NP);
  auto e = sum({sum({b, a}), cantor(NP)});
  auto n = normalize(e);
  ASSERT_EQ(n->kind, Kind::Sum);
  EXPECT_EQ(n->kids.size(), 3u);
  for (size_t i = 0; i + 1 < n->kids.size(); ++i)
    EXPECT_LE(cmp(n->kids[i], n->kids[i + 1]), 0);
}

TEST(Normalize, Idempotent) {
  std::mt19937 rng(11);
  Embedder em;
  for (int i = 0; i < 60; ++i) {
    auto e = oracle::random_scattered(rng, 3, false);
    auto n1 = normalize(e, em);
    auto n2 = normalize(n1, em);
    EXPECT_TRUE(equal(n1, n2)) << to_string(e);
  }
}

TEST(Normalize, DenotationPreserved) {
  std::mt19937 rng(12);
  Embedder em;
  for (int i = 0; i < 40; ++i) {
    auto e = oracle::random_scattered(rng, 2, false);
    auto n = normalize(e, em);
    EXPECT_TRUE(em.iso(e, n)) << to_string(e) << " vs " << to_string(n);
  }
}

TEST(Countability, Basics) {
  auto d_expr = ramp(tower(Affine{1, 0}, P, NP), NP);
  EXPECT_TRUE(is_countable(d_expr));
  EXPECT_FALSE(is_countable(cantor(P)));
  EXPECT_FALSE(is_countable(sum({pt(NP), cantor(P)})));
}

TEST(OrdinalType, Towers) {
  for (int h = 0; h <= 6; ++h) {
    auto t = ordinal_type(tower(h, P, h == 0 ? P : NP));
    EXPECT_EQ(t.alpha, (Alpha{0, h}));
    EXPECT_EQ(t.n, 1);
  }
}

TEST(OrdinalType, PointAndD) {
  EXPECT_EQ(ordinal_type(pt(P)), (OrdinalType{{0, 0}, 1}));
  auto d_expr = ramp(tower(Affine{1, 0}, P, NP), NP);
  EXPECT_EQ(ordinal_type(d_expr), (OrdinalType{{1, 0}, 1}));
  EXPECT_EQ(to_string(ordinal_type(d_expr)), "w^w+1");
}

TEST(OrdinalType, SumsCountTopRank) {
  auto e = sum({tower(2, P, P), tower(2, P, P), tower(1, P, P)});
  EXPECT_EQ(ordinal_type(e), (OrdinalType{{0, 2}, 2}));
  EXPECT_THROW(ordinal_type(cantor(P)), uncountable_error);
}

TEST(Print, GrammarRoundTrip) {
  auto e = sum({pt(NP), pt(P), omega(omega(pt(P), P), P)});
  EXPECT_EQ(to_string(presort(e)), "P + G + omega(omega(P, planar), planar)");
  EXPECT_EQ(to_string(tower(Affine{2, 1}, NP, NP)), "tower(2*n+1; np, np)");
}
