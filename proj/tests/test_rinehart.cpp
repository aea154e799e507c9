#include <gtest/gtest.h>

#include "rhocarroll/builtins.hpp"

using namespace rhoc;

namespace {

Element gen(const PresentationPtr& a, const std::string& n, int p = 1) {
  return Element::generator(a, *a->generator_index(n), p);
}

Laurent q(const PresentationPtr& a, int k = 1) { return Laurent::parameter(a->params(), 0, k); }

Section e(const PairPtr& p, std::size_t k) { return Section::basis(p, k); }

PairPtr with_structure(const PairPtr& p, LieRinehartPair::StructureTable s) {
  std::vector<DerivationCombo> anchors;
  for (std::size_t k = 0; k < p->size(); ++k) anchors.push_back(p->anchor(k));
  return LieRinehartPair::make(p->name(), p->derivations(), p->basis(), anchors, std::move(s));
}

}  // namespace

TEST(Pair, CatalogPairsVerify) {
  for (const auto& key : catalog_keys()) {
    const CatalogEntry c = build_entry(key);
    const VerificationReport r = verify_pair(c.pair, {200, 4});
    EXPECT_TRUE(r.passed()) << key << "\n" << r.to_text();
    EXPECT_EQ(r.count(Status::Uncertified), 0u) << key;
  }
}

TEST(Pair, QuantumPlaneHandComputedBrackets) {
  const CatalogEntry c = build_quantum_plane();
  const auto& a = c.algebra;
  const PairPtr& p = c.pair;
  const Element x = gen(a, "x");
  const Element y = gen(a, "y");
  // [x e1, x e2] = x^2 e2
  EXPECT_EQ(bracket(x * e(p, 0), x * e(p, 1)), (x * x) * e(p, 1));
  // [y e1, x e2] = q^-1 x y (e2 - e1)
  EXPECT_EQ(bracket(y * e(p, 0), x * e(p, 1)), q(a, -1) * ((x * y) * (e(p, 1) - e(p, 0))));
  EXPECT_TRUE(bracket(x * e(p, 0), y * e(p, 1)).is_zero());
}

TEST(Pair, BracketMatchesDerivationCommutator) {
  // For tangent pairs the anchor is injective, so the bracket is pinned by
  // the commutator of the anchored derivations.
  for (const std::string key : {"quantum_plane", "nc_torus", "r22_super", "z22"}) {
    const CatalogEntry c = build_entry(key);
    SampleSource src(21);
    for (int k = 0; k < 150; ++k) {
      const Section u = random_section(src, c.pair);
      const Section v = random_section(src, c.pair);
      const ActionTable lhs = anchor_of(bracket(u, v)).action();
      ASSERT_EQ(lhs, der_commutator(anchor_of(u).action(), anchor_of(v).action()))
          << key << " u=" << u.to_string() << " v=" << v.to_string();
    }
  }
}

TEST(Pair, CorruptedStructureIsCaught) {
  // [eu, ev] = eu with the skew partner [ev, eu] = -eu.
  const CatalogEntry c = build_nc_torus();
  const auto& a = c.algebra;
  auto s = LieRinehartPair::abelian(a, 2);
  s[0][1][0] = Element::one(a);
  s[1][0][0] = -Element::one(a);
  const PairPtr bad = with_structure(c.pair, s);
  const VerificationReport r = verify_pair(bad, {50, 1});
  ASSERT_FALSE(r.passed());
  const CheckResult* hom = r.find("pair.anchor_hom");
  ASSERT_NE(hom, nullptr);
  EXPECT_EQ(hom->status, Status::Fail);
  ASSERT_TRUE(hom->witness);
  EXPECT_NE(hom->witness->find("u"), std::string::npos);
  EXPECT_EQ(r.find("pair.skew")->status, Status::Pass);
}

TEST(Pair, NonSkewStructureIsCaught) {
  const CatalogEntry c = build_nc_torus();
  auto s = LieRinehartPair::abelian(c.algebra, 2);
  s[0][1][1] = Element::one(c.algebra);
  const VerificationReport r = verify_pair(with_structure(c.pair, s), {20, 1});
  EXPECT_EQ(r.find("pair.skew")->status, Status::Fail);
}

TEST(Pair, SectionDegrees) {
  const CatalogEntry c = build_quantum_plane();
  const auto& a = c.algebra;
  const Section u = gen(a, "x") * e(c.pair, 0) + gen(a, "y") * e(c.pair, 1);
  EXPECT_FALSE(u.degree());
  EXPECT_EQ(u.homogeneous_components().size(), 2u);
  EXPECT_EQ(u.atoms().size(), 2u);
  EXPECT_EQ(u.to_string(), "x*Dx + y*Dy");
  EXPECT_EQ(*Section::zero(c.pair).degree(), Degree(a->group(), {0, 0}));
}

TEST(Morphism, CarrollInclusion) {
  for (const std::string key : {"quantum_plane", "nc_torus", "eq2"}) {
    const CatalogEntry c = build_entry(key);
    const PairPtr sub = carroll_subpair(*c.carroll);
    EXPECT_TRUE(verify_pair(sub, {50, 2}).passed()) << key;
    EXPECT_TRUE(check_morphism(carroll_inclusion(*c.carroll, sub), sub, c.pair, {50, 2}).passed()) << key;
  }
}

TEST(Morphism, WrongImageFails) {
  const CatalogEntry c = build_nc_torus();
  const PairPtr sub = carroll_subpair(*c.carroll);
  const Laurent two = c.algebra->scalar(GaussianRational(2));
  const VerificationReport r = check_morphism({two * e(c.pair, 0)}, sub, c.pair, {10, 1});
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_failure()->check, "morphism.anchor");
  EXPECT_THROW(check_morphism({}, sub, c.pair), Error);
}
