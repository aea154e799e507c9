#include <gtest/gtest.h>

#include "rhocarroll/builtins.hpp"

using namespace rhoc;

namespace {

Element gen(const PresentationPtr& a, const std::string& n, int p = 1) {
  return Element::generator(a, *a->generator_index(n), p);
}

Laurent qpow(const PresentationPtr& a, int k) { return Laurent::parameter(a->params(), 0, k); }

Laurent num(const PresentationPtr& a, long n) { return a->scalar(GaussianRational(n)); }

ActionTable table(const RhoDerivation& d) { return ActionTable(d.presentation(), d.action()); }

}  // namespace

TEST(Derivation, CoordinateClosedForms) {
  // d_x(x^n y^m) = n x^{n-1} y^m and d_y(x^n y^m) = m q^n x^n y^{m-1}.
  const CatalogEntry e = build_quantum_plane();
  const auto& a = e.algebra;
  const RhoDerivation& dx = *e.derivation("dx");
  const RhoDerivation& dy = *e.derivation("dy");
  EXPECT_EQ(dx.degree(), Degree(a->group(), {-1, 0}));
  EXPECT_EQ(dy.degree(), Degree(a->group(), {0, -1}));
  for (int n = -3; n <= 3; ++n) {
    for (int m = -3; m <= 3; ++m) {
      const Element f = gen(a, "x", n) * gen(a, "y", m);
      EXPECT_EQ(dx.apply(f), num(a, n) * (gen(a, "x", n - 1) * gen(a, "y", m))) << n << "," << m;
      EXPECT_EQ(dy.apply(f), (num(a, m) * qpow(a, n)) * (gen(a, "x", n) * gen(a, "y", m - 1))) << n << "," << m;
    }
  }
}

TEST(Derivation, EulerOperators) {
  // Dy(x^n y^m) = m x^n y^m
  const CatalogEntry e = build_quantum_plane();
  const auto& a = e.algebra;
  for (int n = -2; n <= 2; ++n) {
    for (int m = -4; m <= 4; ++m) {
      const Element f = gen(a, "x", n) * gen(a, "y", m);
      EXPECT_EQ(e.derivation("Dy")->apply(f), num(a, m) * f);
      EXPECT_EQ(e.derivation("Dx")->apply(f), num(a, n) * f);
    }
  }
}

TEST(Derivation, InverseLetter) {
  // X(g^-1) = -rho(|X|,|g|)^-1 g^-1 X(g) g^-1
  const CatalogEntry e = build_quantum_plane();
  const auto& a = e.algebra;
  const RhoDerivation& dy = *e.derivation("dy");
  const Element yi = gen(a, "y", -1);
  EXPECT_EQ(dy.apply(yi), -(yi * yi));
  const RhoDerivation& dx = *e.derivation("dx");
  EXPECT_TRUE(dx.apply(yi).is_zero());
  EXPECT_EQ(dx.on_letter(0, -1), -gen(a, "x", -2));
}

TEST(Derivation, WordExpansionMatchesNormalForm) {
  for (const auto& key : catalog_keys()) {
    const CatalogEntry e = build_entry(key);
    SampleSource src(5);
    for (const auto& d : e.derivations) {
      for (int k = 0; k < 40; ++k) {
        const Word w = src.word(e.algebra, 6);
        ASSERT_EQ(d.apply_word(w), d.apply(normalize(e.algebra, w))) << key << " " << d.name();
      }
    }
  }
}

TEST(Derivation, RhoLeibnizRule) {
  // X(fg) = X(f) g + rho(|X|,|f|) f X(g)
  for (const auto& key : catalog_keys()) {
    const CatalogEntry e = build_entry(key);
    const auto& a = e.algebra;
    SampleSource src(9);
    for (const auto& d : e.derivations) {
      for (int k = 0; k < 200; ++k) {
        const Element f = src.homogeneous(a);
        const Element g = src.homogeneous(a);
        const Element rhs = d.apply(f) * g + a->rho_coefficient(d.degree(), *f.degree()) * (f * d.apply(g));
        ASSERT_EQ(d.apply(f * g), rhs) << key << " " << d.name() << " f=" << f.to_string() << " g=" << g.to_string();
      }
    }
  }
}

TEST(Derivation, CatalogDerivationsVerify) {
  for (const auto& key : catalog_keys()) {
    const CatalogEntry e = build_entry(key);
    for (const auto& d : e.derivations) EXPECT_TRUE(verify_derivation(d).passed()) << key << " " << d.name();
  }
}

TEST(Derivation, InconsistentActionIsCaught) {
  // x -> y in degree zero: wrong degree, and y*x - q^-1*x*y is not sent to zero.
  const auto a = build_quantum_plane().algebra;
  const RhoDerivation bad(a, "bad", Degree(a->group(), {0, 0}), {gen(a, "y"), Element(a)});
  const VerificationReport r = verify_derivation(bad);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(r.first_failure()->check, "derivation.degree");
  ASSERT_NE(r.find("derivation.relation"), nullptr);
  EXPECT_EQ(r.find("derivation.relation")->status, Status::Fail);

  // Over a presentation with only invertible generators and rho-commutation,
  // every homogeneous assignment is consistent.
  const RhoDerivation fine(a, "fine", Degree(a->group(), {-1, 1}), {gen(a, "y"), Element(a)});
  EXPECT_TRUE(verify_derivation(fine).passed());
}

TEST(Derivation, SuperCoordinateSigns) {
  // d_theta1(theta2 theta1) = -theta2
  const CatalogEntry e = build_r22_super();
  const auto& a = e.algebra;
  const RhoDerivation& d1 = *e.derivation("dth1");
  EXPECT_EQ(d1.apply(gen(a, "theta2") * gen(a, "theta1")), -gen(a, "theta2"));
  EXPECT_EQ(d1.apply(gen(a, "theta1") * gen(a, "theta2")), gen(a, "theta2"));
}

TEST(DerivationCommutator, SkewAndJacobi) {
  for (const auto& key : catalog_keys()) {
    const CatalogEntry e = build_entry(key);
    const auto& a = e.algebra;
    SampleSource src(13);
    const auto& ds = e.derivations;
    for (int k = 0; k < 200; ++k) {
      const RhoDerivation& x0 = ds[static_cast<std::size_t>(src.uniform(0, static_cast<int>(ds.size()) - 1))];
      const RhoDerivation& y0 = ds[static_cast<std::size_t>(src.uniform(0, static_cast<int>(ds.size()) - 1))];
      const RhoDerivation& z0 = ds[static_cast<std::size_t>(src.uniform(0, static_cast<int>(ds.size()) - 1))];
      const ActionTable x = src.homogeneous(a) * table(x0);
      const ActionTable y = src.homogeneous(a) * table(y0);
      const ActionTable z = src.homogeneous(a) * table(z0);
      if (x.is_zero() || y.is_zero() || z.is_zero()) continue;
      const Degree dx = *x.degree();
      const Degree dy = *y.degree();
      const Degree dz = *z.degree();
      ASSERT_EQ(der_commutator(x, y), -a->rho_coefficient(dx, dy) * der_commutator(y, x)) << key;
      // [X,[Y,Z]] = [[X,Y],Z] + rho(|X|,|Y|) [Y,[X,Z]]
      const ActionTable lhs = der_commutator(x, der_commutator(y, z));
      const ActionTable rhs =
          der_commutator(der_commutator(x, y), z) + a->rho_coefficient(dx, dy) * der_commutator(y, der_commutator(x, z));
      ASSERT_EQ(lhs, rhs) << key;
    }
  }
}

TEST(DerivationBasis, DecomposesTangentTables) {
  const CatalogEntry e = build_quantum_plane();
  const auto& a = e.algebra;
  ASSERT_TRUE(e.derivation_basis->decomposable());
  // d_x = x^-1 Dx
  const auto c = e.derivation_basis->decompose(table(*e.derivation("dx")));
  ASSERT_TRUE(c);
  EXPECT_EQ((*c)[0], gen(a, "x", -1));
  EXPECT_TRUE((*c)[1].is_zero());
  const DerivationCombo combo = DerivationCombo::from_action(e.derivation_basis, table(*e.derivation("dy")));
  EXPECT_EQ(combo.to_string(), "y^-1*Dy");
  EXPECT_EQ(combo.action(), table(*e.derivation("dy")));
}
