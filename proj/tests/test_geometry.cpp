#include <gtest/gtest.h>

#include "rhocarroll/builtins.hpp"

using namespace rhoc;

namespace {

Element gen(const PresentationPtr& a, const std::string& n, int p = 1) {
  return Element::generator(a, *a->generator_index(n), p);
}

Laurent q(const PresentationPtr& a, int k = 1) { return Laurent::parameter(a->params(), 0, k); }

// Quantum plane pair on the coordinate sections dx = x^-1 Dx, dy = y^-1 Dy.
PairPtr coordinate_pair(const CatalogEntry& qp) {
  const auto& a = qp.algebra;
  const auto& basis = qp.derivation_basis;
  return LieRinehartPair::make(
      "Q", basis, {{"dx", Degree(a->group(), {-1, 0})}, {"dy", Degree(a->group(), {0, -1})}},
      {DerivationCombo(basis, {gen(a, "x", -1), Element(a)}), DerivationCombo(basis, {Element(a), gen(a, "y", -1)})},
      LieRinehartPair::abelian(a, 2));
}

struct CoordinatePair {
  CatalogEntry qp = build_quantum_plane();
  PairPtr pair = coordinate_pair(qp);
  Metric g{"G", pair,
           {{gen(qp.algebra, "x", -2), Element(qp.algebra)}, {Element(qp.algebra), gen(qp.algebra, "y", -2)}}};

  Section e(std::size_t k) const { return Section::basis(pair, k); }
  ElementMatrix inverse() const {
    const auto& a = qp.algebra;
    return {{gen(a, "x", 2), Element(a)}, {Element(a), gen(a, "y", 2)}};
  }
};

}  // namespace

TEST(Metric, CatalogMetricsAreSymmetricOfDegreeZero) {
  for (const auto& key : catalog_keys()) {
    const CatalogEntry c = build_entry(key);
    if (c.metric) EXPECT_TRUE(check_metric(*c.metric).passed()) << key;
    if (c.auxiliary_metric) EXPECT_TRUE(check_metric(*c.auxiliary_metric).passed()) << key;
  }
}

TEST(Metric, EvaluationPicksUpRho) {
  // G(y dx, x dx) = rho((-1,1),(1,0)) x y x^-2 = q x^-1 y
  const CoordinatePair c;
  const auto& a = c.qp.algebra;
  EXPECT_TRUE(check_metric(c.g).passed());
  EXPECT_EQ(metric_eval(c.g, gen(a, "y") * c.e(0), gen(a, "x") * c.e(0)), q(a) * (gen(a, "x", -1) * gen(a, "y")));
  EXPECT_TRUE(metric_eval(c.g, c.e(0), c.e(1)).is_zero());
}

TEST(Metric, BadMetricsAreCaught) {
  const CatalogEntry c = build_nc_torus();
  const auto& a = c.algebra;
  const Metric wrong_degree("W", c.pair, {{gen(a, "u"), Element(a)}, {Element(a), Element::one(a)}});
  EXPECT_EQ(check_metric(wrong_degree).first_failure()->check, "metric.degree");
  const Metric skew("S", c.pair, {{Element(a), Element::one(a)}, {-Element::one(a), Element(a)}});
  const VerificationReport r = check_metric(skew);
  EXPECT_EQ(r.first_failure()->check, "metric.symmetry");
  EXPECT_EQ(*r.first_failure()->witness, "2");
}

TEST(LeviCivita, TorusFlatMetricHasZeroSymbols) {
  const CatalogEntry c = build_nc_torus();
  const Connection lc = levi_civita(c.pair, *c.auxiliary_metric);
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) EXPECT_TRUE(lc.at(a, b).is_zero());
  }
  EXPECT_TRUE(check_flat(lc).passed());
}

TEST(LeviCivita, CoordinateMetricMatchesKoszulByHand) {
  // 2 G(nabla_dx dx, dx) = dx(x^-2) = -2 x^-3, so nabla_dx dx = -x^-1 dx.
  const CoordinatePair c;
  const auto& a = c.qp.algebra;
  const Connection lc = levi_civita(c.pair, c.g, c.inverse());
  EXPECT_EQ(lc.at(0, 0), -(gen(a, "x", -1) * c.e(0)));
  EXPECT_EQ(lc.at(1, 1), -(gen(a, "y", -1) * c.e(1)));
  EXPECT_TRUE(lc.at(0, 1).is_zero());
  EXPECT_TRUE(lc.at(1, 0).is_zero());
  EXPECT_TRUE(check_torsion_free(lc).passed());
  EXPECT_TRUE(check_compatibility(lc, c.g).passed());
  EXPECT_TRUE(check_flat(lc).passed());
  EXPECT_TRUE(check_tensoriality(as_operator(lc), {60, 3}).passed());
}

TEST(LeviCivita, PerturbationsBreakIt) {
  const CatalogEntry c = build_nc_torus();
  const Metric& h = *c.auxiliary_metric;
  const Connection lc = levi_civita(c.pair, h);
  const Section eu = Section::basis(c.pair, 0);
  // Symmetric change: still torsion free, no longer compatible.
  const Connection p1 = lc.with(0, 0, eu);
  EXPECT_TRUE(check_torsion_free(p1).passed());
  EXPECT_FALSE(check_compatibility(p1, h).passed());
  // Antisymmetric change: torsion eu.
  const Connection p2 = lc.with(0, 1, eu);
  const VerificationReport t = check_torsion_free(p2);
  ASSERT_FALSE(t.passed());
  EXPECT_EQ(*t.first_failure()->witness, "eu");
}

TEST(LeviCivita, Errors) {
  const CatalogEntry torus = build_nc_torus();
  try {
    (void)levi_civita(torus.pair, *torus.metric);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::KernelNonTrivial);
  }
  const CoordinatePair c;
  try {
    (void)levi_civita(c.pair, c.g);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InverseUnavailable);
  }
  ElementMatrix wrong = c.inverse();
  wrong[0][0] = Element::one(c.qp.algebra);
  EXPECT_THROW((void)levi_civita(c.pair, c.g, wrong), Error);
}

TEST(Connection, CompatibilityWitness) {
  // nabla_Dx Dx = Dx against G = diag(1,0): (nabla_Dx G)(Dx,Dx) = 0 - 1 - 1.
  const CatalogEntry c = build_quantum_plane();
  const Connection bad = Connection::trivial("B", c.pair).with(0, 0, Section::basis(c.pair, 0));
  const VerificationReport r = check_compatibility(bad, *c.metric);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(*r.first_failure()->witness, "-2");
  EXPECT_TRUE(check_compatibility(*c.connection, *c.metric).passed());
}

TEST(Connection, CurvatureAndTorsionAreTensorial) {
  for (const std::string key : {"quantum_plane", "nc_torus", "eq2"}) {
    const CatalogEntry c = build_entry(key);
    const VerificationReport r = check_tensoriality(as_operator(*c.connection), {60, 5});
    EXPECT_TRUE(r.passed()) << key << "\n" << r.to_text();
  }
}

TEST(Connection, NonTensorialOperatorIsCaught) {
  // Drops the coefficients of the first argument.
  const CatalogEntry c = build_quantum_plane();
  const Connection triv = Connection::trivial("C", c.pair);
  CovariantOperator op{c.pair, [&](const Section& u, const Section& v) {
                         Section out = Section::zero(c.pair);
                         for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
                           if (!u.coeff(k).is_zero()) out += nabla(triv, Section::basis(c.pair, k), v);
                         }
                         return out;
                       }};
  const VerificationReport r = check_tensoriality(op, {60, 5});
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.find("tensor.torsion")->status, Status::Fail);
}

TEST(Connection, NablaLeibniz) {
  // nabla_u(f v) = a_u(f) v + rho(|u|,|f|) f nabla_u v
  const CatalogEntry c = build_eq2();
  SampleSource src(17);
  for (int k = 0; k < 100; ++k) {
    const Section u = random_section(src, c.pair);
    const Section v = random_section(src, c.pair);
    const Element f = src.homogeneous(c.algebra);
    const Section lhs = nabla(*c.connection, u, f * v);
    const Section rhs =
        anchor_of(u).apply(f) * v + c.algebra->rho_coefficient(*u.degree(), *f.degree()) * (f * nabla(*c.connection, u, v));
    ASSERT_EQ(lhs, rhs);
  }
}

TEST(Tensor, LieDerivativeOfMetric) {
  const CatalogEntry c = build_quantum_plane();
  EXPECT_TRUE(is_killing(Section::basis(c.pair, 1), *c.metric));
  EXPECT_TRUE(is_killing(Section::basis(c.pair, 0), *c.metric));
  const Section ydy = gen(c.algebra, "y") * Section::basis(c.pair, 1);
  EXPECT_TRUE(is_killing(ydy, *c.metric));
  const Section xdy = gen(c.algebra, "x") * Section::basis(c.pair, 1);
  // [x Dy, Dx] = -x Dy and G vanishes on Dy.
  const TensorValue t = lie_derivative_metric(xdy, *c.metric);
  EXPECT_TRUE(t.is_zero());
  const Section xdx = gen(c.algebra, "x") * Section::basis(c.pair, 0);
  const TensorValue s = lie_derivative_metric(xdx, *c.metric);
  ASSERT_FALSE(s.is_zero());
  EXPECT_EQ(s.at({0, 0}), gen(c.algebra, "x") + gen(c.algebra, "x"));
}
