#include <gtest/gtest.h>

#include "rhocarroll/builtins.hpp"

using namespace rhoc;

namespace {

Element gen(const PresentationPtr& a, const std::string& n, int p = 1) {
  return Element::generator(a, *a->generator_index(n), p);
}

Laurent rat(const PresentationPtr& a, long n, long d = 1) { return a->scalar(GaussianRational(Rational(n, d))); }

Status status_of(const VerificationReport& r, const std::string& check) {
  const CheckResult* c = r.find(check);
  EXPECT_NE(c, nullptr) << check;
  return c ? c->status : Status::Fail;
}

}  // namespace

TEST(Carroll, GoldenStructuresVerify) {
  for (const std::string key : {"quantum_plane", "nc_torus"}) {
    const CatalogEntry c = build_entry(key);
    const VerificationReport r = verify_carroll(*c.carroll);
    EXPECT_TRUE(r.passed()) << key << "\n" << r.to_text();
    EXPECT_EQ(status_of(r, "carroll.kernel_exact"), Status::Pass) << key;
    EXPECT_EQ(status_of(r, "carroll.kernel_containment"), Status::Pass) << key;
    EXPECT_TRUE(check_stationary(*c.carroll).passed()) << key;
    EXPECT_TRUE(check_involutive(*c.carroll).passed()) << key;
    EXPECT_TRUE(carroll_connection_check(*c.carroll, *c.connection).passed()) << key;
  }
}

TEST(Carroll, QuotientMetricIsOne) {
  for (const std::string key : {"quantum_plane", "nc_torus"}) {
    const CatalogEntry c = build_entry(key);
    const QuotientMetric qm = quotient_metric(*c.carroll);
    ASSERT_EQ(qm.matrix.size(), 1u);
    EXPECT_EQ(qm.matrix[0][0], Element::one(c.algebra)) << key;
    EXPECT_EQ(qm.nondegenerate, Status::Pass);
    EXPECT_TRUE(qm.lift_independent);
  }
}

TEST(Carroll, NoIntegralDomainStaysUncertified) {
  for (const std::string key : {"r22_super", "z22"}) {
    const CatalogEntry c = build_entry(key);
    const VerificationReport r = verify_carroll(*c.carroll);
    EXPECT_TRUE(r.passed()) << key;
    EXPECT_EQ(status_of(r, "carroll.kernel_exact"), Status::Uncertified) << key;
    EXPECT_EQ(carroll_distribution(*c.carroll).classification, Singularity::Uncertified) << key;
  }
}

TEST(Carroll, SigmaOfNonzeroDegree) {
  const CatalogEntry c = build_quantum_plane();
  const CarrollStructure cs = make_carroll("X", *c.metric, gen(c.algebra, "x") * Section::basis(c.pair, 1));
  const VerificationReport r = verify_carroll(cs);
  EXPECT_EQ(status_of(r, "carroll.sigma_degree"), Status::Fail);
}

TEST(Carroll, SigmaOutsideKernel) {
  const CatalogEntry c = build_quantum_plane();
  const CarrollStructure cs = make_carroll("X", *c.metric, Section::basis(c.pair, 0));
  const VerificationReport r = verify_carroll(cs);
  EXPECT_EQ(status_of(r, "carroll.kernel_containment"), Status::Fail);
  EXPECT_EQ(*r.find("carroll.kernel_containment")->witness, "1");
}

TEST(Carroll, NonKillingMetricWitness) {
  // G(Dx,Dx) = y with sigma = Dy: (L_sigma G)(Dx,Dx) = Dy(y) = y.
  const CatalogEntry c = build_quantum_plane();
  const auto& a = c.algebra;
  const Metric g("N", c.pair, {{gen(a, "y"), Element(a)}, {Element(a), Element(a)}});
  const CarrollStructure cs = make_carroll("NC", g, Section::basis(c.pair, 1));
  const VerificationReport r = check_stationary(cs);
  ASSERT_FALSE(r.passed());
  EXPECT_EQ(*r.first_failure()->witness, "y");
  EXPECT_EQ(lie_derivative_metric_at(cs.sigma, g, Section::basis(c.pair, 0), Section::basis(c.pair, 0)),
            gen(a, "y"));
}

TEST(Carroll, StationaryImpliesMultiplesAreKilling) {
  for (const std::string key : {"quantum_plane", "nc_torus"}) {
    const CatalogEntry c = build_entry(key);
    SampleSource src(31);
    for (int k = 0; k < 50; ++k) {
      const Element f = src.homogeneous(c.algebra);
      ASSERT_TRUE(is_killing(f * c.carroll->sigma, *c.metric)) << key << " f=" << f.to_string();
    }
  }
}

TEST(Carroll, KillingSectionsCloseUnderBracket) {
  const CatalogEntry c = build_quantum_plane();
  SampleSource src(41);
  int seen = 0;
  for (int k = 0; k < 100; ++k) {
    const Section u = src.homogeneous(c.algebra) * c.carroll->sigma;
    const Section v = src.homogeneous(c.algebra) * Section::basis(c.pair, src.uniform(0, 1));
    if (!is_killing(u, *c.metric) || !is_killing(v, *c.metric)) continue;
    ++seen;
    const Section w = bracket(u, v);
    for (const auto& [d, part] : w.homogeneous_components()) ASSERT_TRUE(is_killing(part, *c.metric));
  }
  EXPECT_GT(seen, 10);
}

TEST(Distribution, Classification) {
  const CatalogEntry qp = build_quantum_plane();
  const CarrollDistribution d = carroll_distribution(*qp.carroll);
  EXPECT_EQ(d.classification, Singularity::NonSingular);
  EXPECT_EQ(d.generator.to_string(), "Dy");

  // Same data with every anchor zero.
  const auto& a = qp.algebra;
  const auto& basis = qp.derivation_basis;
  const PairPtr dead = LieRinehartPair::make("Z", basis, qp.pair->basis(),
                                             {DerivationCombo::zero(basis), DerivationCombo::zero(basis)},
                                             LieRinehartPair::abelian(a, 2));
  const Metric g("G", dead, qp.metric->matrix());
  const CarrollDistribution s = carroll_distribution(make_carroll("ZC", g, Section::basis(dead, 1)));
  EXPECT_EQ(s.classification, Singularity::Singular);
  ASSERT_TRUE(s.witness);
  EXPECT_EQ(*s.witness, Element::one(a));
}

TEST(Quotient, NeedsAPivot) {
  const CatalogEntry c = build_quantum_plane();
  const CarrollStructure cs = make_carroll("Z", *c.metric, Section::zero(c.pair));
  try {
    (void)quotient_metric(cs);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SigmaNotBasisExtendable);
  }
}

TEST(Flow, ExponentialOfEuler) {
  // flow(Dy, y) = y * sum t^k / k!
  const CatalogEntry c = build_quantum_plane();
  const auto& a = c.algebra;
  const ActionTable dy(a, c.derivation("Dy")->action());
  const FlowSeries s = flow(dy, gen(a, "y"), 6);
  ASSERT_EQ(s.coefficients.size(), 7u);
  long fact = 1;
  for (int k = 0; k <= 6; ++k) {
    if (k) fact *= k;
    EXPECT_EQ(s.coefficients[static_cast<std::size_t>(k)], rat(a, 1, fact) * gen(a, "y")) << k;
  }
  EXPECT_EQ(flow(dy, gen(a, "y"), 3).to_string(), "y*(1 + t + 1/2*t^2 + 1/6*t^3)");
  EXPECT_EQ(flow(dy, gen(a, "x"), 3).to_string(), "x");
}

TEST(Flow, Multiplicative) {
  for (const std::string key : {"quantum_plane", "nc_torus", "eq2"}) {
    const CatalogEntry c = build_entry(key);
    const ActionTable x = anchor_of(c.carroll->sigma).action();
    SampleSource src(51);
    for (int k = 0; k < 50; ++k) {
      const Element f = src.homogeneous(c.algebra) + src.homogeneous(c.algebra);
      const Element g = src.homogeneous(c.algebra);
      ASSERT_EQ(flow(x, f * g, 6), truncated_product(flow(x, f, 6), flow(x, g, 6))) << key;
    }
  }
}

TEST(Flow, Errors) {
  const CatalogEntry c = build_quantum_plane();
  const ActionTable dy(c.algebra, c.derivation("dy")->action());
  try {
    (void)flow(dy, gen(c.algebra, "y"), 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonzeroDegreeFlow);
  }
  EXPECT_THROW((void)flow(ActionTable(c.algebra, c.derivation("Dy")->action()), gen(c.algebra, "y"), -1), Error);
}
