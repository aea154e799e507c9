#include "rhocarroll/builtins.hpp"

#include <algorithm>

namespace rhoc {

const RhoDerivation* CatalogEntry::derivation(const std::string& name) const {
  for (const auto& d : derivations) {
    if (d.name() == name) return &d;
  }
  return nullptr;
}

namespace {

const IntMatrix kPlaneForm{{0, 1}, {-1, 0}};

Degree deg(const GradeGroup& g, std::vector<int> c) { return Degree(g, std::move(c)); }

ActionTable table_of(const RhoDerivation& d) { return ActionTable(d.presentation(), d.action()); }

// x -> c * x for one generator, 0 elsewhere; degree zero.
RhoDerivation scaling(const PresentationPtr& alg, std::size_t gen, const Laurent& c, std::string name) {
  std::vector<Element> action(alg->size(), Element(alg));
  action[gen] = c * Element::generator(alg, gen);
  return RhoDerivation(alg, std::move(name), Degree::zero(alg->group()), std::move(action));
}

ElementMatrix scalar_matrix(const PresentationPtr& alg, const std::vector<std::vector<long>>& m) {
  ElementMatrix out;
  for (const auto& row : m) {
    std::vector<Element> r;
    for (long v : row) r.push_back(Element::scalar(alg, alg->scalar(GaussianRational(v))));
    out.push_back(std::move(r));
  }
  return out;
}

void check_built(const CatalogEntry& e) {
  const VerificationReport r = verify_entry(e, PairCheckOptions{0, 1});
  if (const CheckResult* f = r.first_failure()) {
    throw Error(ErrorCode::InvalidPresentation,
                "catalog entry '" + e.key + "' fails " + f->check + " on " + f->target + ": " + f->detail);
  }
}

CatalogEntry finish(CatalogEntry e) {
  check_built(e);
  return e;
}

Laurent rebase(const Laurent& c, const ParameterSpacePtr& to) {
  Laurent out = Laurent::constant(to, 0);
  const auto& from = c.space();
  for (const auto& [exps, value] : c.terms()) {
    Laurent::Exponents e(to ? to->size() : 0, 0);
    for (std::size_t k = 0; k < exps.size(); ++k) {
      if (exps[k] == 0) continue;
      const int idx = to ? to->index_of(from->names()[k]) : -1;
      if (idx < 0) throw Error(ErrorCode::ParameterMismatch, "parameter '" + from->names()[k] + "' is not available");
      e[static_cast<std::size_t>(idx)] = exps[k];
    }
    out += Laurent::monomial(to, std::move(e), value);
  }
  return out;
}

Element lift(const Element& f, const PresentationPtr& to, std::size_t offset) {
  Element out(to);
  for (const auto& [m, c] : f.terms()) {
    Monomial lifted = to->one();
    std::copy(m.exponents.begin(), m.exponents.end(), lifted.exponents.begin() + static_cast<long>(offset));
    out.add_term(lifted, rebase(c, to->params()));
  }
  return out;
}

RhoDerivation lift(const RhoDerivation& d, const PresentationPtr& to, std::size_t offset) {
  std::vector<Element> action(to->size(), Element(to));
  for (std::size_t j = 0; j < d.action().size(); ++j) action[offset + j] = lift(d.action()[j], to, offset);
  return RhoDerivation(to, d.name(), Degree(to->group(), d.degree().components()), std::move(action));
}

}  // namespace

PairPtr tangent_pair(std::string name, const DerivationBasisPtr& basis) {
  const auto& alg = basis->presentation();
  const std::size_t n = basis->size();
  std::vector<BasisSection> sections;
  std::vector<DerivationCombo> anchors;
  for (std::size_t k = 0; k < n; ++k) {
    sections.push_back({basis->at(k).name(), basis->at(k).degree()});
    anchors.push_back(DerivationCombo::basis_element(basis, k));
  }
  LieRinehartPair::StructureTable structure = LieRinehartPair::abelian(alg, n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const ActionTable c = der_commutator(table_of(basis->at(a)), table_of(basis->at(b)));
      auto coeffs = basis->decompose(c);
      if (!coeffs) {
        throw Error(ErrorCode::ShapeMismatch, "[" + basis->at(a).name() + "," + basis->at(b).name() +
                                                  "] is not in the span of the basis");
      }
      structure[a][b] = std::move(*coeffs);
    }
  }
  return LieRinehartPair::make(std::move(name), basis, std::move(sections), std::move(anchors),
                               std::move(structure));
}

CatalogEntry build_quantum_plane() {
  const GradeGroup z2(2, 0);
  auto params = ParameterSpace::make({"q"});
  auto alg = Presentation::make("quantum_plane", CommutationFactor(z2, kPlaneForm, {{0, 0}, {0, 0}}), params,
                                {{"x", deg(z2, {1, 0}), true}, {"y", deg(z2, {0, 1}), true}}, true);
  CatalogEntry e;
  e.key = "quantum_plane";
  e.notes = "K_q[x^{+-1}, y^{+-1}] with xy = q yx; sigma = Dy; Carroll connection nabla_Dx Dx = Dy";
  e.algebra = alg;
  RhoDerivation dx = RhoDerivation::coordinate(alg, 0, "dx");
  RhoDerivation dy = RhoDerivation::coordinate(alg, 1, "dy");
  RhoDerivation big_dx = scaling(alg, 0, Laurent(1), "Dx");
  RhoDerivation big_dy = scaling(alg, 1, Laurent(1), "Dy");
  e.derivations = {dx, dy, big_dx, big_dy};
  e.derivation_basis = std::make_shared<const DerivationBasis>(alg, std::vector<RhoDerivation>{big_dx, big_dy});
  e.pair = tangent_pair("QP", e.derivation_basis);
  e.metric = Metric("G", e.pair, scalar_matrix(alg, {{1, 0}, {0, 0}}));
  e.connection = Connection::trivial("C", e.pair).with(0, 0, Section::basis(e.pair, 1));
  e.carroll = make_carroll("QPC", *e.metric, Section::basis(e.pair, 1));
  return finish(std::move(e));
}

CatalogEntry build_nc_torus(bool explicit_tau) {
  const GradeGroup z2(2, 0);
  auto params = explicit_tau ? ParameterSpace::make({"q", "tau"}) : ParameterSpace::make({"q"});
  auto alg = Presentation::make("nc_torus", CommutationFactor(z2, kPlaneForm, {{0, 0}, {0, 0}}), params,
                                {{"u", deg(z2, {1, 0}), true}, {"v", deg(z2, {0, 1}), true}}, true);
  const Laurent scale = explicit_tau ? Laurent::parameter(params, 1, 1, GaussianRational::i()) : Laurent(1);
  CatalogEntry e;
  e.key = explicit_tau ? "nc_torus_tau" : "nc_torus";
  e.notes = explicit_tau ? "noncommutative torus, Du = i*tau*u*du with tau = 2*pi; sigma = eu"
                         : "noncommutative torus, Du = u*du (factor 2*pi*i absorbed); sigma = eu";
  e.algebra = alg;
  RhoDerivation du = scaling(alg, 0, scale, "Du");
  RhoDerivation dv = scaling(alg, 1, scale, "Dv");
  e.derivations = {RhoDerivation::coordinate(alg, 0, "du"), RhoDerivation::coordinate(alg, 1, "dv"), du, dv};
  e.derivation_basis = std::make_shared<const DerivationBasis>(alg, std::vector<RhoDerivation>{du, dv});
  const Degree zero = Degree::zero(z2);
  e.pair = LieRinehartPair::make("T", e.derivation_basis, {{"eu", zero}, {"ev", zero}},
                                 {DerivationCombo::basis_element(e.derivation_basis, 0),
                                  DerivationCombo::basis_element(e.derivation_basis, 1)},
                                 LieRinehartPair::abelian(alg, 2));
  e.metric = Metric("G", e.pair, scalar_matrix(alg, {{0, 0}, {0, 1}}));
  e.auxiliary_metric = Metric("H", e.pair, scalar_matrix(alg, {{1, 0}, {0, 1}}));
  e.connection = Connection::trivial("C", e.pair);
  e.carroll = make_carroll("TC", *e.metric, Section::basis(e.pair, 0));
  return finish(std::move(e));
}

CatalogEntry build_r22_super() {
  const GradeGroup z2(0, 1);
  auto alg = Presentation::make("r22_super", CommutationFactor(z2, {{0}}, {{1}}), nullptr,
                                {{"x", deg(z2, {0})},
                                 {"y", deg(z2, {0})},
                                 {"theta1", deg(z2, {1})},
                                 {"theta2", deg(z2, {1})}},
                                false);
  CatalogEntry e;
  e.key = "r22_super";
  e.notes = "superdomain R^{2|2} with polynomial coefficients in x, y; sigma = dx";
  e.algebra = alg;
  for (std::size_t k = 0; k < alg->size(); ++k) {
    const std::string n = alg->generator(k).name;
    e.derivations.push_back(RhoDerivation::coordinate(alg, k, "d" + (n.rfind("theta", 0) == 0 ? "th" + n.substr(5) : n)));
  }
  e.derivation_basis = std::make_shared<const DerivationBasis>(alg, e.derivations);
  e.pair = tangent_pair("R22", e.derivation_basis);
  e.metric = Metric("G", e.pair, scalar_matrix(alg, {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}));
  e.connection = Connection::trivial("C", e.pair);
  e.carroll = make_carroll("R22C", *e.metric, Section::basis(e.pair, 0));
  return finish(std::move(e));
}

CatalogEntry build_z22() {
  const GradeGroup g(0, 2);
  auto alg = Presentation::make("z22", CommutationFactor(g, {{0, 0}, {0, 0}}, {{1, 0}, {0, 1}}), nullptr,
                                {{"x", deg(g, {0, 0})},
                                 {"z", deg(g, {1, 1})},
                                 {"xi1", deg(g, {0, 1})},
                                 {"xi2", deg(g, {0, 1})},
                                 {"theta1", deg(g, {1, 0})},
                                 {"theta2", deg(g, {1, 0})}},
                                false);
  CatalogEntry e;
  e.key = "z22";
  e.notes = "Z2^2-domain R^{1|1,2,2} with polynomial coefficients in x; sigma = dx";
  e.algebra = alg;
  const std::vector<std::string> names{"dx", "dz", "dxi1", "dxi2", "dth1", "dth2"};
  for (std::size_t k = 0; k < alg->size(); ++k) e.derivations.push_back(RhoDerivation::coordinate(alg, k, names[k]));
  e.derivation_basis = std::make_shared<const DerivationBasis>(alg, e.derivations);
  e.pair = tangent_pair("Z22", e.derivation_basis);
  e.metric = Metric("G", e.pair,
                    scalar_matrix(alg, {{0, 0, 0, 0, 0, 0},
                                        {0, 1, 0, 0, 0, 0},
                                        {0, 0, 0, 1, 0, 0},
                                        {0, 0, -1, 0, 0, 0},
                                        {0, 0, 0, 0, 0, 1},
                                        {0, 0, 0, 0, -1, 0}}));
  e.connection = Connection::trivial("C", e.pair);
  e.carroll = make_carroll("Z22C", *e.metric, Section::basis(e.pair, 0));
  return finish(std::move(e));
}

CatalogEntry build_affine_line(const CommutationFactor& factor, const ParameterSpacePtr& params) {
  auto alg = Presentation::make("affine_line", factor, params, {{"s", Degree::zero(factor.group())}}, true);
  CatalogEntry e;
  e.key = "affine_line";
  e.notes = "K[s] in degree zero with the zero metric; sigma = ds";
  e.algebra = alg;
  e.derivations = {RhoDerivation::coordinate(alg, 0, "ds")};
  e.derivation_basis = std::make_shared<const DerivationBasis>(alg, e.derivations);
  e.pair = tangent_pair("L", e.derivation_basis);
  e.metric = Metric::zero("G", e.pair);
  e.connection = Connection::trivial("C", e.pair);
  e.carroll = make_carroll("LC", *e.metric, Section::basis(e.pair, 0));
  return finish(std::move(e));
}

CatalogEntry build_tensor_product(const CatalogEntry& a, const CatalogEntry& b) {
  if (!(a.algebra->factor() == b.algebra->factor())) {
    throw Error(ErrorCode::FactorIncompatible, "'" + a.key + "' and '" + b.key + "' use different commutation factors");
  }
  const GradeGroup& group = a.algebra->group();
  if (b.carroll) {
    const Degree zero = Degree::zero(group);
    for (const auto& g : b.algebra->generators()) {
      if (g.degree != zero) {
        throw Error(ErrorCode::FactorIncompatible, "'" + b.key + "' is not concentrated in degree zero");
      }
    }
  }
  std::vector<GeneratorSpec> gens = a.algebra->generators();
  for (const auto& g : b.algebra->generators()) {
    if (a.algebra->generator_index(g.name)) {
      throw Error(ErrorCode::InvalidPresentation, "generator '" + g.name + "' occurs in both factors");
    }
    gens.push_back(g);
  }
  auto alg = Presentation::make(a.algebra->name() + "*" + b.algebra->name(), a.algebra->factor(),
                                a.algebra->params(), std::move(gens),
                                a.algebra->integral_domain() && b.algebra->integral_domain());
  const std::size_t off = a.algebra->size();

  CatalogEntry e;
  e.key = a.key + "_x_" + b.key;
  e.notes = "tensor product of " + a.key + " and " + b.key + "; metric G_a (+) 0; sigma = 1 (x) sigma_b";
  e.algebra = alg;
  for (const auto& d : a.derivations) e.derivations.push_back(lift(d, alg, 0));
  for (const auto& d : b.derivations) e.derivations.push_back(lift(d, alg, off));

  std::vector<RhoDerivation> basis;
  for (const auto& d : a.derivation_basis->derivations()) basis.push_back(lift(d, alg, 0));
  for (const auto& d : b.derivation_basis->derivations()) basis.push_back(lift(d, alg, off));
  e.derivation_basis = std::make_shared<const DerivationBasis>(alg, std::move(basis));
  const std::size_t na = a.derivation_basis->size();

  const std::size_t pa = a.pair->size();
  const std::size_t n = pa + b.pair->size();
  std::vector<BasisSection> sections;
  std::vector<DerivationCombo> anchors;
  auto lift_combo = [&](const DerivationCombo& c, std::size_t from, std::size_t algebra_offset) {
    std::vector<Element> coeffs(e.derivation_basis->size(), Element(alg));
    for (std::size_t k = 0; k < c.coeffs().size(); ++k) coeffs[from + k] = lift(c.coeffs()[k], alg, algebra_offset);
    return DerivationCombo(e.derivation_basis, std::move(coeffs));
  };
  for (std::size_t k = 0; k < pa; ++k) {
    sections.push_back({a.pair->basis_section(k).name, a.pair->basis_section(k).degree});
    anchors.push_back(lift_combo(a.pair->anchor(k), 0, 0));
  }
  for (std::size_t k = 0; k < b.pair->size(); ++k) {
    sections.push_back({b.pair->basis_section(k).name, b.pair->basis_section(k).degree});
    anchors.push_back(lift_combo(b.pair->anchor(k), na, off));
  }
  LieRinehartPair::StructureTable structure = LieRinehartPair::abelian(alg, n);
  for (std::size_t x = 0; x < pa; ++x) {
    for (std::size_t y = 0; y < pa; ++y) {
      for (std::size_t k = 0; k < pa; ++k) structure[x][y][k] = lift(a.pair->structure()[x][y][k], alg, 0);
    }
  }
  for (std::size_t x = 0; x < b.pair->size(); ++x) {
    for (std::size_t y = 0; y < b.pair->size(); ++y) {
      for (std::size_t k = 0; k < b.pair->size(); ++k) {
        structure[pa + x][pa + y][pa + k] = lift(b.pair->structure()[x][y][k], alg, off);
      }
    }
  }
  e.pair = LieRinehartPair::make(a.pair->name() + "*" + b.pair->name(), e.derivation_basis, std::move(sections),
                                 std::move(anchors), std::move(structure));

  const Metric& ga = a.auxiliary_metric ? *a.auxiliary_metric : *a.metric;
  ElementMatrix m(n, std::vector<Element>(n, Element(alg)));
  for (std::size_t x = 0; x < pa; ++x) {
    for (std::size_t y = 0; y < pa; ++y) m[x][y] = lift(ga.entry(x, y), alg, 0);
  }
  e.metric = Metric("G", e.pair, std::move(m));
  e.connection = Connection::trivial("C", e.pair);
  if (b.carroll) {
    std::vector<Element> coeffs(n, Element(alg));
    for (std::size_t k = 0; k < b.pair->size(); ++k) coeffs[pa + k] = lift(b.carroll->sigma.coeff(k), alg, off);
    e.carroll = make_carroll(a.key + "_x_" + b.key, *e.metric, Section(e.pair, std::move(coeffs)));
  }
  return finish(std::move(e));
}

CatalogEntry build_eq2() {
  const GradeGroup z2(2, 0);
  auto params = ParameterSpace::make({"q"});
  auto alg = Presentation::make("eq2", CommutationFactor(z2, {{0, -2}, {2, 0}}, {{0, 0}, {0, 0}}), params,
                                {{"v", deg(z2, {-1, 1}), true}, {"t", deg(z2, {0, 1})}, {"tbar", deg(z2, {1, 0})}},
                                true);
  CatalogEntry e;
  e.key = "eq2";
  e.notes = "quantum Euclidean group E_q(2), vbar = v^-1; pair, metric and connection completed after the torus";
  e.algebra = alg;
  RhoDerivation dv = scaling(alg, 0, Laurent(1), "Dv");
  RhoDerivation dvbar = scaling(alg, 0, Laurent(-1), "Dvbar");
  RhoDerivation dt = scaling(alg, 1, Laurent(1), "Dt");
  e.derivations = {dv, dvbar, dt};
  e.derivation_basis = std::make_shared<const DerivationBasis>(alg, std::vector<RhoDerivation>{dv, dt});
  const Degree zero = Degree::zero(z2);
  e.pair = LieRinehartPair::make("E", e.derivation_basis, {{"ev", zero}, {"et", zero}},
                                 {DerivationCombo::basis_element(e.derivation_basis, 0),
                                  DerivationCombo::basis_element(e.derivation_basis, 1)},
                                 LieRinehartPair::abelian(alg, 2));
  e.metric = Metric("G", e.pair, scalar_matrix(alg, {{0, 0}, {0, 1}}));
  e.auxiliary_metric = Metric("H", e.pair, scalar_matrix(alg, {{1, 0}, {0, 1}}));
  e.connection = Connection::trivial("C", e.pair);
  e.carroll = make_carroll("EC", *e.metric, Section::basis(e.pair, 0));
  return finish(std::move(e));
}

std::vector<std::string> catalog_keys() {
  return {"quantum_plane", "nc_torus", "nc_torus_tau", "r22_super", "z22", "affine_line", "torus_x_line", "eq2"};
}

CatalogEntry build_entry(const std::string& key) {
  if (key == "quantum_plane") return build_quantum_plane();
  if (key == "nc_torus") return build_nc_torus(false);
  if (key == "nc_torus_tau") return build_nc_torus(true);
  if (key == "r22_super") return build_r22_super();
  if (key == "z22") return build_z22();
  if (key == "affine_line" || key == "torus_x_line") {
    const CatalogEntry torus = build_nc_torus(false);
    CatalogEntry line = build_affine_line(torus.algebra->factor(), torus.algebra->params());
    if (key == "affine_line") return line;
    CatalogEntry e = build_tensor_product(torus, line);
    e.key = "torus_x_line";
    return e;
  }
  if (key == "eq2") return build_eq2();
  throw Error(ErrorCode::UnknownName, "no catalog entry '" + key + "'");
}

VerificationReport verify_entry(const CatalogEntry& e, const PairCheckOptions& opts) {
  VerificationReport r;
  r.append(check_commutation_axioms(e.algebra->factor(), std::max<std::size_t>(opts.samples, 20), opts.seed));
  for (const auto& d : e.derivations) r.append(verify_derivation(d));
  r.append(verify_pair(e.pair, opts));
  if (e.metric) r.append(check_metric(*e.metric));
  if (e.auxiliary_metric) r.append(check_metric(*e.auxiliary_metric));
  if (e.connection) r.append(check_connection(*e.connection));
  if (e.carroll) r.append(verify_carroll(*e.carroll, opts));
  return r;
}

}  // namespace rhoc
