#include "rhocarroll/rinehart.hpp"

#include <algorithm>

#include "rhocarroll/parallel.hpp"

namespace rhoc {

// ---------------------------------------------------------------------------
// Section

Section::Section(PairPtr pair, std::vector<Element> coeffs) : pair_(std::move(pair)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != pair_->size()) {
    throw Error(ErrorCode::ShapeMismatch, "section needs one coefficient per basis section of '" + pair_->name() + "'");
  }
  for (const auto& c : coeffs_) {
    if (c.presentation() != pair_->algebra()) {
      throw Error(ErrorCode::PresentationMismatch, "section coefficient outside the algebra of '" + pair_->name() + "'");
    }
  }
}

Section Section::zero(const PairPtr& pair) {
  return Section(pair, std::vector<Element>(pair->size(), Element(pair->algebra())));
}

Section Section::basis(const PairPtr& pair, std::size_t k) {
  Section out = zero(pair);
  out.coeffs_.at(k) = Element::one(pair->algebra());
  return out;
}

bool Section::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Element& c) { return c.is_zero(); });
}

std::map<Degree, Section> Section::homogeneous_components() const {
  std::map<Degree, Section> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    for (const auto& [d, comp] : coeffs_[k].homogeneous_components()) {
      auto [it, inserted] = out.try_emplace(d + pair_->basis_section(k).degree, zero(pair_));
      it->second.coeffs_[k] += comp;
    }
  }
  return out;
}

std::optional<Degree> Section::degree() const {
  auto comps = homogeneous_components();
  if (comps.empty()) return Degree::zero(pair_->algebra()->group());
  if (comps.size() != 1) return std::nullopt;
  return comps.begin()->first;
}

std::vector<Section> Section::atoms() const {
  std::vector<Section> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    for (auto& atom : coeffs_[k].atoms()) {
      Section s = zero(pair_);
      s.coeffs_[k] = std::move(atom);
      out.push_back(std::move(s));
    }
  }
  return out;
}

void Section::check_same(const Section& o) const {
  if (pair_ != o.pair_) {
    throw Error(ErrorCode::PairMismatch, "sections of different pairs ('" + pair_->name() + "' and '" +
                                             o.pair_->name() + "')");
  }
}

Section Section::operator-() const {
  Section out = *this;
  for (auto& c : out.coeffs_) c = -c;
  return out;
}

Section& Section::operator+=(const Section& o) {
  check_same(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

Section& Section::operator-=(const Section& o) {
  check_same(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

Section operator*(const Element& f, const Section& u) {
  Section out = u;
  for (auto& c : out.coeffs_) c = f * c;
  return out;
}

Section operator*(const Laurent& c, const Section& u) {
  Section out = u;
  for (auto& x : out.coeffs_) x = c * x;
  return out;
}

bool operator==(const Section& a, const Section& b) { return a.pair_ == b.pair_ && (a - b).is_zero(); }

std::string Section::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Element& c = coeffs_[k];
    if (c.is_zero()) continue;
    const std::string& sym = pair_->basis_section(k).name;
    const std::string cs = c.to_string();
    std::string term;
    if (cs == "1") {
      term = sym;
    } else if (cs == "-1") {
      term = "-" + sym;
    } else if (c.size() > 1) {
      term = "(" + cs + ")*" + sym;
    } else {
      term = cs + "*" + sym;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------------------
// LieRinehartPair

LieRinehartPair::LieRinehartPair(std::string name, DerivationBasisPtr derivations, std::vector<BasisSection> basis,
                                 std::vector<DerivationCombo> anchors, StructureTable structure)
    : name_(std::move(name)),
      algebra_(derivations->presentation()),
      derivations_(std::move(derivations)),
      basis_(std::move(basis)),
      anchors_(std::move(anchors)),
      structure_(std::move(structure)) {
  const std::size_t n = basis_.size();
  for (std::size_t k = 0; k < n; ++k) {
    basis_[k].degree = Degree(algebra_->group(), basis_[k].degree.components());
    for (std::size_t j = 0; j < k; ++j) {
      if (basis_[j].name == basis_[k].name) {
        throw Error(ErrorCode::InvalidPresentation, "duplicate basis section '" + basis_[k].name + "'");
      }
    }
  }
  if (anchors_.size() != n) throw Error(ErrorCode::ShapeMismatch, "pair '" + name_ + "' needs one anchor per section");
  for (const auto& a : anchors_) {
    if (a.basis() != derivations_) {
      throw Error(ErrorCode::PairMismatch, "anchor of pair '" + name_ + "' uses another derivation basis");
    }
  }
  if (structure_.size() != n) throw Error(ErrorCode::ShapeMismatch, "structure table of '" + name_ + "' is not square");
  for (const auto& row : structure_) {
    if (row.size() != n) throw Error(ErrorCode::ShapeMismatch, "structure table of '" + name_ + "' is not square");
    for (const auto& entry : row) {
      if (entry.size() != n) {
        throw Error(ErrorCode::ShapeMismatch, "structure entry of '" + name_ + "' has the wrong length");
      }
      for (const auto& c : entry) {
        if (c.presentation() != algebra_) {
          throw Error(ErrorCode::PresentationMismatch, "structure coefficient outside the algebra");
        }
      }
    }
  }
}

LieRinehartPair::StructureTable LieRinehartPair::abelian(const PresentationPtr& alg, std::size_t n) {
  return StructureTable(n, std::vector<std::vector<Element>>(n, std::vector<Element>(n, Element(alg))));
}

std::optional<std::size_t> LieRinehartPair::basis_index(const std::string& name) const {
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (basis_[k].name == name) return k;
  }
  return std::nullopt;
}

Section LieRinehartPair::structure_section(std::size_t a, std::size_t b) const {
  return Section(ptr(), structure_.at(a).at(b));
}

// ---------------------------------------------------------------------------

DerivationCombo anchor_of(const Section& u) {
  const auto& pair = u.pair();
  DerivationCombo out = DerivationCombo::zero(pair->derivations());
  for (std::size_t k = 0; k < pair->size(); ++k) {
    if (!u.coeff(k).is_zero()) out += u.coeff(k) * pair->anchor(k);
  }
  return out;
}

bool is_isotropic(const Section& u) { return anchor_of(u).action().is_zero(); }

namespace {

struct Atom {
  std::size_t index;
  Element coeff;
  Degree coeff_degree;
};

std::vector<Atom> split(const Section& u) {
  std::vector<Atom> out;
  for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
    for (auto& a : u.coeff(k).atoms()) {
      Degree d = *a.degree();
      out.push_back({k, std::move(a), std::move(d)});
    }
  }
  return out;
}

// [f e_a, g e_b] = f a_a(g) e_b + rho(|f e_a|,|g|) g ( -rho(|f e_a|,|e_b|) a_b(f) e_a + f c_ab ).
Section bracket_atoms(const PairPtr& pair, const Atom& u, const Atom& v) {
  const auto& alg = pair->algebra();
  const Degree& da = pair->basis_section(u.index).degree;
  const Degree& db = pair->basis_section(v.index).degree;
  const Degree du = u.coeff_degree + da;
  Section out = Section::zero(pair);
  const Element ag = pair->anchor(u.index).apply(v.coeff);
  if (!ag.is_zero()) {
    std::vector<Element> c(pair->size(), Element(alg));
    c[v.index] = u.coeff * ag;
    out += Section(pair, std::move(c));
  }
  Section inner = u.coeff * Section(pair, pair->structure()[u.index][v.index]);
  const Element bf = pair->anchor(v.index).apply(u.coeff);
  if (!bf.is_zero()) {
    std::vector<Element> c(pair->size(), Element(alg));
    c[u.index] = -(alg->rho_coefficient(du, db) * bf);
    inner += Section(pair, std::move(c));
  }
  if (!inner.is_zero()) out += alg->rho_coefficient(du, v.coeff_degree) * (v.coeff * inner);
  return out;
}

}  // namespace

Section bracket(const Section& u, const Section& v) {
  if (u.pair() != v.pair()) throw Error(ErrorCode::PairMismatch, "bracket of sections of different pairs");
  const auto& pair = u.pair();
  Section out = Section::zero(pair);
  const auto us = split(u);
  const auto vs = split(v);
  for (const auto& a : us) {
    for (const auto& b : vs) out += bracket_atoms(pair, a, b);
  }
  return out;
}

Section random_section(SampleSource& src, const PairPtr& pair) {
  const auto& alg = pair->algebra();
  const std::size_t n = pair->size();
  const auto k0 = static_cast<std::size_t>(src.uniform(0, static_cast<int>(n) - 1));
  Section out = Section::zero(pair);
  std::vector<Element> c(n, Element(alg));
  c[k0] = src.homogeneous(alg);
  const Degree total = *c[k0].degree() + pair->basis_section(k0).degree;
  if (n > 1 && src.coin()) {
    auto k1 = static_cast<std::size_t>(src.uniform(0, static_cast<int>(n) - 2));
    if (k1 >= k0) ++k1;
    c[k1] = src.homogeneous_of(alg, total - pair->basis_section(k1).degree);
  }
  return Section(pair, std::move(c));
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::string paren(const Laurent& c) { return c.needs_parens() ? "(" + c.to_string() + ")" : c.to_string(); }

Degree degree_or_zero(const Section& s) {
  auto d = s.degree();
  return d ? *d : Degree::zero(s.pair()->algebra()->group());
}

// First generator where two actions differ, with the difference there.
std::optional<std::pair<std::size_t, Element>> first_difference(const ActionTable& a, const ActionTable& b) {
  for (std::size_t j = 0; j < a.values().size(); ++j) {
    Element d = a.values()[j] - b.values()[j];
    if (!d.is_zero()) return std::make_pair(j, std::move(d));
  }
  return std::nullopt;
}

Section jacobi_residual(const Section& u, const Section& v, const Section& w) {
  const auto& alg = u.pair()->algebra();
  const Laurent r = alg->rho_coefficient(degree_or_zero(u), degree_or_zero(v));
  return bracket(u, bracket(v, w)) - bracket(bracket(u, v), w) - r * bracket(v, bracket(u, w));
}

struct Sample {
  Section u, v, w;
  Element f;
};

struct SampleResidual {
  Section skew;
  std::optional<std::pair<std::size_t, Element>> anchor;
  Section jacobi;
  Section leibniz;
};

}  // namespace

VerificationReport verify_pair(const PairPtr& pair, const PairCheckOptions& opts) {
  VerificationReport report;
  const auto& alg = pair->algebra();
  const std::string& target = pair->name();
  const std::size_t n = pair->size();
  auto e = [&](std::size_t k) { return Section::basis(pair, k); };
  auto nm = [&](std::size_t k) { return pair->basis_section(k).name; };
  auto deg = [&](std::size_t k) { return pair->basis_section(k).degree; };

  bool ok = true;
  for (std::size_t a = 0; a < n && ok; ++a) {
    for (std::size_t b = 0; b < n && ok; ++b) {
      const Section c = pair->structure_section(a, b);
      if (c.is_zero()) continue;
      auto d = c.degree();
      if (!d || *d != deg(a) + deg(b)) {
        ok = false;
        report.fail("pair.structure_degree", target, c.to_string(),
                    "[" + nm(a) + "," + nm(b) + "] should have degree " + (deg(a) + deg(b)).to_string());
      }
    }
  }
  if (ok) report.pass("pair.structure_degree", target);

  ok = true;
  for (std::size_t a = 0; a < n && ok; ++a) {
    for (std::size_t b = a; b < n && ok; ++b) {
      const Laurent r = alg->rho_coefficient(deg(b), deg(a));
      Section res = pair->structure_section(b, a) + r * pair->structure_section(a, b);
      if (!res.is_zero()) {
        ok = false;
        report.fail("pair.skew", target, res.to_string(),
                    "[" + nm(b) + "," + nm(a) + "] + " + paren(r) + "*[" + nm(a) + "," + nm(b) + "]");
      }
    }
  }
  const bool table_skew = ok;

  ok = true;
  for (std::size_t a = 0; a < n && ok; ++a) {
    const auto& x = pair->anchor(a);
    if (x.is_zero()) continue;
    auto d = x.degree();
    if (!d || *d != deg(a)) {
      ok = false;
      report.fail("pair.anchor_degree", target, x.to_string(),
                  "anchor of " + nm(a) + " should have degree " + deg(a).to_string());
    }
  }
  if (ok) report.pass("pair.anchor_degree", target);

  bool hom_ok = true;
  for (std::size_t a = 0; a < n && hom_ok; ++a) {
    for (std::size_t b = 0; b < n && hom_ok; ++b) {
      const ActionTable lhs = anchor_of(pair->structure_section(a, b)).action();
      const ActionTable rhs = der_commutator(pair->anchor(a), pair->anchor(b));
      if (auto diff = first_difference(lhs, rhs)) {
        hom_ok = false;
        report.fail("pair.anchor_hom", target, diff->second.to_string(),
                    "a_[" + nm(a) + "," + nm(b) + "](" + alg->generator(diff->first).name + ") - [a_" + nm(a) +
                        ",a_" + nm(b) + "](" + alg->generator(diff->first).name + ")");
      }
    }
  }

  bool jac_ok = true;
  for (std::size_t a = 0; a < n && jac_ok; ++a) {
    for (std::size_t b = 0; b < n && jac_ok; ++b) {
      for (std::size_t c = 0; c < n && jac_ok; ++c) {
        Section res = jacobi_residual(e(a), e(b), e(c));
        if (!res.is_zero()) {
          jac_ok = false;
          report.fail("pair.jacobi", target, res.to_string(),
                      "Jacobi on (" + nm(a) + "," + nm(b) + "," + nm(c) + ")");
        }
      }
    }
  }

  // Randomized pass over coefficiented sections.
  SampleSource src(opts.seed);
  std::vector<Sample> samples;
  samples.reserve(opts.samples);
  for (std::size_t k = 0; k < opts.samples; ++k) {
    Section u = random_section(src, pair);
    Section v = random_section(src, pair);
    Section w = random_section(src, pair);
    Element f = src.homogeneous(alg);
    samples.push_back({std::move(u), std::move(v), std::move(w), std::move(f)});
  }
  const auto residuals = map_samples(samples, [&](const Sample& s) {
    const Degree du = degree_or_zero(s.u), dv = degree_or_zero(s.v);
    const Section uv = bracket(s.u, s.v);
    SampleResidual r{uv + alg->rho_coefficient(du, dv) * bracket(s.v, s.u), std::nullopt,
                     jacobi_residual(s.u, s.v, s.w), Section::zero(s.u.pair())};
    r.anchor = first_difference(anchor_of(uv).action(), der_commutator(anchor_of(s.u), anchor_of(s.v)));
    const Degree df = *s.f.degree();
    r.leibniz = bracket(s.u, s.f * s.v) - anchor_of(s.u).apply(s.f) * s.v -
                alg->rho_coefficient(du, df) * (s.f * uv);
    return r;
  });

  const std::string sampled = std::to_string(opts.samples) + " samples";
  auto sample_text = [&](std::size_t k) {
    const auto& s = samples[k];
    return "u=" + s.u.to_string() + ", v=" + s.v.to_string() + ", w=" + s.w.to_string() + ", f=" + s.f.to_string();
  };
  bool skew_ok = table_skew, leib_ok = true;
  for (std::size_t k = 0; k < residuals.size(); ++k) {
    const auto& r = residuals[k];
    if (skew_ok && !r.skew.is_zero()) {
      skew_ok = false;
      report.fail("pair.skew", target, r.skew.to_string(), "[u,v] + rho(|u|,|v|)[v,u] at " + sample_text(k));
    }
    if (hom_ok && r.anchor) {
      hom_ok = false;
      report.fail("pair.anchor_hom", target, r.anchor->second.to_string(),
                  "a_[u,v] - [a_u,a_v] on " + alg->generator(r.anchor->first).name + " at " + sample_text(k));
    }
    if (jac_ok && !r.jacobi.is_zero()) {
      jac_ok = false;
      report.fail("pair.jacobi", target, r.jacobi.to_string(), "Jacobi at " + sample_text(k));
    }
    if (leib_ok && !r.leibniz.is_zero()) {
      leib_ok = false;
      report.fail("pair.leibniz", target, r.leibniz.to_string(),
                  "[u,f v] - a_u(f) v - rho(|u|,|f|) f [u,v] at " + sample_text(k));
    }
  }
  if (skew_ok) report.pass("pair.skew", target, sampled);
  if (hom_ok) report.pass("pair.anchor_hom", target, sampled);
  if (jac_ok) report.pass("pair.jacobi", target, sampled);
  if (leib_ok) report.pass("pair.leibniz", target, sampled);
  return report;
}

VerificationReport check_morphism(const std::vector<Section>& phi, const PairPtr& from, const PairPtr& to,
                                  const PairCheckOptions& opts) {
  if (phi.size() != from->size()) {
    throw Error(ErrorCode::ShapeMismatch, "morphism needs one image per basis section of '" + from->name() + "'");
  }
  if (from->algebra() != to->algebra()) {
    throw Error(ErrorCode::PresentationMismatch, "morphism between pairs over different algebras");
  }
  for (const auto& s : phi) {
    if (s.pair() != to) throw Error(ErrorCode::PairMismatch, "morphism image outside '" + to->name() + "'");
  }
  const auto& alg = from->algebra();
  const std::string target = from->name() + " -> " + to->name();
  auto apply_phi = [&](const Section& u) {
    Section out = Section::zero(to);
    for (std::size_t k = 0; k < u.coeffs().size(); ++k) {
      if (!u.coeff(k).is_zero()) out += u.coeff(k) * phi[k];
    }
    return out;
  };
  VerificationReport report;
  bool ok = true;
  for (std::size_t k = 0; k < phi.size() && ok; ++k) {
    if (phi[k].is_zero()) continue;
    auto d = phi[k].degree();
    if (!d || *d != from->basis_section(k).degree) {
      ok = false;
      report.fail("morphism.degree", target, phi[k].to_string(),
                  "image of " + from->basis_section(k).name + " should have degree " +
                      from->basis_section(k).degree.to_string());
    }
  }
  if (ok) report.pass("morphism.degree", target);

  std::vector<Section> probes;
  for (std::size_t k = 0; k < from->size(); ++k) probes.push_back(Section::basis(from, k));
  SampleSource src(opts.seed);
  for (std::size_t k = 0; k < opts.samples; ++k) probes.push_back(random_section(src, from));

  bool anchor_ok = true;
  for (const auto& u : probes) {
    auto diff = first_difference(anchor_of(u).action(), anchor_of(apply_phi(u)).action());
    if (diff) {
      anchor_ok = false;
      report.fail("morphism.anchor", target, diff->second.to_string(),
                  "a_u - a'_phi(u) on " + alg->generator(diff->first).name + " at u=" + u.to_string());
      break;
    }
  }
  if (anchor_ok) report.pass("morphism.anchor", target);

  bool bracket_ok = true;
  const std::size_t nb = from->size();
  for (std::size_t a = 0; a < probes.size() && bracket_ok; ++a) {
    // Basis pairs exhaustively, samples pairwise along the diagonal.
    const std::size_t lo = a < nb ? 0 : a;
    const std::size_t hi = a < nb ? nb : std::min(probes.size(), a + 2);
    for (std::size_t b = lo; b < hi && bracket_ok; ++b) {
      const Section& u = probes[a];
      const Section& v = probes[b];
      Section res = apply_phi(bracket(u, v)) - bracket(apply_phi(u), apply_phi(v));
      if (!res.is_zero()) {
        bracket_ok = false;
        report.fail("morphism.bracket", target, res.to_string(),
                    "phi([u,v]) - [phi(u),phi(v)] at u=" + u.to_string() + ", v=" + v.to_string());
      }
    }
  }
  if (bracket_ok) report.pass("morphism.bracket", target);
  return report;
}

}  // namespace rhoc
