#include "rhocarroll/derivation.hpp"

#include <algorithm>
#include <cstdlib>

namespace rhoc {

namespace {

void check_length(const PresentationPtr& alg, std::size_t n, const std::string& what) {
  if (n != alg->size()) {
    throw Error(ErrorCode::ShapeMismatch, what + " needs one value per generator of '" + alg->name() + "'");
  }
}

Element letter(const PresentationPtr& alg, std::size_t index, int sign) {
  Monomial m = alg->one();
  m.exponents[index] = sign;
  Element e(alg);
  e.add_term(m, Laurent(1));
  return e;
}

}  // namespace

// ---------------------------------------------------------------------------
// RhoDerivation

RhoDerivation::RhoDerivation(PresentationPtr algebra, std::string name, Degree degree, std::vector<Element> action)
    : algebra_(std::move(algebra)), name_(std::move(name)), degree_(std::move(degree)), action_(std::move(action)) {
  check_length(algebra_, action_.size(), "derivation '" + name_ + "'");
  degree_ = Degree(algebra_->group(), degree_.components());
  for (const auto& v : action_) {
    if (v.presentation() != algebra_) {
      throw Error(ErrorCode::PresentationMismatch, "derivation '" + name_ + "' has a value outside its algebra");
    }
  }
}

RhoDerivation RhoDerivation::coordinate(const PresentationPtr& algebra, std::size_t generator, std::string name) {
  const auto& g = algebra->generator(generator);
  if (name.empty()) name = "d" + g.name;
  std::vector<Element> action(algebra->size(), Element(algebra));
  action[generator] = Element::one(algebra);
  return RhoDerivation(algebra, std::move(name), -g.degree, std::move(action));
}

RhoDerivation RhoDerivation::renamed(std::string name) const {
  RhoDerivation out = *this;
  out.name_ = std::move(name);
  return out;
}

Element RhoDerivation::on_letter(std::size_t generator, int sign) const {
  const Element& xg = action_.at(generator);
  if (sign > 0) return xg;
  if (xg.is_zero()) return xg;
  const Element inv = letter(algebra_, generator, -1);
  const Laurent r = algebra_->rho(degree_, algebra_->generator(generator).degree).inverse().to_coefficient(
      algebra_->params());
  return -(r * (inv * xg * inv));
}

Element RhoDerivation::apply_letters(const std::vector<std::pair<std::size_t, int>>& letters) const {
  const std::size_t n = letters.size();
  Element out(algebra_);
  if (n == 0) return out;
  std::vector<Element> suffix(n + 1, Element::one(algebra_));
  for (std::size_t k = n; k-- > 0;) suffix[k] = letter(algebra_, letters[k].first, letters[k].second) * suffix[k + 1];
  Element prefix = Element::one(algebra_);
  Degree prefix_degree = Degree::zero(algebra_->group());
  for (std::size_t k = 0; k < n; ++k) {
    const auto [index, sign] = letters[k];
    Element xl = on_letter(index, sign);
    if (!xl.is_zero() && !prefix.is_zero()) {
      const Laurent r = algebra_->rho_coefficient(degree_, prefix_degree);
      out += r * (prefix * xl * suffix[k + 1]);
    }
    prefix = prefix * letter(algebra_, index, sign);
    prefix_degree = prefix_degree + algebra_->generator(index).degree.scaled(sign);
  }
  return out;
}

Element RhoDerivation::apply_word(const Word& word) const {
  std::vector<std::pair<std::size_t, int>> letters;
  for (const auto& [index, power] : word) {
    if (index >= algebra_->size()) throw Error(ErrorCode::UnknownName, "generator index out of range");
    const int sign = power < 0 ? -1 : 1;
    for (int k = 0; k < std::abs(power); ++k) letters.emplace_back(index, sign);
  }
  return apply_letters(letters);
}

Element RhoDerivation::apply(const Element& f) const {
  if (f.presentation() != algebra_) {
    throw Error(ErrorCode::PresentationMismatch, "derivation '" + name_ + "' applied outside its algebra");
  }
  Element out(algebra_);
  for (const auto& [m, c] : f.terms()) {
    Word w;
    for (std::size_t i = 0; i < m.exponents.size(); ++i) {
      if (m.exponents[i] != 0) w.emplace_back(i, m.exponents[i]);
    }
    out += c * apply_word(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ActionTable

ActionTable::ActionTable(PresentationPtr algebra, std::vector<Element> values)
    : algebra_(std::move(algebra)), values_(std::move(values)) {
  check_length(algebra_, values_.size(), "action table");
}

ActionTable ActionTable::zero(const PresentationPtr& algebra) {
  return ActionTable(algebra, std::vector<Element>(algebra->size(), Element(algebra)));
}

std::vector<RhoDerivation> ActionTable::homogeneous_parts() const {
  std::map<Degree, std::vector<Element>> parts;
  for (std::size_t j = 0; j < values_.size(); ++j) {
    const Degree& dg = algebra_->generator(j).degree;
    for (const auto& [d, comp] : values_[j].homogeneous_components()) {
      auto [it, inserted] = parts.try_emplace(d - dg, algebra_->size(), Element(algebra_));
      it->second[j] += comp;
    }
  }
  std::vector<RhoDerivation> out;
  for (auto& [d, vals] : parts) out.emplace_back(algebra_, "", d, std::move(vals));
  return out;
}

Element ActionTable::apply(const Element& f) const {
  Element out(algebra_);
  for (const auto& x : homogeneous_parts()) out += x.apply(f);
  return out;
}

bool ActionTable::is_zero() const {
  return std::all_of(values_.begin(), values_.end(), [](const Element& e) { return e.is_zero(); });
}

std::optional<Degree> ActionTable::degree() const {
  auto parts = homogeneous_parts();
  if (parts.size() != 1) return std::nullopt;
  return parts.front().degree();
}

ActionTable& ActionTable::operator+=(const ActionTable& o) {
  if (algebra_ != o.algebra_) throw Error(ErrorCode::PresentationMismatch, "action tables of different algebras");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] += o.values_[j];
  return *this;
}

ActionTable& ActionTable::operator-=(const ActionTable& o) {
  if (algebra_ != o.algebra_) throw Error(ErrorCode::PresentationMismatch, "action tables of different algebras");
  for (std::size_t j = 0; j < values_.size(); ++j) values_[j] -= o.values_[j];
  return *this;
}

ActionTable operator*(const Element& f, const ActionTable& x) {
  ActionTable out = x;
  for (auto& v : out.values_) v = f * v;
  return out;
}

ActionTable operator*(const Laurent& c, const ActionTable& x) {
  ActionTable out = x;
  for (auto& v : out.values_) v = c * v;
  return out;
}

bool operator==(const ActionTable& a, const ActionTable& b) {
  if (a.algebra_ != b.algebra_) return false;
  return (a - b).is_zero();
}

std::string ActionTable::to_string() const {
  std::string out = "{";
  for (std::size_t j = 0; j < values_.size(); ++j) {
    if (j) out += ", ";
    out += algebra_->generator(j).name + " -> " + values_[j].to_string();
  }
  return out + "}";
}

// ---------------------------------------------------------------------------
// DerivationBasis

DerivationBasis::DerivationBasis(PresentationPtr algebra, std::vector<RhoDerivation> derivations)
    : algebra_(std::move(algebra)), derivations_(std::move(derivations)) {
  for (const auto& x : derivations_) {
    if (x.presentation() != algebra_) {
      throw Error(ErrorCode::PresentationMismatch, "derivation '" + x.name() + "' belongs to another algebra");
    }
  }
  const std::size_t n = algebra_->size();
  if (derivations_.size() != n) return;
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    std::optional<std::size_t> mover;
    for (std::size_t k = 0; k < n; ++k) {
      if (derivations_[k].action()[j].is_zero()) continue;
      if (mover) return;
      mover = k;
    }
    if (!mover || used[*mover]) return;
    auto inv = derivations_[*mover].action()[j].unit_inverse();
    if (!inv) return;
    used[*mover] = true;
    pivots_.emplace_back(*mover, std::move(*inv));
  }
  decomposable_ = true;
}

std::optional<std::size_t> DerivationBasis::index_of(const std::string& name) const {
  for (std::size_t k = 0; k < derivations_.size(); ++k) {
    if (derivations_[k].name() == name) return k;
  }
  return std::nullopt;
}

std::optional<std::vector<Element>> DerivationBasis::decompose(const ActionTable& table) const {
  if (!decomposable_ || table.presentation() != algebra_) return std::nullopt;
  std::vector<Element> coeffs(derivations_.size(), Element(algebra_));
  for (std::size_t j = 0; j < pivots_.size(); ++j) {
    const auto& [k, inv] = pivots_[j];
    coeffs[k] = table.values()[j] * inv;
  }
  return coeffs;
}

// ---------------------------------------------------------------------------
// DerivationCombo

DerivationCombo::DerivationCombo(DerivationBasisPtr basis, std::vector<Element> coeffs)
    : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != basis_->size()) {
    throw Error(ErrorCode::ShapeMismatch, "derivation combo needs one coefficient per basis derivation");
  }
  for (const auto& c : coeffs_) {
    if (c.presentation() != basis_->presentation()) {
      throw Error(ErrorCode::PresentationMismatch, "derivation combo coefficient outside the algebra");
    }
  }
}

DerivationCombo DerivationCombo::zero(const DerivationBasisPtr& basis) {
  return DerivationCombo(basis, std::vector<Element>(basis->size(), Element(basis->presentation())));
}

DerivationCombo DerivationCombo::basis_element(const DerivationBasisPtr& basis, std::size_t k) {
  DerivationCombo out = zero(basis);
  out.coeffs_.at(k) = Element::one(basis->presentation());
  return out;
}

DerivationCombo DerivationCombo::from_action(const DerivationBasisPtr& basis, const ActionTable& table) {
  auto coeffs = basis->decompose(table);
  if (!coeffs) {
    throw Error(ErrorCode::ShapeMismatch, "action " + table.to_string() + " is not expressible in the basis");
  }
  return DerivationCombo(basis, std::move(*coeffs));
}

Element DerivationCombo::apply(const Element& f) const {
  Element out(basis_->presentation());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    out += coeffs_[k] * basis_->at(k).apply(f);
  }
  return out;
}

ActionTable DerivationCombo::action() const {
  const auto& alg = basis_->presentation();
  ActionTable out = ActionTable::zero(alg);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k].is_zero()) continue;
    out += coeffs_[k] * ActionTable(alg, basis_->at(k).action());
  }
  return out;
}

std::map<Degree, DerivationCombo> DerivationCombo::homogeneous_components() const {
  std::map<Degree, DerivationCombo> out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    for (const auto& [d, comp] : coeffs_[k].homogeneous_components()) {
      auto [it, inserted] = out.try_emplace(d + basis_->at(k).degree(), zero(basis_));
      it->second.coeffs_[k] += comp;
    }
  }
  return out;
}

std::optional<Degree> DerivationCombo::degree() const {
  auto comps = homogeneous_components();
  if (comps.empty()) return Degree::zero(basis_->presentation()->group());
  if (comps.size() != 1) return std::nullopt;
  return comps.begin()->first;
}

void DerivationCombo::check_same(const DerivationCombo& o) const {
  if (basis_ != o.basis_) throw Error(ErrorCode::PairMismatch, "derivation combos over different bases");
}

DerivationCombo& DerivationCombo::operator+=(const DerivationCombo& o) {
  check_same(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  return *this;
}

DerivationCombo& DerivationCombo::operator-=(const DerivationCombo& o) {
  check_same(o);
  for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  return *this;
}

DerivationCombo operator*(const Element& f, const DerivationCombo& x) {
  DerivationCombo out = x;
  for (auto& c : out.coeffs_) c = f * c;
  return out;
}

bool operator==(const DerivationCombo& a, const DerivationCombo& b) { return a.action() == b.action(); }

namespace {

std::string combo_term(const Element& c, const std::string& symbol) {
  if (c.is_zero()) return {};
  const std::string cs = c.to_string();
  if (cs == "1") return symbol;
  if (cs == "-1") return "-" + symbol;
  if (c.size() > 1) return "(" + cs + ")*" + symbol;
  return cs + "*" + symbol;
}

}  // namespace

std::string DerivationCombo::to_string() const {
  std::string out;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const std::string term = combo_term(coeffs_[k], basis_->at(k).name());
    if (term.empty()) continue;
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

ActionTable der_commutator(const ActionTable& x, const ActionTable& y) {
  const auto& alg = x.presentation();
  if (alg != y.presentation()) throw Error(ErrorCode::PresentationMismatch, "commutator across algebras");
  std::vector<Element> values(alg->size(), Element(alg));
  const auto xs = x.homogeneous_parts();
  const auto ys = y.homogeneous_parts();
  for (const auto& xd : xs) {
    for (const auto& ye : ys) {
      const Laurent r = alg->rho_coefficient(xd.degree(), ye.degree());
      for (std::size_t j = 0; j < alg->size(); ++j) {
        values[j] += xd.apply(ye.action()[j]) - r * ye.apply(xd.action()[j]);
      }
    }
  }
  return ActionTable(alg, std::move(values));
}

ActionTable der_commutator(const DerivationCombo& x, const DerivationCombo& y) {
  return der_commutator(x.action(), y.action());
}

VerificationReport verify_derivation(const RhoDerivation& x) {
  VerificationReport report;
  const auto& alg = x.presentation();
  const std::string& target = x.name();
  const std::size_t n = alg->size();

  bool degree_ok = true;
  for (std::size_t j = 0; j < n && degree_ok; ++j) {
    const Element& v = x.action()[j];
    if (v.is_zero()) continue;
    const Degree expected = x.degree() + alg->generator(j).degree;
    for (const auto& [d, comp] : v.homogeneous_components()) {
      if (d == expected) continue;
      report.fail("derivation.degree", target, comp.to_string(),
                  target + "(" + alg->generator(j).name + ") has a term of degree " + d.to_string() + ", expected " +
                      expected.to_string());
      degree_ok = false;
      break;
    }
  }
  if (degree_ok) report.pass("derivation.degree", target);

  // Every relation r = 0 of the presentation must give X(r) = 0.
  auto relation = [&](const Word& lhs, const Word& rhs, const Laurent& c, const std::string& text) -> bool {
    Element v = x.apply_word(lhs) - c * x.apply_word(rhs);
    if (v.is_zero()) return true;
    report.fail("derivation.relation", target, v.to_string(), target + "(" + text + ")");
    return false;
  };
  bool rel_ok = true;
  for (std::size_t j = 0; j < n && rel_ok; ++j) {
    const auto& gj = alg->generator(j);
    for (std::size_t i = 0; i < j && rel_ok; ++i) {
      const auto& gi = alg->generator(i);
      const Laurent r = alg->rho_coefficient(gj.degree, gi.degree);
      const std::string rs = r.needs_parens() ? "(" + r.to_string() + ")" : r.to_string();
      rel_ok = relation({{j, 1}, {i, 1}}, {{i, 1}, {j, 1}}, r,
                        gj.name + "*" + gi.name + " - " + rs + "*" + gi.name + "*" + gj.name);
    }
    if (!rel_ok) break;
    const Laurent none(0);
    if (gj.invertible) {
      rel_ok = relation({{j, 1}, {j, -1}}, {}, none, gj.name + "*" + gj.name + "^-1 - 1") &&
               relation({{j, -1}, {j, 1}}, {}, none, gj.name + "^-1*" + gj.name + " - 1");
    }
    if (rel_ok && gj.square_zero) rel_ok = relation({{j, 1}, {j, 1}}, {}, none, gj.name + "*" + gj.name);
  }
  if (rel_ok) report.pass("derivation.relation", target);
  return report;
}

}  // namespace rhoc
