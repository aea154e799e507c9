#include "rhocarroll/algebra.hpp"

#include <algorithm>
#include <set>

namespace rhoc {

bool Monomial::is_one() const {
  return std::all_of(exponents.begin(), exponents.end(), [](int e) { return e == 0; });
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(std::string name, CommutationFactor factor, ParameterSpacePtr params,
                           std::vector<GeneratorSpec> generators, bool integral_domain)
    : name_(std::move(name)),
      factor_(std::move(factor)),
      params_(params ? std::move(params) : ParameterSpace::make({})),
      generators_(std::move(generators)),
      integral_domain_(integral_domain) {
  if (factor_.uses_q() && params_->size() == 0) {
    throw Error(ErrorCode::InvalidPresentation, "commutation factor uses q but no parameter is declared");
  }
  std::set<std::string> seen;
  for (auto& g : generators_) {
    if (g.name.empty()) throw Error(ErrorCode::InvalidPresentation, "generator without a name");
    if (!seen.insert(g.name).second) {
      throw Error(ErrorCode::InvalidPresentation, "duplicate generator '" + g.name + "'");
    }
    if (g.name == "i" || params_->index_of(g.name) >= 0) {
      throw Error(ErrorCode::InvalidPresentation, "generator name '" + g.name + "' is reserved");
    }
    // Re-anchor the degree in this group; throws on a rank mismatch.
    g.degree = Degree(group(), g.degree.components());
    const RhoValue self = factor_(g.degree, g.degree);
    if (self.q_power != 0) {
      throw Error(ErrorCode::InvalidPresentation, "rho(|" + g.name + "|,|" + g.name + "|) is not +-1");
    }
    if (self.negative) g.square_zero = true;
    if (g.square_zero && g.invertible) {
      throw Error(ErrorCode::InvalidPresentation, "square-zero generator '" + g.name + "' cannot be invertible");
    }
  }
  const std::size_t n = generators_.size();
  swap_.assign(n, std::vector<RhoValue>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) swap_[j][i] = factor_(generators_[j].degree, generators_[i].degree);
  }
}

std::optional<std::size_t> Presentation::generator_index(const std::string& name) const {
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    if (generators_[i].name == name) return i;
  }
  return std::nullopt;
}

Degree Presentation::degree_of(const Monomial& m) const {
  Degree d = Degree::zero(group());
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] != 0) d = d + generators_[i].degree.scaled(m.exponents[i]);
  }
  return d;
}

void Presentation::validate(const Monomial& m) const {
  if (m.exponents.size() != generators_.size()) {
    throw Error(ErrorCode::InvalidPresentation, "monomial length does not match presentation '" + name_ + "'");
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const int e = m.exponents[i];
    if (e < 0 && !generators_[i].invertible) {
      throw Error(ErrorCode::NegativePowerOfNonInvertible,
                  "negative power of non-invertible generator '" + generators_[i].name + "'");
    }
  }
}

std::optional<std::pair<Monomial, RhoValue>> Presentation::multiply(const Monomial& a, const Monomial& b) const {
  const std::size_t n = generators_.size();
  Monomial out{std::vector<int>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const int e = a.exponents[i] + b.exponents[i];
    if (generators_[i].square_zero && e > 1) return std::nullopt;
    out.exponents[i] = e;
  }
  RhoValue coeff;
  // Every g_i^{b_i} of the right factor moves left past each g_j^{a_j} with j > i.
  for (std::size_t i = 0; i < n; ++i) {
    if (b.exponents[i] == 0) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (a.exponents[j] == 0) continue;
      coeff = coeff * swap_[j][i].pow(static_cast<long>(a.exponents[j]) * b.exponents[i]);
    }
  }
  return std::make_pair(std::move(out), coeff);
}

// ---------------------------------------------------------------------------
// Element

Element::Element(PresentationPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw Error(ErrorCode::PresentationMismatch, "element without a presentation");
}

Element Element::one(PresentationPtr a) {
  Monomial m = a->one();
  return monomial(std::move(a), std::move(m));
}

Element Element::scalar(PresentationPtr a, const Laurent& c) {
  Monomial m = a->one();
  return monomial(std::move(a), std::move(m), c);
}

Element Element::generator(PresentationPtr a, std::size_t index, int power) {
  if (index >= a->size()) throw Error(ErrorCode::UnknownName, "generator index out of range");
  Word w{{index, power}};
  return normalize(a, w);
}

Element Element::monomial(PresentationPtr a, Monomial m, const Laurent& c) {
  a->validate(m);
  Element out(std::move(a));
  out.add_term(m, c);
  return out;
}

void Element::add_term(const Monomial& m, const Laurent& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    // Coefficients always carry the presentation's parameter space.
    terms_.emplace(m, Laurent::constant(algebra_->params(), 0) + c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

void Element::check_same(const Element& o) const {
  if (algebra_ != o.algebra_) {
    throw Error(ErrorCode::PresentationMismatch, "elements of different presentations ('" + algebra_->name() +
                                                     "' and '" + o.algebra_->name() + "')");
  }
}

std::optional<Degree> Element::degree() const {
  if (terms_.empty()) return Degree::zero(algebra_->group());
  std::optional<Degree> d;
  for (const auto& [m, c] : terms_) {
    Degree dm = algebra_->degree_of(m);
    if (!d) {
      d = dm;
    } else if (*d != dm) {
      return std::nullopt;
    }
  }
  return d;
}

std::map<Degree, Element> Element::homogeneous_components() const {
  std::map<Degree, Element> out;
  for (const auto& [m, c] : terms_) {
    auto [it, inserted] = out.try_emplace(algebra_->degree_of(m), algebra_);
    it->second.add_term(m, c);
  }
  return out;
}

std::vector<Element> Element::atoms() const {
  std::vector<Element> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    Element e(algebra_);
    e.add_term(m, c);
    out.push_back(std::move(e));
  }
  return out;
}

bool Element::is_scalar() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

bool Element::is_field_scalar() const {
  return is_scalar() && (terms_.empty() || terms_.begin()->second.is_constant());
}

std::optional<Element> Element::unit_inverse() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [m, c] = *terms_.begin();
  if (!c.is_unit()) return std::nullopt;
  Monomial inv{std::vector<int>(m.exponents.size())};
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    if (m.exponents[i] != 0 && !algebra_->generator(i).invertible) return std::nullopt;
    inv.exponents[i] = -m.exponents[i];
  }
  auto prod = algebra_->multiply(m, inv);
  if (!prod) return std::nullopt;
  Laurent r = prod->second.inverse().to_coefficient(algebra_->params());
  return monomial(algebra_, inv, c.inverse() * r);
}

Element Element::operator-() const {
  Element out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

Element& Element::operator+=(const Element& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  a.check_same(b);
  Element out(a.algebra_);
  const auto& params = a.algebra_->params();
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      auto prod = a.algebra_->multiply(ma, mb);
      if (!prod) continue;
      Laurent c = ca * cb;
      if (!prod->second.is_one()) c = c * prod->second.to_coefficient(params);
      out.add_term(prod->first, c);
    }
  }
  return out;
}

Element operator*(const Laurent& c, const Element& a) {
  Element out(a.algebra_);
  if (c.is_zero()) return out;
  for (const auto& [m, ca] : a.terms_) out.add_term(m, c * ca);
  return out;
}

bool operator==(const Element& a, const Element& b) { return (a - b).is_zero(); }

Element Element::pow(int k) const {
  if (k < 0) {
    auto inv = unit_inverse();
    if (!inv) throw Error(ErrorCode::NotAUnit, "negative power of non-unit element '" + to_string() + "'");
    return inv->pow(-k);
  }
  Element out = one(algebra_);
  for (int i = 0; i < k; ++i) out = out * *this;
  return out;
}

std::string render_monomial(const Presentation& p, const Monomial& m) {
  std::string out;
  for (std::size_t i = 0; i < m.exponents.size(); ++i) {
    const int e = m.exponents[i];
    if (e == 0) continue;
    if (!out.empty()) out += "*";
    out += p.generator(i).name;
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    const std::string ms = render_monomial(*algebra_, m);
    std::string term;
    if (ms.empty()) {
      term = c.to_string();
    } else if (c.is_one()) {
      term = ms;
    } else if (c == Laurent(-1)) {
      term = "-" + ms;
    } else if (c.needs_parens()) {
      term = "(" + c.to_string() + ")*" + ms;
    } else {
      term = c.to_string() + "*" + ms;
    }
    if (out.empty()) {
      out = term;
    } else if (term.front() == '-') {
      out += " - " + term.substr(1);
    } else {
      out += " + " + term;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

Element normalize(const PresentationPtr& algebra, const Word& word) {
  Element out = Element::one(algebra);
  const std::size_t n = algebra->size();
  for (const auto& [index, power] : word) {
    if (index >= n) throw Error(ErrorCode::UnknownName, "generator index out of range");
    const auto& g = algebra->generator(index);
    if (power < 0 && !g.invertible) {
      throw Error(ErrorCode::NegativePowerOfNonInvertible, "negative power of non-invertible generator '" +
                                                               g.name + "'");
    }
    if (g.square_zero && power > 1) return Element(algebra);
    Monomial m{std::vector<int>(n, 0)};
    m.exponents[index] = power;
    Element letter(algebra);
    letter.add_term(m, Laurent(1));
    out = out * letter;
  }
  return out;
}

Element rho_commutator(const Element& f, const Element& g) {
  const auto& alg = f.presentation();
  Element out(alg);
  for (const auto& [df, fc] : f.homogeneous_components()) {
    for (const auto& [dg, gc] : g.homogeneous_components()) {
      out += fc * gc - alg->rho_coefficient(df, dg) * (gc * fc);
    }
  }
  return out;
}

std::optional<Degree> degree_of(const Element& f) { return f.degree(); }

}  // namespace rhoc
