#pragma once

// Presented rho-commutative algebras: graded generators, optionally
// invertible, with g*h = rho(|g|,|h|) h*g for every pair and g*g = 0 when
// rho(|g|,|g|) = -1. Elements are kept in normal form: generators in
// declaration order with collected exponents.

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rhocarroll/coefficients.hpp"
#include "rhocarroll/grading.hpp"

namespace rhoc {

struct GeneratorSpec {
  std::string name;
  Degree degree;
  bool invertible = false;
  // Forced on when rho(|g|,|g|) = -1.
  bool square_zero = false;
};

struct Monomial {
  std::vector<int> exponents;

  bool is_one() const;
  friend bool operator==(const Monomial&, const Monomial&) = default;
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// A word letter: generator index raised to a (possibly negative) power.
using WordLetter = std::pair<std::size_t, int>;
using Word = std::vector<WordLetter>;

class Presentation;
using PresentationPtr = std::shared_ptr<const Presentation>;

class Presentation {
 public:
  Presentation(std::string name, CommutationFactor factor, ParameterSpacePtr params,
               std::vector<GeneratorSpec> generators, bool integral_domain);

  static PresentationPtr make(std::string name, CommutationFactor factor, ParameterSpacePtr params,
                              std::vector<GeneratorSpec> generators, bool integral_domain) {
    return std::make_shared<const Presentation>(std::move(name), std::move(factor), std::move(params),
                                                std::move(generators), integral_domain);
  }

  const std::string& name() const { return name_; }
  const CommutationFactor& factor() const { return factor_; }
  const GradeGroup& group() const { return factor_.group(); }
  const ParameterSpacePtr& params() const { return params_; }
  const std::vector<GeneratorSpec>& generators() const { return generators_; }
  std::size_t size() const { return generators_.size(); }
  const GeneratorSpec& generator(std::size_t i) const { return generators_.at(i); }
  std::optional<std::size_t> generator_index(const std::string& name) const;
  bool integral_domain() const { return integral_domain_; }

  RhoValue rho(const Degree& a, const Degree& b) const { return factor_(a, b); }
  Laurent rho_coefficient(const Degree& a, const Degree& b) const {
    return factor_(a, b).to_coefficient(params_);
  }
  Laurent scalar(const GaussianRational& c) const { return Laurent::constant(params_, c); }

  Degree degree_of(const Monomial& m) const;
  Monomial one() const { return Monomial{std::vector<int>(generators_.size(), 0)}; }

  // Product of two normal-form monomials: nullopt when a square-zero
  // generator collides, otherwise the normal form and the accumulated rho.
  std::optional<std::pair<Monomial, RhoValue>> multiply(const Monomial& a, const Monomial& b) const;

  // Throws NegativePowerOfNonInvertible / InvalidPresentation.
  void validate(const Monomial& m) const;

 private:
  std::string name_;
  CommutationFactor factor_;
  ParameterSpacePtr params_;
  std::vector<GeneratorSpec> generators_;
  bool integral_domain_;
  // swap_[j][i] = rho(|g_j|, |g_i|), used when g_j^a must pass g_i^b.
  std::vector<std::vector<RhoValue>> swap_;
};

class Element {
 public:
  using TermMap = std::map<Monomial, Laurent>;

  explicit Element(PresentationPtr algebra);

  static Element zero(PresentationPtr a) { return Element(std::move(a)); }
  static Element one(PresentationPtr a);
  static Element scalar(PresentationPtr a, const Laurent& c);
  static Element generator(PresentationPtr a, std::size_t index, int power = 1);
  static Element monomial(PresentationPtr a, Monomial m, const Laurent& c = Laurent(1));

  const PresentationPtr& presentation() const { return algebra_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  // Common degree of all terms; nullopt when inhomogeneous. The zero element
  // reports the zero degree.
  std::optional<Degree> degree() const;
  std::map<Degree, Element> homogeneous_components() const;
  // Single-term pieces c*m; each one is homogeneous.
  std::vector<Element> atoms() const;

  bool is_scalar() const;
  // Constant in Q(i) with no parameter dependence.
  bool is_field_scalar() const;
  // Inverse when this is c*m with c a unit and every generator of m
  // invertible; nullopt otherwise.
  std::optional<Element> unit_inverse() const;

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Laurent& c, const Element& a);
  friend bool operator==(const Element& a, const Element& b);

  Element pow(int k) const;

  // Element grammar: "3/2*i*q^-2*x^2*y^-1 + u*v", "(1 + q)*x".
  std::string to_string() const;

  void add_term(const Monomial& m, const Laurent& c);

 private:
  void check_same(const Element& o) const;

  PresentationPtr algebra_;
  TermMap terms_;
};

// Normal form of a word of generator powers.
Element normalize(const PresentationPtr& algebra, const Word& word);

// f*g - rho(|f|,|g|)*g*f, extended bilinearly over homogeneous components.
Element rho_commutator(const Element& f, const Element& g);

// Common degree or nullopt ("Inhomogeneous").
std::optional<Degree> degree_of(const Element& f);

std::string render_monomial(const Presentation& p, const Monomial& m);

}  // namespace rhoc
