#pragma once

// rho-derivations stored by their action on generators and extended to all
// of the algebra by X(fg) = X(f) g + rho(|X|,|f|) f X(g).

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rhocarroll/algebra.hpp"
#include "rhocarroll/report.hpp"

namespace rhoc {

class RhoDerivation {
 public:
  RhoDerivation(PresentationPtr algebra, std::string name, Degree degree, std::vector<Element> action);

  // d/dg: g -> 1, every other generator -> 0, degree -|g|.
  static RhoDerivation coordinate(const PresentationPtr& algebra, std::size_t generator, std::string name = {});

  const PresentationPtr& presentation() const { return algebra_; }
  const std::string& name() const { return name_; }
  const Degree& degree() const { return degree_; }
  const std::vector<Element>& action() const { return action_; }

  // X(g) for sign > 0, X(g^{-1}) = -rho(|X|,|g|)^{-1} g^{-1} X(g) g^{-1} otherwise.
  Element on_letter(std::size_t generator, int sign) const;
  Element apply(const Element& f) const;
  // Leibniz expansion over the literal word, without normalizing it first.
  Element apply_word(const Word& word) const;

  RhoDerivation renamed(std::string name) const;

 private:
  Element apply_letters(const std::vector<std::pair<std::size_t, int>>& letters) const;

  PresentationPtr algebra_;
  std::string name_;
  Degree degree_;
  std::vector<Element> action_;
};

/// Values on generators of a not necessarily homogeneous derivation.
/// Derivations are determined by these values, so equality of tables is
/// equality of derivations.
class ActionTable {
 public:
  ActionTable(PresentationPtr algebra, std::vector<Element> values);
  static ActionTable zero(const PresentationPtr& algebra);

  const PresentationPtr& presentation() const { return algebra_; }
  const std::vector<Element>& values() const { return values_; }

  std::vector<RhoDerivation> homogeneous_parts() const;
  Element apply(const Element& f) const;
  bool is_zero() const;
  // Degree of the derivation when all nonzero values agree on one; the zero
  // table has no degree.
  std::optional<Degree> degree() const;

  ActionTable& operator+=(const ActionTable& o);
  ActionTable& operator-=(const ActionTable& o);
  friend ActionTable operator+(ActionTable a, const ActionTable& b) { return a += b; }
  friend ActionTable operator-(ActionTable a, const ActionTable& b) { return a -= b; }
  friend ActionTable operator*(const Element& f, const ActionTable& x);
  friend ActionTable operator*(const Laurent& c, const ActionTable& x);
  friend bool operator==(const ActionTable& a, const ActionTable& b);

  // "{x -> 1, y -> 0}"
  std::string to_string() const;

 private:
  PresentationPtr algebra_;
  std::vector<Element> values_;
};

class DerivationCombo;

/// Named generating set for derivation combos. When every generator is
/// moved by exactly one basis derivation, and by a unit, arbitrary action
/// tables can be decomposed back onto the basis.
class DerivationBasis {
 public:
  DerivationBasis(PresentationPtr algebra, std::vector<RhoDerivation> derivations);

  const PresentationPtr& presentation() const { return algebra_; }
  const std::vector<RhoDerivation>& derivations() const { return derivations_; }
  std::size_t size() const { return derivations_.size(); }
  const RhoDerivation& at(std::size_t k) const { return derivations_.at(k); }
  std::optional<std::size_t> index_of(const std::string& name) const;

  bool decomposable() const { return decomposable_; }
  std::optional<std::vector<Element>> decompose(const ActionTable& table) const;

 private:
  PresentationPtr algebra_;
  std::vector<RhoDerivation> derivations_;
  bool decomposable_ = false;
  // For generator j: basis index moving it, and the inverse of X_k(g_j).
  std::vector<std::pair<std::size_t, Element>> pivots_;
};

using DerivationBasisPtr = std::shared_ptr<const DerivationBasis>;

/// Element sum_k c_k X_k of the left module generated by a DerivationBasis,
/// with (f X)(g) = f X(g).
class DerivationCombo {
 public:
  DerivationCombo(DerivationBasisPtr basis, std::vector<Element> coeffs);
  static DerivationCombo zero(const DerivationBasisPtr& basis);
  static DerivationCombo basis_element(const DerivationBasisPtr& basis, std::size_t k);
  // Throws ShapeMismatch when the basis cannot represent the table.
  static DerivationCombo from_action(const DerivationBasisPtr& basis, const ActionTable& table);

  const DerivationBasisPtr& basis() const { return basis_; }
  const std::vector<Element>& coeffs() const { return coeffs_; }

  Element apply(const Element& f) const;
  ActionTable action() const;
  std::optional<Degree> degree() const;
  std::map<Degree, DerivationCombo> homogeneous_components() const;
  bool is_zero() const { return action().is_zero(); }

  DerivationCombo& operator+=(const DerivationCombo& o);
  DerivationCombo& operator-=(const DerivationCombo& o);
  friend DerivationCombo operator+(DerivationCombo a, const DerivationCombo& b) { return a += b; }
  friend DerivationCombo operator-(DerivationCombo a, const DerivationCombo& b) { return a -= b; }
  friend DerivationCombo operator*(const Element& f, const DerivationCombo& x);
  // Equal as derivations (same action on generators).
  friend bool operator==(const DerivationCombo& a, const DerivationCombo& b);

  // "x*dx + y*dy"
  std::string to_string() const;

 private:
  void check_same(const DerivationCombo& o) const;

  DerivationBasisPtr basis_;
  std::vector<Element> coeffs_;
};

// [X,Y] = X o Y - rho(|X|,|Y|) Y o X, evaluated on generators.
ActionTable der_commutator(const ActionTable& x, const ActionTable& y);
ActionTable der_commutator(const DerivationCombo& x, const DerivationCombo& y);

// Degree invariant and consistency with every defining relation.
VerificationReport verify_derivation(const RhoDerivation& x);

}  // namespace rhoc
