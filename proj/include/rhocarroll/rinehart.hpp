#pragma once

// rho-Lie-Rinehart pairs over a free module of sections with a finite
// named basis.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rhocarroll/derivation.hpp"
#include "rhocarroll/report.hpp"
#include "rhocarroll/sampling.hpp"

namespace rhoc {

struct BasisSection {
  std::string name;
  Degree degree;
};

class LieRinehartPair;
using PairPtr = std::shared_ptr<const LieRinehartPair>;

/// Left-module element sum_k f_k e_k.
class Section {
 public:
  Section(PairPtr pair, std::vector<Element> coeffs);
  static Section zero(const PairPtr& pair);
  static Section basis(const PairPtr& pair, std::size_t k);

  const PairPtr& pair() const { return pair_; }
  const std::vector<Element>& coeffs() const { return coeffs_; }
  const Element& coeff(std::size_t k) const { return coeffs_.at(k); }

  bool is_zero() const;
  // Zero section reports the zero degree; nullopt when inhomogeneous.
  std::optional<Degree> degree() const;
  std::map<Degree, Section> homogeneous_components() const;
  // Single-term pieces c*m*e_k, each homogeneous.
  std::vector<Section> atoms() const;

  Section operator-() const;
  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const Element& f, const Section& u);
  friend Section operator*(const Laurent& c, const Section& u);
  friend bool operator==(const Section& a, const Section& b);

  // "x*e1 + (1 + q)*e2"
  std::string to_string() const;

 private:
  void check_same(const Section& o) const;

  PairPtr pair_;
  std::vector<Element> coeffs_;
};

class LieRinehartPair : public std::enable_shared_from_this<LieRinehartPair> {
 public:
  using StructureTable = std::vector<std::vector<std::vector<Element>>>;

  // structure[a][b] holds the coefficients of [e_a, e_b]. Construction
  // checks shapes only; the axioms are checked by verify_pair.
  LieRinehartPair(std::string name, DerivationBasisPtr derivations, std::vector<BasisSection> basis,
                  std::vector<DerivationCombo> anchors, StructureTable structure);

  static PairPtr make(std::string name, DerivationBasisPtr derivations, std::vector<BasisSection> basis,
                      std::vector<DerivationCombo> anchors, StructureTable structure) {
    return std::make_shared<const LieRinehartPair>(std::move(name), std::move(derivations), std::move(basis),
                                                   std::move(anchors), std::move(structure));
  }
  // Zero structure table.
  static StructureTable abelian(const PresentationPtr& alg, std::size_t n);

  const std::string& name() const { return name_; }
  const PresentationPtr& algebra() const { return algebra_; }
  const DerivationBasisPtr& derivations() const { return derivations_; }
  const std::vector<BasisSection>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  const BasisSection& basis_section(std::size_t k) const { return basis_.at(k); }
  std::optional<std::size_t> basis_index(const std::string& name) const;
  const DerivationCombo& anchor(std::size_t k) const { return anchors_.at(k); }
  const StructureTable& structure() const { return structure_; }
  Section structure_section(std::size_t a, std::size_t b) const;

  PairPtr ptr() const { return shared_from_this(); }

 private:
  std::string name_;
  PresentationPtr algebra_;
  DerivationBasisPtr derivations_;
  std::vector<BasisSection> basis_;
  std::vector<DerivationCombo> anchors_;
  StructureTable structure_;
};

DerivationCombo anchor_of(const Section& u);
Section bracket(const Section& u, const Section& v);
// anchor_of(u) kills every generator.
bool is_isotropic(const Section& u);

// Nonzero random homogeneous section: one or two terms f e_k of one degree.
Section random_section(SampleSource& src, const PairPtr& pair);

struct PairCheckOptions {
  std::size_t samples = 200;
  std::uint64_t seed = 1;
};

// Structure degrees, skewsymmetry, anchor degree, anchor homomorphism and
// rho-Jacobi on all basis tuples; skewsymmetry, anchor homomorphism,
// rho-Jacobi and the Leibniz rule on random coefficiented sections.
VerificationReport verify_pair(const PairPtr& pair, const PairCheckOptions& opts = {});

/// phi sends basis section k of `from` to phi[k] in `to`.
VerificationReport check_morphism(const std::vector<Section>& phi, const PairPtr& from, const PairPtr& to,
                                  const PairCheckOptions& opts = {});

}  // namespace rhoc
