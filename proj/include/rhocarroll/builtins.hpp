#pragma once

// Catalog of ready-made structures: algebras with their derivations,
// pairs, metrics, connections and Carrollian data.

#include <optional>
#include <string>
#include <vector>

#include "rhocarroll/carroll.hpp"

namespace rhoc {

struct CatalogEntry {
  std::string key;
  std::string notes;
  PresentationPtr algebra;
  // Every named derivation, including those outside the pair's basis.
  std::vector<RhoDerivation> derivations;
  DerivationBasisPtr derivation_basis;
  PairPtr pair;
  std::optional<Metric> metric;
  // Nondegenerate metric used for the Levi-Civita solve, when there is one.
  std::optional<Metric> auxiliary_metric;
  std::optional<Connection> connection;
  std::optional<CarrollStructure> carroll;

  const RhoDerivation* derivation(const std::string& name) const;
};

// Pair whose sections are the basis derivations themselves, anchored by the
// identity, with brackets read off from the commutators.
PairPtr tangent_pair(std::string name, const DerivationBasisPtr& basis);

CatalogEntry build_quantum_plane();
// The torus derivations carry the factor i*tau (tau = 2*pi) when
// explicit_tau is set and absorb it otherwise.
CatalogEntry build_nc_torus(bool explicit_tau = false);
CatalogEntry build_r22_super();
CatalogEntry build_z22();
// K[s] in degree zero with the zero metric and sigma = ds.
CatalogEntry build_affine_line(const CommutationFactor& factor, const ParameterSpacePtr& params);
// Throws FactorIncompatible on different factors, or when b carries a
// Carroll structure but is not concentrated in degree zero.
CatalogEntry build_tensor_product(const CatalogEntry& a, const CatalogEntry& b);
CatalogEntry build_eq2();

std::vector<std::string> catalog_keys();
// Throws UnknownName.
CatalogEntry build_entry(const std::string& key);

// Commutation axioms, every derivation, the pair, metrics, connection
// degrees and the Carroll checks.
VerificationReport verify_entry(const CatalogEntry& e, const PairCheckOptions& opts = {});

}  // namespace rhoc
