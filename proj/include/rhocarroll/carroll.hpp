#pragma once

// Carrollian structures: a pair, a degenerate metric and a degree-zero
// section sigma claimed to generate ker G freely.

#include <optional>
#include <string>
#include <vector>

#include "rhocarroll/geometry.hpp"

namespace rhoc {

struct CarrollStructure {
  std::string name;
  PairPtr pair;
  Metric metric;
  Section sigma;

  // Basis index whose sigma coefficient is a unit, so that sigma replaces
  // that basis section in a basis; nullopt when there is none.
  std::optional<std::size_t> pivot() const;
};

CarrollStructure make_carroll(std::string name, Metric metric, Section sigma);

// Degree of sigma, kernel containment, kernel exactness (certified only for
// an invertible field-scalar complementary block over an integral domain)
// and closure of l = A sigma under the bracket.
VerificationReport verify_carroll(const CarrollStructure& cs, const PairCheckOptions& opts = {});

enum class Singularity { NonSingular, Singular, Uncertified };
std::string_view to_string(Singularity s);

struct CarrollDistribution {
  DerivationCombo generator;
  Singularity classification;
  // f != 0 with f * a_sigma = 0 when singular.
  std::optional<Element> witness;
  std::string detail;
};
CarrollDistribution carroll_distribution(const CarrollStructure& cs);

// [f a_sigma, g a_sigma] reduced against a_sigma on random f, g.
VerificationReport check_involutive(const CarrollStructure& cs, const PairCheckOptions& opts = {});
// sigma is Killing.
VerificationReport check_stationary(const CarrollStructure& cs);
// nabla G = 0 on basis triples and nabla_{e_a} sigma in l.
VerificationReport carroll_connection_check(const CarrollStructure& cs, const Connection& c);

struct QuotientMetric {
  std::vector<std::size_t> basis;  // indices into the pair basis
  ElementMatrix matrix;
  Status nondegenerate = Status::Uncertified;
  bool lift_independent = false;
  std::string detail;
};
// Throws SigmaNotBasisExtendable without a pivot.
QuotientMetric quotient_metric(const CarrollStructure& cs, std::uint64_t seed = 1);

// The one-section pair l = A sigma and its inclusion into the ambient pair.
PairPtr carroll_subpair(const CarrollStructure& cs);
std::vector<Section> carroll_inclusion(const CarrollStructure& cs, const PairPtr& sub);

/// sum_{k<=N} t^k X^k(f) / k!, stored by powers of t.
struct FlowSeries {
  std::vector<Element> coefficients;

  // "y*(1 + t + 1/2*t^2)" when every coefficient is a scalar multiple of
  // the constant term, "x + (y)*t" style otherwise.
  std::string to_string() const;
  friend bool operator==(const FlowSeries&, const FlowSeries&) = default;
};
FlowSeries flow(const ActionTable& x, const Element& f, int order = 6);
FlowSeries flow(const DerivationCombo& x, const Element& f, int order = 6);
// Product truncated at the shorter order.
FlowSeries truncated_product(const FlowSeries& a, const FlowSeries& b);

}  // namespace rhoc
