#pragma once

// Deterministic random inputs for the property checks.

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "rhocarroll/algebra.hpp"

namespace rhoc {

class SampleSource {
 public:
  explicit SampleSource(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi);
  bool coin() { return uniform(0, 1) == 1; }

  // Nonzero small Gaussian rational.
  GaussianRational scalar();
  // scalar() * q^k with |k| <= 2 when the space has parameters.
  Laurent coefficient(const ParameterSpacePtr& params);
  Degree degree(const GradeGroup& group, int bound = 3);

  // Nonzero homogeneous element: one to two monomials of a shared degree,
  // drawn from monomials of total exponent size <= 2.
  Element homogeneous(const PresentationPtr& alg);
  // Homogeneous element of degree d, or zero when no small monomial has it.
  Element homogeneous_of(const PresentationPtr& alg, const Degree& d);
  // Random word of letters g^{+-1} respecting the generator flags.
  Word word(const PresentationPtr& alg, int max_length);

 private:
  const std::map<Degree, std::vector<Monomial>>& table(const PresentationPtr& alg);

  std::mt19937_64 rng_;
  std::map<const Presentation*, std::map<Degree, std::vector<Monomial>>> cache_;
  std::map<const Presentation*, std::vector<Degree>> degrees_;
};

// Monomials with sum |exponent| <= bound, grouped by degree.
std::map<Degree, std::vector<Monomial>> small_monomials(const Presentation& alg, int bound);

}  // namespace rhoc
