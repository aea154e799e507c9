#pragma once

// Grading group G = Z^r (+) Z2^s and bicharacter commutation factors
//   rho(a, b) = q^{<a, B b>} * (-1)^{<a, C b>}.

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "rhocarroll/coefficients.hpp"
#include "rhocarroll/report.hpp"

namespace rhoc {

class GradeGroup {
 public:
  GradeGroup() = default;
  GradeGroup(int free_rank, int torsion_rank);

  int free_rank() const { return free_rank_; }
  int torsion_rank() const { return torsion_rank_; }
  int rank() const { return free_rank_ + torsion_rank_; }

  // "Z^2", "Z2^2", "Z^1 x Z2^1", "0"
  std::string to_string() const;

  friend bool operator==(const GradeGroup&, const GradeGroup&) = default;

 private:
  int free_rank_ = 0;
  int torsion_rank_ = 0;
};

/// Element of a GradeGroup. Torsion slots are kept reduced to {0, 1}.
class Degree {
 public:
  Degree() = default;
  Degree(const GradeGroup& group, std::vector<int> components);

  static Degree zero(const GradeGroup& group) { return Degree(group, std::vector<int>(group.rank(), 0)); }

  const std::vector<int>& components() const { return components_; }
  int operator[](std::size_t i) const { return components_[i]; }
  std::size_t size() const { return components_.size(); }
  int torsion_rank() const { return torsion_rank_; }
  bool is_zero() const;

  Degree operator+(const Degree& o) const;
  Degree operator-(const Degree& o) const;
  Degree operator-() const;
  Degree scaled(long k) const;

  friend bool operator==(const Degree& a, const Degree& b) { return a.components_ == b.components_; }
  friend auto operator<=>(const Degree& a, const Degree& b) { return a.components_ <=> b.components_; }

  // "(1,0)"
  std::string to_string() const;

 private:
  Degree(std::vector<int> components, int torsion_rank);
  void check_compatible(const Degree& o) const;
  void reduce();

  std::vector<int> components_;
  int torsion_rank_ = 0;
};

/// A value of rho: the unit q^{q_power} * (-1)^{negative}.
struct RhoValue {
  long q_power = 0;
  bool negative = false;

  RhoValue operator*(const RhoValue& o) const { return {q_power + o.q_power, negative != o.negative}; }
  RhoValue inverse() const { return {-q_power, negative}; }
  RhoValue pow(long k) const { return {q_power * k, negative && (k % 2 != 0)}; }
  bool is_one() const { return q_power == 0 && !negative; }

  // q is parameter 0 of `space`; a nonzero q power needs a nonempty space.
  Laurent to_coefficient(const ParameterSpacePtr& space) const;

  friend bool operator==(const RhoValue&, const RhoValue&) = default;
};

using IntMatrix = std::vector<std::vector<long>>;

class CommutationFactor {
 public:
  CommutationFactor() = default;
  // Throws InvalidFactor on shape errors or a nonzero q-form entry touching a
  // torsion slot. Antisymmetry and symmetry are NOT enforced here; see
  // check_commutation_axioms.
  CommutationFactor(GradeGroup group, IntMatrix q_form, IntMatrix sign_form);

  static CommutationFactor trivial(const GradeGroup& group);

  const GradeGroup& group() const { return group_; }
  const IntMatrix& q_form() const { return q_form_; }
  const IntMatrix& sign_form() const { return sign_form_; }
  bool uses_q() const;

  RhoValue operator()(const Degree& a, const Degree& b) const;

  // B antisymmetric and C symmetric mod 2.
  bool matrix_conditions_hold() const;

  friend bool operator==(const CommutationFactor&, const CommutationFactor&) = default;

 private:
  GradeGroup group_;
  IntMatrix q_form_;
  IntMatrix sign_form_;
};

// rho(a,b)*rho(b,a) = 1, biadditivity in both slots and rho(c,c) = +-1 on
// random degree triples. Witnesses are coefficients lhs - rhs.
VerificationReport check_commutation_axioms(const CommutationFactor& cf, std::size_t samples,
                                            std::uint64_t seed = 1);

}  // namespace rhoc
