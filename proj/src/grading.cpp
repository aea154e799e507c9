#include "rhocarroll/grading.hpp"

#include <random>

namespace rhoc {

GradeGroup::GradeGroup(int free_rank, int torsion_rank) : free_rank_(free_rank), torsion_rank_(torsion_rank) {
  if (free_rank < 0 || torsion_rank < 0) {
    throw Error(ErrorCode::DimensionMismatch, "grading group ranks must be non-negative");
  }
}

std::string GradeGroup::to_string() const {
  std::string out;
  if (free_rank_ > 0) out = "Z^" + std::to_string(free_rank_);
  if (torsion_rank_ > 0) {
    if (!out.empty()) out += " x ";
    out += "Z2^" + std::to_string(torsion_rank_);
  }
  return out.empty() ? "0" : out;
}

Degree::Degree(const GradeGroup& group, std::vector<int> components)
    : components_(std::move(components)), torsion_rank_(group.torsion_rank()) {
  if (static_cast<int>(components_.size()) != group.rank()) {
    throw Error(ErrorCode::DimensionMismatch,
                "degree has " + std::to_string(components_.size()) + " components, group " + group.to_string() +
                    " needs " + std::to_string(group.rank()));
  }
  reduce();
}

Degree::Degree(std::vector<int> components, int torsion_rank)
    : components_(std::move(components)), torsion_rank_(torsion_rank) {
  reduce();
}

void Degree::reduce() {
  const std::size_t first_torsion = components_.size() - static_cast<std::size_t>(torsion_rank_);
  for (std::size_t i = first_torsion; i < components_.size(); ++i) {
    components_[i] = ((components_[i] % 2) + 2) % 2;
  }
}

bool Degree::is_zero() const {
  for (int c : components_) {
    if (c != 0) return false;
  }
  return true;
}

void Degree::check_compatible(const Degree& o) const {
  if (components_.size() != o.components_.size() || torsion_rank_ != o.torsion_rank_) {
    throw Error(ErrorCode::DimensionMismatch, "degrees " + to_string() + " and " + o.to_string() +
                                                  " belong to different grading groups");
  }
}

Degree Degree::operator+(const Degree& o) const {
  check_compatible(o);
  std::vector<int> c(components_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = components_[i] + o.components_[i];
  return Degree(std::move(c), torsion_rank_);
}

Degree Degree::operator-(const Degree& o) const { return *this + (-o); }

Degree Degree::operator-() const { return scaled(-1); }

Degree Degree::scaled(long k) const {
  std::vector<int> c(components_.size());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<int>(components_[i] * k);
  return Degree(std::move(c), torsion_rank_);
}

std::string Degree::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(components_[i]);
  }
  return out + ")";
}

Laurent RhoValue::to_coefficient(const ParameterSpacePtr& space) const {
  GaussianRational sign = negative ? GaussianRational(-1) : GaussianRational(1);
  if (q_power == 0) return Laurent::constant(space, sign);
  if (!space || space->size() == 0) {
    throw Error(ErrorCode::ParameterMismatch, "commutation factor needs a parameter q but none is declared");
  }
  return Laurent::parameter(space, 0, static_cast<int>(q_power), sign);
}

namespace {

void check_square(const IntMatrix& m, int n, const char* what) {
  if (static_cast<int>(m.size()) != n) {
    throw Error(ErrorCode::InvalidFactor, std::string(what) + " must be " + std::to_string(n) + "x" +
                                              std::to_string(n));
  }
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::InvalidFactor, std::string(what) + " has a row of the wrong length");
    }
  }
}

}  // namespace

CommutationFactor::CommutationFactor(GradeGroup group, IntMatrix q_form, IntMatrix sign_form)
    : group_(group), q_form_(std::move(q_form)), sign_form_(std::move(sign_form)) {
  const int n = group_.rank();
  if (q_form_.empty()) q_form_.assign(n, std::vector<long>(n, 0));
  if (sign_form_.empty()) sign_form_.assign(n, std::vector<long>(n, 0));
  check_square(q_form_, n, "q_form");
  check_square(sign_form_, n, "sign_form");
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (q_form_[i][j] != 0 && (i >= group_.free_rank() || j >= group_.free_rank())) {
        throw Error(ErrorCode::InvalidFactor, "q_form may only be nonzero on free (Z) slots");
      }
      sign_form_[i][j] = ((sign_form_[i][j] % 2) + 2) % 2;
    }
  }
}

CommutationFactor CommutationFactor::trivial(const GradeGroup& group) { return CommutationFactor(group, {}, {}); }

bool CommutationFactor::uses_q() const {
  for (const auto& row : q_form_) {
    for (long v : row) {
      if (v != 0) return true;
    }
  }
  return false;
}

RhoValue CommutationFactor::operator()(const Degree& a, const Degree& b) const {
  const auto n = static_cast<std::size_t>(group_.rank());
  if (a.size() != n || b.size() != n) {
    throw Error(ErrorCode::DimensionMismatch, "degree does not belong to grading group " + group_.to_string());
  }
  long qp = 0;
  long sp = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b[j] == 0) continue;
      qp += static_cast<long>(a[i]) * q_form_[i][j] * b[j];
      sp += static_cast<long>(a[i]) * sign_form_[i][j] * b[j];
    }
  }
  return {qp, (sp % 2) != 0};
}

bool CommutationFactor::matrix_conditions_hold() const {
  const auto n = q_form_.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (q_form_[i][j] != -q_form_[j][i]) return false;
      if (sign_form_[i][j] != sign_form_[j][i]) return false;
    }
  }
  return true;
}

VerificationReport check_commutation_axioms(const CommutationFactor& cf, std::size_t samples, std::uint64_t seed) {
  VerificationReport report;
  const GradeGroup& g = cf.group();
  const auto space = ParameterSpace::make({"q"});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> free_slot(-3, 3);
  std::uniform_int_distribution<int> torsion_slot(0, 1);
  auto random_degree = [&] {
    std::vector<int> c(g.rank());
    for (int k = 0; k < g.rank(); ++k) c[k] = k < g.free_rank() ? free_slot(rng) : torsion_slot(rng);
    return Degree(g, std::move(c));
  };
  auto coeff = [&](const RhoValue& r) { return r.to_coefficient(space); };
  const std::string target = "factor on " + g.to_string();

  std::optional<CheckResult> inverse_fail, additive_fail, self_fail;
  for (std::size_t n = 0; n < samples; ++n) {
    const Degree a = random_degree(), b = random_degree(), c = random_degree();
    if (!inverse_fail) {
      const Laurent diff = coeff(cf(a, b) * cf(b, a)) - Laurent(1);
      if (!diff.is_zero()) {
        inverse_fail = CheckResult{"factor.inverse", target, Status::Fail, diff.to_string(),
                                   "rho(a,b)*rho(b,a) - 1 at a=" + a.to_string() + ", b=" + b.to_string()};
      }
    }
    if (!additive_fail) {
      const Laurent left = coeff(cf(a + b, c)) - coeff(cf(a, c) * cf(b, c));
      const Laurent right = coeff(cf(a, b + c)) - coeff(cf(a, b) * cf(a, c));
      const std::string at = " at a=" + a.to_string() + ", b=" + b.to_string() + ", c=" + c.to_string();
      if (!left.is_zero()) {
        additive_fail = CheckResult{"factor.biadditive", target, Status::Fail, left.to_string(),
                                    "rho(a+b,c) - rho(a,c)*rho(b,c)" + at};
      } else if (!right.is_zero()) {
        additive_fail = CheckResult{"factor.biadditive", target, Status::Fail, right.to_string(),
                                    "rho(a,b+c) - rho(a,b)*rho(a,c)" + at};
      }
    }
    if (!self_fail && cf(c, c).q_power != 0) {
      const Laurent cc = coeff(cf(c, c));
      self_fail = CheckResult{"factor.self", target, Status::Fail, (cc * cc - Laurent(1)).to_string(),
                              "rho(c,c)^2 - 1 at c=" + c.to_string()};
    }
  }
  const std::string detail = std::to_string(samples) + " samples";
  for (auto [name, fail] : {std::pair{"factor.inverse", &inverse_fail}, std::pair{"factor.biadditive", &additive_fail},
                            std::pair{"factor.self", &self_fail}}) {
    if (*fail) {
      report.add(**fail);
    } else {
      report.pass(name, target, detail);
    }
  }
  return report;
}

}  // namespace rhoc
