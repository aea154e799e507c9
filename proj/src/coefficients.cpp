#include "rhocarroll/coefficients.hpp"

#include <algorithm>

namespace rhoc {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParameterMismatch: return "ParameterMismatch";
    case ErrorCode::NotAUnit: return "NotAUnit";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidFactor: return "InvalidFactor";
    case ErrorCode::InvalidPresentation: return "InvalidPresentation";
    case ErrorCode::PresentationMismatch: return "PresentationMismatch";
    case ErrorCode::NegativePowerOfNonInvertible: return "NegativePowerOfNonInvertible";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::PairMismatch: return "PairMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotHomogeneous: return "NotHomogeneous";
    case ErrorCode::KernelNonTrivial: return "KernelNonTrivial";
    case ErrorCode::InverseUnavailable: return "InverseUnavailable";
    case ErrorCode::InverseInvalid: return "InverseInvalid";
    case ErrorCode::KoszulInconsistent: return "KoszulInconsistent";
    case ErrorCode::SigmaNotBasisExtendable: return "SigmaNotBasisExtendable";
    case ErrorCode::NonzeroDegreeFlow: return "NonzeroDegreeFlow";
    case ErrorCode::FactorIncompatible: return "FactorIncompatible";
    case ErrorCode::Syntax: return "Syntax";
    case ErrorCode::Semantic: return "Semantic";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// GaussianRational

GaussianRational::GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
  re_.canonicalize();
  im_.canonicalize();
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::NotAUnit, "division by zero scalar");
  Rational norm = re_ * re_ + im_ * im_;
  return {Rational(re_ / norm), Rational(-im_ / norm)};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

namespace {

std::string imaginary_part(const Rational& im) {
  if (im == 1) return "i";
  if (im == -1) return "-i";
  return im.get_str() + "*i";
}

}  // namespace

std::string GaussianRational::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return imaginary_part(im_);
  std::string out = "(" + re_.get_str();
  if (sgn(im_) < 0) {
    out += " - " + imaginary_part(Rational(-im_));
  } else {
    out += " + " + imaginary_part(im_);
  }
  return out + ")";
}

// ---------------------------------------------------------------------------
// ParameterSpace

ParameterSpace::ParameterSpace(std::vector<std::string> names) : names_(std::move(names)) {
  for (std::size_t a = 0; a < names_.size(); ++a) {
    for (std::size_t b = a + 1; b < names_.size(); ++b) {
      if (names_[a] == names_[b]) {
        throw Error(ErrorCode::ParameterMismatch, "duplicate parameter name '" + names_[a] + "'");
      }
    }
  }
}

int ParameterSpace::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
}

// ---------------------------------------------------------------------------
// Laurent

namespace {

ParameterSpacePtr unify(const ParameterSpacePtr& a, const ParameterSpacePtr& b) {
  if (!a) return b;
  if (!b) return a;
  if (a == b || *a == *b) return a;
  throw Error(ErrorCode::ParameterMismatch, "coefficients live over different parameter lists");
}

Laurent::Exponents widen(const Laurent::Exponents& e, const ParameterSpacePtr& space) {
  if (!space || e.size() == space->size()) return e;
  return Laurent::Exponents(space->size(), 0);
}

}  // namespace

Laurent::Laurent(GaussianRational constant) {
  if (!constant.is_zero()) terms_.emplace(Exponents{}, std::move(constant));
}

Laurent::Laurent(ParameterSpacePtr space, TermMap terms) : space_(std::move(space)), terms_(std::move(terms)) {}

Laurent Laurent::constant(ParameterSpacePtr space, GaussianRational c) {
  TermMap t;
  if (!c.is_zero()) t.emplace(Exponents(space ? space->size() : 0, 0), std::move(c));
  return Laurent(std::move(space), std::move(t));
}

Laurent Laurent::monomial(ParameterSpacePtr space, Exponents exps, GaussianRational c) {
  if ((space ? space->size() : 0) != exps.size()) {
    throw Error(ErrorCode::ParameterMismatch, "exponent vector does not match parameter list");
  }
  TermMap t;
  if (!c.is_zero()) t.emplace(std::move(exps), std::move(c));
  return Laurent(std::move(space), std::move(t));
}

Laurent Laurent::parameter(ParameterSpacePtr space, std::size_t param, int power, GaussianRational c) {
  if (!space || param >= space->size()) {
    throw Error(ErrorCode::ParameterMismatch, "parameter index out of range");
  }
  Exponents e(space->size(), 0);
  e[param] = power;
  return monomial(std::move(space), std::move(e), std::move(c));
}

bool Laurent::is_one() const {
  return is_constant() && terms_.size() == 1 && terms_.begin()->second.is_one();
}

bool Laurent::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() != 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

GaussianRational Laurent::constant_value() const {
  for (const auto& [e, c] : terms_) {
    if (std::all_of(e.begin(), e.end(), [](int x) { return x == 0; })) return c;
  }
  return {};
}

Laurent Laurent::inverse() const {
  if (!is_unit()) {
    throw Error(ErrorCode::NotAUnit, "coefficient '" + to_string() + "' is not a unit");
  }
  const auto& [e, c] = *terms_.begin();
  Exponents inv(e.size());
  std::transform(e.begin(), e.end(), inv.begin(), [](int x) { return -x; });
  TermMap t;
  t.emplace(std::move(inv), c.inverse());
  return Laurent(space_, std::move(t));
}

void Laurent::add_term(const Exponents& e, const GaussianRational& c) {
  auto key = widen(e, space_);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(std::move(key), c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Laurent Laurent::operator-() const {
  Laurent out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Laurent& Laurent::operator+=(const Laurent& o) {
  auto space = unify(space_, o.space_);
  if (space != space_) {
    TermMap widened;
    for (auto& [e, c] : terms_) widened.emplace(widen(e, space), std::move(c));
    terms_ = std::move(widened);
    space_ = space;
  }
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) { return *this += -o; }

Laurent operator*(const Laurent& a, const Laurent& b) {
  auto space = unify(a.space_, b.space_);
  Laurent out(space, {});
  const std::size_t n = space ? space->size() : 0;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      Laurent::Exponents e(n, 0);
      for (std::size_t k = 0; k < n; ++k) {
        e[k] = (ea.empty() ? 0 : ea[k]) + (eb.empty() ? 0 : eb[k]);
      }
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

bool operator==(const Laurent& a, const Laurent& b) { return (a - b).is_zero(); }

GaussianRational Laurent::at_one() const {
  GaussianRational sum;
  for (const auto& [e, c] : terms_) sum += c;
  return sum;
}

namespace {

std::string render_term(const Laurent::Exponents& e, const GaussianRational& c, const ParameterSpacePtr& space) {
  std::string params;
  for (std::size_t k = 0; k < e.size(); ++k) {
    if (e[k] == 0) continue;
    if (!params.empty()) params += "*";
    params += space->names()[k];
    if (e[k] != 1) params += "^" + std::to_string(e[k]);
  }
  if (params.empty()) return c.to_string();
  if (c.is_one()) return params;
  if (c == GaussianRational(-1)) return "-" + params;
  return c.to_string() + "*" + params;
}

}  // namespace

std::string Laurent::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : terms_) {
    std::string term = render_term(e, c, space_);
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

bool Laurent::needs_parens() const { return terms_.size() > 1; }

}  // namespace rhoc
