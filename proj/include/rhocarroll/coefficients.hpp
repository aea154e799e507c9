#pragma once

// Exact scalar ring: Gaussian rationals Q(i) extended by central invertible
// formal parameters (q, and optionally tau standing for 2*pi).

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "rhocarroll/error.hpp"

namespace rhoc {

using Rational = mpq_class;

class GaussianRational {
 public:
  GaussianRational() = default;
  GaussianRational(long value) : re_(value) {}  // NOLINT: implicit by design of literals
  GaussianRational(Rational re, Rational im = 0);

  static GaussianRational i() { return {Rational(0), Rational(1)}; }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
  bool is_one() const { return re_ == 1 && sgn(im_) == 0; }
  bool is_real() const { return sgn(im_) == 0; }

  GaussianRational conj() const { return {re_, -im_}; }
  // Throws NotAUnit on zero.
  GaussianRational inverse() const;

  GaussianRational operator-() const { return {-re_, -im_}; }
  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    return a * b.inverse();
  }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  // "3/2", "-i", "3/2*i", "(1 + 2*i)". Parenthesised when both parts are set.
  std::string to_string() const;

 private:
  Rational re_{0};
  Rational im_{0};
};

/// Ordered names of the formal parameters a coefficient ring is built on.
class ParameterSpace {
 public:
  explicit ParameterSpace(std::vector<std::string> names);

  static std::shared_ptr<const ParameterSpace> make(std::vector<std::string> names) {
    return std::make_shared<const ParameterSpace>(std::move(names));
  }

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  // -1 when absent.
  int index_of(const std::string& name) const;

  friend bool operator==(const ParameterSpace& a, const ParameterSpace& b) {
    return a.names_ == b.names_;
  }

 private:
  std::vector<std::string> names_;
};

using ParameterSpacePtr = std::shared_ptr<const ParameterSpace>;

/// Multivariate Laurent polynomial over Q(i) in the parameters of a
/// ParameterSpace. A coefficient without a space is a pure constant and
/// adopts the space of whatever it is combined with.
class Laurent {
 public:
  using Exponents = std::vector<int>;
  using TermMap = std::map<Exponents, GaussianRational>;

  Laurent() = default;
  Laurent(GaussianRational constant);  // NOLINT: constants convert implicitly
  Laurent(long constant) : Laurent(GaussianRational(constant)) {}  // NOLINT

  static Laurent constant(ParameterSpacePtr space, GaussianRational c);
  static Laurent monomial(ParameterSpacePtr space, Exponents exps, GaussianRational c = 1);
  // c * p^power for parameter index `param`.
  static Laurent parameter(ParameterSpacePtr space, std::size_t param, int power = 1,
                           GaussianRational c = 1);

  const ParameterSpacePtr& space() const { return space_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  // Value of the constant term; meaningful when is_constant().
  GaussianRational constant_value() const;
  // Single nonzero term c*q^a*tau^b.
  bool is_unit() const { return terms_.size() == 1; }

  // Throws NotAUnit unless is_unit().
  Laurent inverse() const;

  Laurent operator-() const;
  Laurent& operator+=(const Laurent& o);
  Laurent& operator-=(const Laurent& o);
  friend Laurent operator+(Laurent a, const Laurent& b) { return a += b; }
  friend Laurent operator-(Laurent a, const Laurent& b) { return a -= b; }
  friend Laurent operator*(const Laurent& a, const Laurent& b);
  friend bool operator==(const Laurent& a, const Laurent& b);

  // Classical limit: every parameter set to 1.
  GaussianRational at_one() const;

  std::string to_string() const;
  // True when to_string() needs parentheses as a factor of a product.
  bool needs_parens() const;

 private:
  Laurent(ParameterSpacePtr space, TermMap terms);
  void add_term(const Exponents& e, const GaussianRational& c);

  ParameterSpacePtr space_;
  TermMap terms_;
};

}  // namespace rhoc
