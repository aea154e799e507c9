#include <gtest/gtest.h>

#include "rhocarroll/coefficients.hpp"

using namespace rhoc;

namespace {

ParameterSpacePtr qspace() { return ParameterSpace::make({"q"}); }

}  // namespace

TEST(GaussianRational, FieldArithmetic) {
  const GaussianRational a(Rational(1, 2), Rational(3));
  const GaussianRational b(Rational(-2), Rational(1, 3));
  EXPECT_EQ(a * a.inverse(), GaussianRational(1));
  EXPECT_EQ((a + b) - b, a);
  EXPECT_EQ(GaussianRational::i() * GaussianRational::i(), GaussianRational(-1));
  EXPECT_EQ(a * b, b * a);
}

TEST(GaussianRational, ZeroHasNoInverse) {
  try {
    (void)GaussianRational(0).inverse();
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAUnit);
  }
}

TEST(GaussianRational, Rendering) {
  EXPECT_EQ(GaussianRational(Rational(3, 2)).to_string(), "3/2");
  EXPECT_EQ((-GaussianRational::i()).to_string(), "-i");
  EXPECT_EQ(GaussianRational(Rational(0), Rational(3, 2)).to_string(), "3/2*i");
  EXPECT_EQ(GaussianRational(Rational(1), Rational(2)).to_string(), "(1 + 2*i)");
}

TEST(Laurent, UnitsAreMonomials) {
  auto s = qspace();
  const Laurent q = Laurent::parameter(s, 0);
  const Laurent q2inv = Laurent::parameter(s, 0, -2, GaussianRational(3));
  EXPECT_TRUE(q.is_unit());
  EXPECT_EQ(q2inv * q2inv.inverse(), Laurent::constant(s, 1));
  EXPECT_FALSE((q + Laurent(1)).is_unit());
  EXPECT_THROW((void)(q + Laurent(1)).inverse(), Error);
}

TEST(Laurent, RingLaws) {
  auto s = qspace();
  const Laurent q = Laurent::parameter(s, 0);
  const Laurent a = q + Laurent(2);
  const Laurent b = Laurent::parameter(s, 0, -1, GaussianRational::i()) - Laurent(1);
  EXPECT_EQ(a * b, b * a);
  EXPECT_EQ(a * (b + q), a * b + a * q);
  EXPECT_TRUE((a - a).is_zero());
  EXPECT_EQ((q * q).to_string(), "q^2");
}

TEST(Laurent, ClassicalLimit) {
  auto s = qspace();
  const Laurent c = Laurent::parameter(s, 0, 3) + Laurent::parameter(s, 0, -1, GaussianRational(2));
  EXPECT_EQ(c.at_one(), GaussianRational(3));
}

TEST(Laurent, SpaceMismatch) {
  const Laurent a = Laurent::parameter(ParameterSpace::make({"q"}), 0);
  const Laurent b = Laurent::parameter(ParameterSpace::make({"tau"}), 0);
  EXPECT_THROW((void)(a * b), Error);
}
