#include <gtest/gtest.h>

#include "rhocarroll/grading.hpp"

using namespace rhoc;

namespace {

const GradeGroup kZ2(2, 0);

CommutationFactor plane() { return CommutationFactor(kZ2, {{0, 1}, {-1, 0}}, {}); }

}  // namespace

TEST(Degree, TorsionSlotsReduce) {
  const GradeGroup g(1, 1);
  const Degree a(g, {2, 1});
  const Degree b(g, {-1, 1});
  EXPECT_EQ(a + b, Degree(g, {1, 0}));
  EXPECT_EQ(-b, Degree(g, {1, 1}));
  EXPECT_EQ(a.to_string(), "(2,1)");
}

TEST(CommutationFactor, QuantumPlaneValues) {
  // rho((n,m),(n',m')) = q^{nm' - mn'}
  const auto f = plane();
  for (int n = -2; n <= 2; ++n) {
    for (int m = -2; m <= 2; ++m) {
      for (int n2 = -2; n2 <= 2; ++n2) {
        for (int m2 = -2; m2 <= 2; ++m2) {
          const RhoValue r = f(Degree(kZ2, {n, m}), Degree(kZ2, {n2, m2}));
          EXPECT_EQ(r.q_power, n * m2 - m * n2);
          EXPECT_FALSE(r.negative);
        }
      }
    }
  }
}

TEST(CommutationFactor, SignFactorOnZ2Squared) {
  const GradeGroup g(0, 2);
  const CommutationFactor f(g, {}, {{1, 0}, {0, 1}});
  EXPECT_TRUE(f(Degree(g, {1, 1}), Degree(g, {0, 1})).negative);
  EXPECT_TRUE(f(Degree(g, {1, 1}), Degree(g, {1, 0})).negative);
  EXPECT_FALSE(f(Degree(g, {0, 1}), Degree(g, {1, 0})).negative);
  EXPECT_FALSE(f(Degree(g, {1, 1}), Degree(g, {1, 1})).negative);
}

TEST(CommutationFactor, AxiomsHold) {
  EXPECT_TRUE(check_commutation_axioms(plane(), 200).passed());
  EXPECT_TRUE(check_commutation_axioms(CommutationFactor(kZ2, {{0, -2}, {2, 0}}, {}), 200).passed());
  const GradeGroup mixed(1, 1);
  EXPECT_TRUE(check_commutation_axioms(CommutationFactor(mixed, {}, {{0, 0}, {0, 1}}), 200).passed());
}

TEST(CommutationFactor, SymmetricQFormFails) {
  const CommutationFactor bad(kZ2, {{0, 1}, {1, 0}}, {});
  EXPECT_FALSE(bad.matrix_conditions_hold());
  const VerificationReport r = check_commutation_axioms(bad, 200);
  ASSERT_FALSE(r.passed());
  const CheckResult* f = r.first_failure();
  EXPECT_EQ(f->check, "factor.inverse");
  ASSERT_TRUE(f->witness);
  EXPECT_NE(*f->witness, "0");
}

TEST(CommutationFactor, QFormOnTorsionSlotRejected) {
  const GradeGroup g(1, 1);
  try {
    CommutationFactor(g, {{0, 1}, {-1, 0}}, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidFactor);
  }
}
