#include "property_checks.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace jacdec;
using namespace jacdec::test;

namespace {

std::string first_failure(const PropertyOutcome& p) {
  return p.failures.empty() ? std::string() : p.failures.front() + " (" + std::to_string(p.failures.size()) + " total)";
}

} // namespace

TEST(Properties, FieldAxiomsOnQZeta5) {
  PropertyOutcome p = field_properties(1000, 101);
  EXPECT_EQ(p.cases, 1000u);
  EXPECT_TRUE(p.ok()) << first_failure(p);
}

TEST(Properties, FieldAxiomsAtLowPrecision) {
  PropertyOutcome p = field_properties(100, 102, 64);
  EXPECT_TRUE(p.ok()) << first_failure(p);
}

TEST(Properties, NormalFormsOfRandomSquareMatrices) {
  PropertyOutcome p = normal_form_properties(1000, 103);
  EXPECT_EQ(p.cases, 1000u);
  EXPECT_TRUE(p.ok()) << first_failure(p);
}

TEST(Properties, NormalFormsOfSparseSmallMatrices) {
  // small entries make rank deficiency and repeated divisors common
  PropertyOutcome p = normal_form_properties(300, 104, 5, -1, 1);
  EXPECT_TRUE(p.ok()) << first_failure(p);
}

TEST(Properties, SiegelActionPreservesPositivity) {
  PropertyOutcome p = siegel_positivity_properties(RiemannMatrix(curve().z, 1), 100, 105);
  EXPECT_EQ(p.cases, 100u);
  EXPECT_TRUE(p.ok()) << first_failure(p);
}

TEST(Properties, ReturnedWitnessesVerify) {
  PropertyOutcome p = witness_soundness_properties(200, 106);
  EXPECT_TRUE(p.ok()) << first_failure(p);
}
