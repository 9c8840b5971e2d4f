#include "fbr/free_vector.hpp"
#include "fbr/random.hpp"

#include <gtest/gtest.h>

namespace fbr {
namespace {

class FreeVectorTest : public ::testing::Test {
 protected:
  PointSetPtr points = PointSet::make({"a", "b", "c", "d"});
  FreeVector<Rational> unit(const char* id, Rational c = 1) {
    return FreeVector<Rational>::unit(points, points->index(id), c);
  }
};

TEST_F(FreeVectorTest, CancellationLeavesZero) {
  auto v = vec_add(unit("a"), unit("a", -1));
  EXPECT_TRUE(v.is_zero());
  EXPECT_EQ(v.support_size(), 0u);
  EXPECT_EQ(v, FreeVector<Rational>(points));
}

TEST_F(FreeVectorTest, ScalingDistributes) {
  auto v = vec_scale(Rational(2), unit("a") + unit("b"));
  EXPECT_EQ(v, unit("a", 2) + unit("b", 2));
  EXPECT_TRUE(vec_scale(Rational(0), v).is_zero());
}

TEST_F(FreeVectorTest, SupportOfDifference) {
  auto v = unit("a") - unit("b");
  EXPECT_EQ(vec_support(v), (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(v.support_ids(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(vec_neg(v), unit("b") - unit("a"));
}

TEST_F(FreeVectorTest, MixedAmbientSpacesAreStructuralErrors) {
  auto other = PointSet::make({"a", "b", "c", "e"});
  auto w = FreeVector<Rational>::unit(other, 1);
  EXPECT_THROW(unit("a") + w, StructuralError);
  EXPECT_FALSE(unit("a") == w);
}

TEST_F(FreeVectorTest, BasepointTermsAreDropped) {
  std::size_t dropped = 0;
  auto v = FreeVector<Rational>::from_terms(points, {{"a", 1}, {"*", 5}, {"a", 2}}, &dropped);
  EXPECT_EQ(dropped, 1u);
  EXPECT_EQ(v, unit("a", 3));
  EXPECT_THROW(FreeVector<Rational>::from_terms(points, {{"zz", 1}}), StructuralError);
}

TEST_F(FreeVectorTest, RendersCompactText) {
  EXPECT_EQ((unit("a") - unit("b")).to_string(), "1*a-1*b");
  EXPECT_EQ(unit("c", Rational(3, 2)).to_string(), "3/2*c");
  EXPECT_EQ(FreeVector<Rational>(points).to_string(), "0");
}

// Abelian group and module laws on random exact vectors: literal equality.
TEST_F(FreeVectorTest, GroupAndModuleLawsHoldExactly) {
  Rng rng(2024);
  const FreeVector<Rational> zero(points);
  for (int trial = 0; trial < 500; ++trial) {
    auto u = random_vector<Rational>(rng, points, 4, 5, 4);
    auto v = random_vector<Rational>(rng, points, 4, 5, 4);
    auto w = random_vector<Rational>(rng, points, 4, 5, 4);
    const Rational c(rng.between(-6, 6), rng.between(1, 5));
    const Rational d(rng.between(-6, 6), rng.between(1, 5));
    EXPECT_EQ(u + v, v + u);
    EXPECT_EQ((u + v) + w, u + (v + w));
    EXPECT_EQ(u + zero, u);
    EXPECT_TRUE((u + (-u)).is_zero());
    EXPECT_EQ(c * (u + v), c * u + c * v);
    EXPECT_EQ(Rational(c + d) * u, c * u + d * u);
    EXPECT_EQ(Rational(c * d) * u, c * (d * u));
    EXPECT_EQ(Rational(1) * u, u);
    const auto sum = u + v;
    for (const auto& [i, coeff] : sum.coefficients()) EXPECT_NE(coeff, 0);
  }
}

TEST_F(FreeVectorTest, FloatBackendPrunesNearZero) {
  auto v = FreeVector<double>::unit(points, 1, 0.1) + FreeVector<double>::unit(points, 1, 0.2) -
           FreeVector<double>::unit(points, 1, 0.3);
  EXPECT_TRUE(v.is_zero());
}

}  // namespace
}  // namespace fbr
