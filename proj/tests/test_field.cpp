#include <gtest/gtest.h>

#include <set>
#include <thread>

#include "galproj/field.hpp"
#include "support.hpp"

using namespace galproj;
using galproj::testing::nonzero;

TEST(Field, PrimeFieldArithmetic) {
  const Field f = Field::make(13);
  EXPECT_EQ(f(2).inv(), f(7));
  EXPECT_EQ(f(3).pow(3), f(1));
  EXPECT_EQ(f(12) + f(1), f(0));
  EXPECT_EQ(f(5) - f(9), f(9));
  EXPECT_EQ(f(-1), f(12));
  EXPECT_EQ(f(6) / f(4), f(8));
}

TEST(Field, Errors) {
  const Field f = Field::make(13), g = Field::make(7);
  EXPECT_THROW(f(1) / f(0), std::domain_error);
  EXPECT_THROW(f(0).inv(), std::domain_error);
  EXPECT_THROW(f(1) + g(1), std::invalid_argument);
  EXPECT_THROW(Field::make(15), std::invalid_argument);
  EXPECT_THROW(Field::make(2), std::invalid_argument);
  EXPECT_THROW(Field::make(13, 0), std::invalid_argument);
}

// Frozen from tests/oracles/field_oracle.py.
TEST(Field, ExtensionConventionsMatchOracle) {
  struct Case {
    u64 p;
    unsigned k;
    std::vector<u64> modulus;
    u64 generator, a, b, ab;
  };
  const std::vector<Case> cases{
      {3, 2, {1, 0, 1}, 4, 7, 5, 6},         {5, 2, {2, 0, 1}, 6, 23, 13, 18},
      {7, 2, {1, 0, 1}, 9, 47, 25, 30},      {13, 2, {2, 0, 1}, 15, 167, 85, 102},
      {3, 3, {1, 2, 0, 1}, 3, 25, 14, 4},    {3, 4, {2, 1, 0, 0, 1}, 3, 79, 41, 47},
      {5, 3, {1, 1, 0, 1}, 9, 123, 63, 98},
  };
  for (const auto& c : cases) {
    const Field f = Field::make(c.p, c.k);
    EXPECT_EQ(f.modulus_poly(), c.modulus) << c.p << "^" << c.k;
    EXPECT_EQ(f.generator().code(), c.generator) << c.p << "^" << c.k;
    EXPECT_EQ((f.from_code(c.a) * f.from_code(c.b)).code(), c.ab) << c.p << "^" << c.k;
  }
}

TEST(Field, ExtensionElementsAreCoefficientVectors) {
  const Field f = Field::make(5, 2);
  const Fe a = f.from_coeffs({3, 4});
  EXPECT_EQ(a.code(), 3u + 4u * 5u);
  EXPECT_EQ(a.coeffs(), (std::vector<u64>{3, 4}));
  EXPECT_EQ(f.embed(Field::make(5)(3)), f(3));
  EXPECT_THROW(f.embed(Field::make(7)(3)), std::invalid_argument);
}

TEST(Field, RootsOfUnity) {
  const Field f = Field::make(13);
  EXPECT_EQ(primitive_root_of_unity(f, 3), f(3));
  const Fe i = primitive_root_of_unity(f, 4);
  EXPECT_EQ(i * i, f(12));
  EXPECT_EQ(multiplicative_order(i), 4u);
  EXPECT_THROW(primitive_root_of_unity(f, 5), std::domain_error);
  EXPECT_FALSE(has_primitive_root_of_unity(f, 5));
}

TEST(Field, Squares) {
  EXPECT_TRUE(is_square(Field::make(61)(5)));
  EXPECT_EQ(sqrt(Field::make(13)(1)), Field::make(13)(1));
  EXPECT_FALSE(is_square(Field::make(7)(3)));
  EXPECT_THROW(sqrt(Field::make(7)(3)), std::domain_error);
  const Field f = Field::make(13);
  EXPECT_EQ(sqrt(f(12)), f(5));  // roots 5 and 8; the smaller is returned
}

TEST(Field, AlphaClasses) {
  const Field f = Field::make(13);
  EXPECT_EQ(square_mu_subgroup_order(f, 3), 6u);
  EXPECT_EQ(alpha_class_representatives(f, 3).size(), 2u);
  EXPECT_EQ(square_mu_subgroup_order(f, 4), 12u);
  const auto one = alpha_class_representatives(f, 4);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0], f(1));
}

// ---------------------------------------------------------------------------
// Properties

class FieldProperties : public ::testing::TestWithParam<std::pair<u64, unsigned>> {};

TEST_P(FieldProperties, FermatAndInverse) {
  const Field f = Field::make(GetParam().first, GetParam().second);
  for (int t = 0; t < 200; ++t) {
    const Fe a = nonzero(f);
    EXPECT_TRUE(a.pow(f.q() - 1).is_one());
    EXPECT_TRUE((a * a.inv()).is_one());
  }
}

TEST_P(FieldProperties, RingAxioms) {
  const Field f = Field::make(GetParam().first, GetParam().second);
  for (int t = 0; t < 200; ++t) {
    const Fe a = galproj::testing::any_element(f), b = galproj::testing::any_element(f), c = galproj::testing::any_element(f);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a + (-a), f.zero());
  }
}

TEST_P(FieldProperties, RootOfUnityPowersDistinct) {
  const Field f = Field::make(GetParam().first, GetParam().second);
  for (u64 n = 2; n <= 12; ++n) {
    if (!has_primitive_root_of_unity(f, n)) continue;
    const Fe z = primitive_root_of_unity(f, n);
    std::set<u64> seen;
    for (u64 j = 0; j < n; ++j) seen.insert(z.pow(j).code());
    EXPECT_EQ(seen.size(), n);
    EXPECT_TRUE(z.pow(n).is_one());
  }
}

TEST_P(FieldProperties, AlphaClassCosets) {
  const Field f = Field::make(GetParam().first, GetParam().second);
  for (u64 m = 3; m <= 8; ++m) {
    const auto reps = alpha_class_representatives(f, m);
    ASSERT_LE(reps.size(), 2u);
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i + 1; j < reps.size(); ++j) EXPECT_FALSE(in_square_mu_subgroup(reps[i] / reps[j], m));
    for (int t = 0; t < 30; ++t) {
      const Fe a = nonzero(f);
      int hits = 0;
      for (const auto& r : reps) hits += in_square_mu_subgroup(a / r, m);
      EXPECT_EQ(hits, 1);
    }
  }
}

TEST_P(FieldProperties, SqrtIsARoot) {
  const Field f = Field::make(GetParam().first, GetParam().second);
  for (int t = 0; t < 100; ++t) {
    const Fe a = nonzero(f);
    EXPECT_EQ(is_square(a), a.pow((f.q() - 1) / 2).is_one());
    if (is_square(a)) {
      const Fe r = sqrt(a);
      EXPECT_EQ(r * r, a);
      EXPECT_LE(r.code(), (-r).code());
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldProperties,
                         ::testing::Values(std::pair<u64, unsigned>{13, 1}, std::pair<u64, unsigned>{61, 1},
                                           std::pair<u64, unsigned>{3, 3}, std::pair<u64, unsigned>{7, 2},
                                           std::pair<u64, unsigned>{5, 4}, std::pair<u64, unsigned>{1000003, 1},
                                           std::pair<u64, unsigned>{1009, 3}));

TEST(Field, DeterministicAcrossThreads) {
  std::vector<u64> results(4);
  std::vector<std::thread> ts;
  for (int i = 0; i < 4; ++i)
    ts.emplace_back([&results, i] {
      const Field f = Field::make(11, 3);
      results[i] = f.generator().code() * 1000 + (f.from_code(100) * f.from_code(777)).code();
    });
  for (auto& t : ts) t.join();
  for (int i = 1; i < 4; ++i) EXPECT_EQ(results[i], results[0]);
  EXPECT_EQ(Field::make(11, 3), Field::make(11, 3));
}
