#include <gtest/gtest.h>

#include "superform/rational.hpp"
#include "support/generators.hpp"

using namespace superform;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
  EXPECT_EQ(parse_scalar("3/6"), make_scalar(1, 2));
  EXPECT_EQ(parse_scalar("-4"), make_scalar(-4));
  EXPECT_EQ(parse_scalar("0.25"), make_scalar(1, 4));
  EXPECT_EQ(parse_scalar("-1.5"), make_scalar(-3, 2));
  EXPECT_THROW(parse_scalar("1/0"), ParseError);
  EXPECT_THROW(parse_scalar("abc"), ParseError);
  EXPECT_THROW(parse_scalar(""), ParseError);
}

TEST(Rational, SerializesCanonically) {
  EXPECT_EQ(to_string(make_scalar(0)), "0/1");
  EXPECT_EQ(to_string(make_scalar(6, -4)), "-3/2");
  EXPECT_EQ(to_string(make_scalar(5)), "5/1");
}

TEST(Rational, StringRoundTrip) {
  test::Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    Scalar s = rng.rational(-1000, 1000, 97);
    EXPECT_EQ(parse_scalar(to_string(s)), s);
  }
}

TEST(LinearAlgebra, RankNullspaceAndDeterminant) {
  Matrix m = {{1, 2, 3}, {2, 4, 6}, {0, 1, 1}};
  EXPECT_EQ(rank(m, 3), 2u);
  auto ker = nullspace(m, 3);
  ASSERT_EQ(ker.size(), 1u);
  EXPECT_TRUE(is_zero(mat_vec(m, ker[0])));
  EXPECT_EQ(determinant({{2, 1}, {1, 2}}), 3);
  EXPECT_EQ(determinant({{0, 1}, {1, 0}}), -1);
}

TEST(LinearAlgebra, IntegerKernelIsUnimodularBasis) {
  IntMatrix a = {{Integer(2), Integer(4), Integer(6)}};
  auto k = integer_kernel(a, 3);
  ASSERT_EQ(k.size(), 2u);
  for (const auto& v : k) EXPECT_EQ(2 * v[0] + 4 * v[1] + 6 * v[2], 0);
  // The kernel lattice of x+2y+3z=0 has covolume sqrt(14); the two basis
  // vectors' cross product must be ±(1,2,3).
  Integer c0 = k[0][1] * k[1][2] - k[0][2] * k[1][1];
  Integer c1 = k[0][2] * k[1][0] - k[0][0] * k[1][2];
  Integer c2 = k[0][0] * k[1][1] - k[0][1] * k[1][0];
  EXPECT_TRUE((c0 == 1 && c1 == 2 && c2 == 3) || (c0 == -1 && c1 == -2 && c2 == -3));
}

TEST(LinearAlgebra, SaturatedLatticeOfDiagonal) {
  auto b = saturated_lattice_basis({{make_scalar(2), make_scalar(2)}}, 2);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_TRUE(b[0] == (Vec{1, 1}) || b[0] == (Vec{-1, -1}));
  auto full = saturated_lattice_basis({{1, 1}, {1, -1}}, 2);
  EXPECT_EQ(full.size(), 2u);
  EXPECT_EQ(abs(determinant(Matrix(full.begin(), full.end()))), 1);
}

TEST(LinearAlgebra, PrimitiveScalesPositively) {
  EXPECT_EQ(primitive({make_scalar(2, 3), make_scalar(-4, 3)}), (Vec{1, -2}));
  EXPECT_EQ(primitive({0, 0}), (Vec{0, 0}));
}
