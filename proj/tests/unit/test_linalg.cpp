#include <gtest/gtest.h>

#include "gammaint/linalg.hpp"
#include "gammaint/polytope.hpp"

using namespace gammaint;

TEST(Rational, ParsesFractions) {
    EXPECT_EQ(parse_rational("6/4"), Rational(3) / 2);
    EXPECT_EQ(parse_rational(" -2 "), Rational(-2));
    EXPECT_THROW(parse_rational("1/0"), Error);
    EXPECT_THROW(parse_rational("abc"), Error);
    EXPECT_EQ(ratio(2, 4), Rational(1) / 2);
}

TEST(Rational, FloorAndFrac) {
    EXPECT_EQ(floor_q(ratio(-1, 2)), Rational(-1));
    EXPECT_EQ(frac(ratio(-1, 3)), ratio(2, 3));
    EXPECT_EQ(factorial(5), Rational(120));
}

TEST(Linalg, InverseAndDeterminant) {
    QMatrix A = QMatrix::from_rows({{2, 1}, {1, 1}}, 2);
    EXPECT_EQ(determinant(A), Rational(1));
    auto inv = inverse(A);
    ASSERT_TRUE(inv);
    EXPECT_EQ(A * *inv, QMatrix::identity(2));
    EXPECT_FALSE(inverse(QMatrix::from_rows({{1, 2}, {2, 4}}, 2)));
}

TEST(Linalg, IntegerKernelOfP2Rays) {
    // columns (1,0),(0,1),(-1,-1): kernel spanned by (1,1,1)
    auto K = integer_kernel({{1, 0, -1}, {0, 1, -1}}, 3);
    ASSERT_EQ(K.size(), 1u);
    long s = K[0][0];
    EXPECT_EQ(K[0], (ZVec{s, s, s}));
    EXPECT_EQ(std::abs(s), 1);
}

TEST(Linalg, LatticeIndex) {
    EXPECT_EQ(lattice_index({{1, 0, -1}, {0, 1, -2}}, 3), Integer(1));
    EXPECT_EQ(lattice_index({{2, 0}, {0, 1}}, 2), Integer(2));
}

TEST(Polytope, P2IsReflexiveWithVolumeThree) {
    std::vector<ZVec> pts{{1, 0}, {0, 1}, {-1, -1}};
    auto r = reflexivity(pts);
    EXPECT_TRUE(r.reflexive);
    EXPECT_EQ(r.dual_vertices.size(), 3u);
    EXPECT_EQ(normalized_volume(pts), Integer(3));
}

TEST(Polytope, DilatePointCount) {
    // k-th dilate of the P^2 triangle has 3k(k+1)/2 + 1 lattice points
    std::vector<ZVec> pts{{1, 0}, {0, 1}, {-1, -1}};
    for (long k = 1; k <= 3; ++k)
        EXPECT_EQ(lattice_points_dilate(pts, k).size(), static_cast<size_t>(3 * k * (k + 1) / 2 + 1));
}
