#include <gtest/gtest.h>

#include "../fixtures.hpp"

using namespace gammaint;

TEST(Ring, ProjectivePlane) {
    ToricModel m(fixtures::p2());
    const auto& R = m.ring();
    EXPECT_EQ(R.dim(), 3u);
    QVec H = R.divisor(0);
    QVec H2 = R.local_mul<Rational>(0, H, H);
    EXPECT_EQ(R.integrate_sector<Rational>(0, H2), Rational(1));
    // linear equivalence D_1 = D_2 = D_3
    EXPECT_EQ(R.divisor(1), H);
    EXPECT_EQ(R.divisor(2), H);
    QVec H3 = R.local_mul<Rational>(0, H2, H);
    EXPECT_TRUE(is_zero(H3));
}

TEST(Ring, P1xP1Intersections) {
    ToricModel m(fixtures::p1xp1());
    const auto& R = m.ring();
    EXPECT_EQ(R.dim(), 4u);
    QVec a = R.divisor(0), b = R.divisor(1);
    EXPECT_EQ(R.integrate_sector<Rational>(0, R.local_mul<Rational>(0, a, b)), Rational(1));
    EXPECT_EQ(R.integrate_sector<Rational>(0, R.local_mul<Rational>(0, a, a)), Rational(0));
}

TEST(Ring, WeightedProjectivePlanePairing) {
    ToricModel m(fixtures::wp112());
    const auto& R = m.ring();
    EXPECT_EQ(R.num_sectors(), 2u);
    QMatrix G = R.pairing_matrix();
    // point sector of B(Z/2): (1_v, 1_v) = 1/2
    size_t g = R.sector(1).offset;
    EXPECT_EQ(G(g, g), ratio(1, 2));
    EXPECT_EQ(R.degree(g), Rational(2));
    EXPECT_TRUE(determinant(G) != 0);
    // D_1 = 2H and int H^2 = 1/(1*2*1)
    QVec D1 = R.divisor(1);
    EXPECT_EQ(R.integrate_sector<Rational>(0, R.local_mul<Rational>(0, D1, D1)), Rational(2));
}

TEST(Ring, PairingIsSymmetricAndNondegenerate) {
    for (auto f : {fixtures::p1(), fixtures::p2(), fixtures::p1xp1(), fixtures::wp112()}) {
        ToricModel m(f);
        QMatrix G = m.ring().pairing_matrix();
        EXPECT_EQ(G, G.transpose());
        EXPECT_NE(determinant(G), Rational(0));
    }
}
