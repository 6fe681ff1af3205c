#include <gtest/gtest.h>

#include <boost/math/constants/constants.hpp>

#include "../fixtures.hpp"

using namespace gammaint;

TEST(Gamma, ProjectiveLineGammaClass) {
    // Gamma(1 + H)^2 = 1 - 2 gamma_E H on P^1
    ToricModel m(fixtures::p1());
    GammaEnv env;
    CVec g = gamma_class(m, env);
    double euler = boost::math::constants::euler<double>();
    EXPECT_NEAR(g[0].real(), 1.0, 1e-14);
    EXPECT_NEAR(g[1].real(), -2.0 * euler, 1e-13);
}

TEST(Gamma, HalfIdentity) {
    GammaEnv env;
    for (auto f : {fixtures::p1(), fixtures::p2(), fixtures::p1xp1()}) {
        ToricModel m(f);
        EXPECT_LT(half_identity_residual(m, env), 1e-10);
    }
}

TEST(Gamma, ToddOfProjectivePlane) {
    // Td(P^2) = 1 + 3/2 H + H^2
    ToricModel m(fixtures::p2());
    QVec td = todd_class(m);
    EXPECT_EQ(td, (QVec{1, ratio(3, 2), 1}));
}

TEST(Gamma, EulerCharacteristicOracle) {
    ToricModel m(fixtures::p2());
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            long d = b - a;
            Rational want = Rational((d + 1) * (d + 2)) / 2;
            EXPECT_EQ(euler_chi(m, KClass::line({Rational(a), 0, 0}), KClass::line({Rational(b), 0, 0})), want);
        }
}

TEST(Gamma, PsiPairingMatchesEuler) {
    ToricModel m(fixtures::p2());
    GammaEnv env;
    for (long a = -3; a <= 3; ++a)
        for (long b = -3; b <= 3; ++b) {
            KClass A = KClass::line({Rational(a), 0, 0}), B = KClass::line({Rational(b), 0, 0});
            Complex pp = psi_pairing(m, env, A, B);
            EXPECT_NEAR(pp.real(), euler_chi(m, A, B).get_d(), 1e-8);
            EXPECT_NEAR(pp.imag(), 0.0, 1e-8);
        }
}

TEST(Gamma, EllipticCurveSkewPairing) {
    ToricModel m(fixtures::p2(), {}, {}, {{0, 1, 2}});
    for (long i = -1; i <= 1; ++i)
        for (long j = -1; j <= 1; ++j)
            EXPECT_EQ(euler_chi_complete_intersection(m, KClass::line({Rational(i), 0, 0}),
                                                      KClass::line({Rational(j), 0, 0})),
                      Rational(3 * (j - i)));
}

TEST(Gamma, OrbifoldEulerNeedsCorrections) {
    ToricModel m(fixtures::wp112());
    EXPECT_THROW(euler_chi(m, KClass::structure_sheaf(3), KClass::structure_sheaf(3)), Error);
}

TEST(Gamma, TwistedChernCharacterPhase) {
    // O(D_0) on P(1,2,1) restricted to the Z/2 point picks up the phase exp(2 pi i * 1/2) = -1
    ToricModel m(fixtures::wp112());
    CVec ch = tch(m, KClass::line({1, 0, 0}));
    size_t g = m.ring().sector(1).offset;
    EXPECT_NEAR(ch[g].real(), -1.0, 1e-14);
}

TEST(Galois, CompositionLaw) {
    ToricModel m(fixtures::wp112());
    QVec a{1, 0, 0}, b{0, 1, 0};
    EXPECT_TRUE(galois(m, a).compose(galois(m, b)) == galois(m, add(a, b)));
    EXPECT_TRUE(galois(m, a).compose(galois(m, a)).f[1] == Rational(0));
}
