#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include "../fixtures.hpp"

using namespace gammaint;

TEST(Periods, ProjectiveLineBessel) {
    ToricModel m(fixtures::p1());
    GammaEnv env;
    PeriodSeries P = a_period(m, env, build_I(m, 0, 10), KClass::structure_sheaf(2));
    for (double q : {0.001, 0.01, 0.04}) {
        double want = 2.0 * boost::math::cyl_bessel_k(0, 2.0 * std::sqrt(q));
        Complex got = P.evaluate({q});
        EXPECT_NEAR(got.real() / want, 1.0, 1e-9) << "q=" << q;
        EXPECT_NEAR(got.imag(), 0.0, 1e-9);
    }
}

TEST(Periods, MonodromyOnProjectivePlane) {
    ToricModel m(fixtures::p2());
    GammaEnv env;
    QSeries I = build_I(m, 0, 5);
    for (long a : {0, 1, -2}) {
        auto r = monodromy_check(m, env, I, KClass::line({Rational(a), 0, 0}), {1, 0, 0});
        EXPECT_LT(r.residual, 1e-9);
    }
}

TEST(Periods, MonodromyOnWeightedPlane) {
    ToricModel m(fixtures::wp112());
    GammaEnv env;
    QSeries I = build_I(m, 0, 3);
    auto r = monodromy_check(m, env, I, KClass::structure_sheaf(3), {0, 1, 0});
    EXPECT_LT(r.residual, 1e-9);
}

TEST(Periods, NeedsPrefactor) {
    ToricModel m(fixtures::p1());
    GammaEnv env;
    QSeries I = build_I(m, 0, 2);
    I.prefactor = false;
    EXPECT_THROW(a_period(m, env, I, KClass::structure_sheaf(2)), Error);
}
