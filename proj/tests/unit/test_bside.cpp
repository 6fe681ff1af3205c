#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include "../fixtures.hpp"

using namespace gammaint;

TEST(Residue, CubicCoefficients) {
    ToricModel m(fixtures::p2(), {}, {}, {{0, 1, 2}});
    auto res = torus_residue_series(m, 0, 8);
    EXPECT_EQ(res.two_pi_i_power, 1);
    for (long d = 0; d <= 8; ++d)
        EXPECT_EQ(res.terms.at({Rational(d)}), Rational(fixtures::multinomial({d, d, d}))) << d;
}

TEST(Residue, MatchesMultinomialOnWeightedPlane) {
    ToricModel m(fixtures::wp112());
    for (size_t v = 0; v < m.box().size(); ++v)
        EXPECT_EQ(torus_residue_series(m, v, 5).terms, multinomial_period_series(m, v, 5).terms) << v;
}

TEST(Residue, SectorSeriesHasAgeFactorial) {
    // v = (0,-1): d_0 b_0 + d_1 b_1 + d_2 b_2 + d_3 b_3 = (0,1), lowest term d_1 = 1 with (1 + 1)! / 1! = 2
    ToricModel m(fixtures::wp112());
    auto s = multinomial_period_series(m, 1, 2);
    ASSERT_FALSE(s.terms.empty());
    EXPECT_EQ(s.terms.begin()->second, Rational(2));
}

TEST(GKZ, ProjectiveLineCentralBinomials) {
    // Pi_{(0,1)} = alpha_0^{-1} sum_d C(2d,d) (alpha_1 alpha_2 / alpha_0^2)^d
    ToricModel m(fixtures::p1());
    GKZFamily fam(m, 5);
    auto P = fam.period({{0}, 1});
    for (long d = 0; d <= 5; ++d) {
        ZVec e{-1 - 2 * d, d, d};
        EXPECT_EQ(P.at(e), Rational(fixtures::multinomial({d, d}))) << d;
    }
    // d_1 d_2 Pi = d_0^2 Pi at d = 1: both give 2 alpha_0^{-3}
    auto lhs = alpha_derivative(P, {0, 1, 1});
    auto rhs = alpha_derivative(P, {2, 0, 0});
    EXPECT_EQ(lhs.at({-3, 0, 0}), Rational(2));
    EXPECT_EQ(rhs.at({-3, 0, 0}), Rational(2));
}

TEST(GKZ, AnnihilationOnCubicAndQuintic) {
    ToricModel cubic(fixtures::p2(), {}, {}, {{0, 1, 2}});
    auto c = gkz_check(cubic, 6);
    EXPECT_EQ(c.failures, 0u);
    EXPECT_GT(c.terms_compared, 0u);
    EXPECT_EQ(c.normalized_volume, Integer(3));
    ToricModel quintic(fixtures::p4(), {}, {}, {{0, 1, 2, 3, 4}});
    auto q = gkz_check(quintic, 6);
    EXPECT_EQ(q.failures, 0u);
    EXPECT_EQ(q.normalized_volume, Integer(5));
}

TEST(GKZ, LogPeriodScaling) {
    ToricModel m(fixtures::p2());
    EXPECT_EQ(gkz_check(m, 4, 2).log_period_scaling_residual, Rational(1));
}

TEST(Oscillatory, ProjectiveLineBessel) {
    ToricModel m(fixtures::p1());
    for (double q : {0.01, 0.04}) {
        auto r = oscillatory_integral(m, {1.0, q}, 1.0);
        EXPECT_NEAR(r.value, 2.0 * boost::math::cyl_bessel_k(0, 2.0 * std::sqrt(q)), 1e-8);
    }
}

TEST(Oscillatory, MatchesSeriesOnProjectivePlane) {
    ToricModel m(fixtures::p2());
    GammaEnv env;
    PeriodSeries P = a_period(m, env, build_I(m, 0, 8), KClass::structure_sheaf(3));
    auto r = oscillatory_integral(m, {1.0, 1.0, 0.001}, 1.0);
    EXPECT_LT(std::abs(r.value - P.evaluate({0.001})) / r.value, 1e-5);
}

TEST(CriticalValues, CubicMirror) {
    ToricModel m(fixtures::p2(), {}, {}, {{0, 1, 2}});
    LGModel lg = build_W(m, {{0, 0, 1}});
    auto cv = critical_values(m);
    EXPECT_EQ(cv.relation_degree, 3);
    EXPECT_EQ(cv.scale, Rational(3));
    // q = 1: values 3, 3w, 3w^2
    auto chk = verify_critical_values(m, lg, Rational(1));
    EXPECT_TRUE(chk.gradients_vanish && chk.equations_hold && chk.distinct);
    ASSERT_EQ(chk.values.size(), 3u);
    EXPECT_EQ(chk.values[0], (Eisenstein{3, 0}));
    EXPECT_EQ(chk.values[1], (Eisenstein{0, 3}));
    EXPECT_EQ(chk.values[2], (Eisenstein{-3, -3}));
}

TEST(CriticalValues, NumericRoots) {
    ToricModel m(fixtures::p2(), {}, {}, {{0, 1, 2}});
    auto vals = critical_values(m).values({1.0, 1.0, 0.008});
    EXPECT_NEAR(std::abs(vals[0] - Complex(0.6, 0)), 0.0, 1e-12);
}

TEST(LandauGinzburg, SectionMustSplitDivisorMap) {
    ToricModel m(fixtures::p2());
    EXPECT_THROW(build_W(m, {{1, 1, 0}}), Error);
    EXPECT_EQ(format_W(m, build_W(m, {{0, 0, 1}})), "W0 = t1 + t2 + q1*t1^-1*t2^-1");
}
