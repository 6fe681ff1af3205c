#include <gtest/gtest.h>

#include "../fixtures.hpp"

using namespace gammaint;

namespace {

Rational coefficient_z0_unit(const QSeries& I, const QVec& e) {
    auto it = I.terms.find(e);
    if (it == I.terms.end()) return 0;
    auto jt = it->second.find(0);
    return jt == it->second.end() ? Rational(0) : jt->second[0];
}

} // namespace

TEST(IFunction, QuinticHypergeometricCoefficients) {
    ToricModel m(fixtures::p4(), {}, {}, {{0, 1, 2, 3, 4}});
    QSeries IV = build_I_twisted(m, 0, 4);
    for (long d = 0; d <= 4; ++d) {
        Integer want = fixtures::multinomial({d, d, d, d, d});
        EXPECT_EQ(coefficient_z0_unit(IV, {Rational(d)}), Rational(want)) << "d=" << d;
    }
}

TEST(IFunction, QuinticMirrorMapHarmonicSum) {
    ToricModel m(fixtures::p4(), {}, {}, {{0, 1, 2, 3, 4}});
    MirrorMap mm = mirror_map(m, build_I_twisted(m, 0, 3));
    // 5!/1 * 5 * (H_5 - 1)
    Rational harmonic = 0;
    for (long j = 2; j <= 5; ++j) harmonic += ratio(1, j);
    Rational want = 120 * 5 * harmonic;
    EXPECT_EQ(want, Rational(770));
    QVec g = mm.correction.terms.at({Rational(1)});
    QVec H = m.ring().embed_untwisted(m.p_bar()[0]);
    EXPECT_EQ(g, scale(H, want));
}

TEST(IFunction, ProjectivePlaneMirrorMapIsTrivial) {
    ToricModel m(fixtures::p2());
    MirrorMap mm = mirror_map(m, build_I(m, 0, 6));
    EXPECT_TRUE(mm.correction.terms.empty());
    EXPECT_EQ(mm.F.terms.size(), 1u);
}

TEST(IFunction, HomogeneityOnAllScenarios) {
    for (auto f : {fixtures::p1(), fixtures::p2(), fixtures::p1xp1(), fixtures::wp112()}) {
        ToricModel m(f);
        for (size_t v = 0; v < m.box().size(); ++v) EXPECT_EQ(homogeneity_violations(m, build_I(m, v, 4), false), 0u);
    }
}

TEST(IFunction, LogFieldDerivationMatchesDirectSeries) {
    ToricModel m(fixtures::wp112());
    QSeries I0 = build_I(m, 0, 3);
    QSeries D = derive_Iv_from_I(m, 1, I0);
    EXPECT_EQ(D.terms, truncate(build_I(m, 1, 3), D.bound).terms);
}

TEST(IFunction, WindowOverflowIsReported) {
    ToricModel m(fixtures::p2());
    try {
        build_I(m, 0, 4, ZWindow{-3, 3});
        FAIL() << "narrow window accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::WidenWindow);
    }
}

TEST(IFunction, ProjectiveLineLeadingTerm) {
    // I = e^{H log q / z} sum q^d / prod_{k<=d} (H + k z)^2, so q^1 has z^-2 coefficient 1
    ToricModel m(fixtures::p1());
    QSeries I = build_I(m, 0, 2);
    const auto& lv = I.terms.at({Rational(1)});
    EXPECT_EQ(lv.at(-2)[0], Rational(1));
    EXPECT_EQ(lv.at(-3)[1], Rational(-2));
}
