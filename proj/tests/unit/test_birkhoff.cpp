#include <gtest/gtest.h>

#include "../fixtures.hpp"

using namespace gammaint;

namespace {

MatSeries power(const MatSeries& A, long p, const Rational& bound, size_t dim, size_t k) {
    MatSeries P;
    P[QVec(k, Rational(0))] = QMatrix::identity(dim);
    for (long i = 0; i < p; ++i) P = mat_series_mul(P, A, bound);
    return P;
}

} // namespace

TEST(Birkhoff, ProjectiveLineQuantumRelation) {
    ToricModel m(fixtures::p1());
    auto b = birkhoff_factorize(m, 6, false);
    EXPECT_TRUE(b.remultiplies);
    auto A = quantum_products(m, b);
    MatSeries want{{{Rational(1)}, QMatrix::identity(2)}};
    EXPECT_TRUE(mat_series_equal(power(A[0], 2, 6, 2, 1), want));
}

TEST(Birkhoff, ProjectivePlaneQuantumRelation) {
    ToricModel m(fixtures::p2());
    auto b = birkhoff_factorize(m, 6, false);
    EXPECT_TRUE(b.remultiplies);
    EXPECT_TRUE(unitarity(m, b));
    auto A = quantum_products(m, b);
    MatSeries want{{{Rational(1)}, QMatrix::identity(3)}};
    EXPECT_TRUE(mat_series_equal(power(A[0], 3, 6, 3, 1), want));
}

TEST(Birkhoff, FlatnessOnTwoParameterModels) {
    for (auto f : {fixtures::p1xp1(), fixtures::wp112()}) {
        ToricModel m(f);
        auto b = birkhoff_factorize(m, 4, false);
        EXPECT_TRUE(b.remultiplies);
        EXPECT_TRUE(unitarity(m, b));
        EXPECT_TRUE(flatness(quantum_products(m, b), 4));
    }
}

TEST(Birkhoff, QuinticTwistedTheory) {
    ToricModel m(fixtures::p4(), {}, {}, {{0, 1, 2, 3, 4}});
    auto b = birkhoff_factorize(m, 3, true);
    EXPECT_TRUE(b.remultiplies);
    // Upsilon column of the unit at z^0 is F(q) * 1
    for (long d = 0; d <= 3; ++d) {
        QMatrix c = b.Upsilon.coefficient({Rational(d)}, 0);
        EXPECT_EQ(c(0, 0), Rational(fixtures::multinomial({d, d, d, d, d}))) << d;
    }
}

TEST(Birkhoff, P1xP1ProductsAreSplit) {
    // QH(P1 x P1): A_a^2 = q_a
    ToricModel m(fixtures::p1xp1());
    auto A = quantum_products(m, birkhoff_factorize(m, 4, false));
    for (size_t a = 0; a < 2; ++a) {
        QVec e(2, Rational(0));
        e[a] = 1;
        MatSeries want{{e, QMatrix::identity(4)}};
        EXPECT_TRUE(mat_series_equal(power(A[a], 2, 4, 4, 2), want)) << a;
    }
}
