#include <gtest/gtest.h>

#include "../fixtures.hpp"

using namespace gammaint;

TEST(Fan, AcceptsBundledFans) {
    EXPECT_NO_THROW(validate_fan(fixtures::p1()));
    EXPECT_NO_THROW(validate_fan(fixtures::p2()));
    EXPECT_NO_THROW(validate_fan(fixtures::p1xp1()));
    EXPECT_NO_THROW(validate_fan(fixtures::wp112()));
    EXPECT_NO_THROW(validate_fan(fixtures::p4()));
}

TEST(Fan, RejectsIncompleteFan) {
    StackyFan f = fixtures::p2();
    f.cones.pop_back();
    try {
        validate_fan(f);
        FAIL() << "incomplete fan accepted";
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidFan);
    }
}

TEST(Fan, RejectsNonSimplicialAndUnusedRays) {
    StackyFan f = fixtures::p2();
    f.rays.push_back({1, 1});
    EXPECT_THROW(validate_fan(f), Error);
    StackyFan g = fixtures::p2();
    g.cones[0] = {0, 1, 2};
    EXPECT_THROW(validate_fan(g), Error);
}

TEST(Fan, RejectsExtendedVectorOutsideSupport) {
    StackyFan f = fixtures::p2();
    f.extended = {{0, 0}};
    EXPECT_THROW(validate_fan(f), Error);
}

TEST(Box, SmoothFanHasOnlyUntwistedSector) {
    BoxTable b(fixtures::p2());
    ASSERT_EQ(b.size(), 1u);
    EXPECT_EQ(b[0].age, Rational(0));
}

TEST(Box, WeightedProjectivePlane) {
    // cone {(1,0),(-1,-2)} has multiplicity 2 and contains (0,-1) = 1/2 (1,0) + 1/2 (-1,-2)
    BoxTable b(fixtures::wp112());
    ASSERT_EQ(b.size(), 2u);
    EXPECT_EQ(b[1].v, (ZVec{0, -1}));
    EXPECT_EQ(b[1].age, Rational(1));
    EXPECT_EQ(b[1].c[0], ratio(1, 2));
    EXPECT_EQ(b[1].c[2], ratio(1, 2));
    EXPECT_EQ(b[1].inv, 1u);
}

TEST(Box, ReductionOfFractionalDegree) {
    StackyFan f = fixtures::wp112();
    BoxTable b(f);
    // -d = (-1/2, 0, -1/2, 0) has fractional part (1/2, 0, 1/2) -> (0,-1)
    EXPECT_EQ(reduce(f, b, {ratio(1, 2), Rational(0), ratio(1, 2), Rational(0)}), 1u);
    EXPECT_EQ(reduce(f, b, {Rational(1), Rational(2), Rational(1), Rational(0)}), 0u);
}

TEST(Lattice, P2NefBasisAndDegrees) {
    ToricModel m(fixtures::p2());
    ASSERT_EQ(m.k(), 1u);
    auto ell = m.lattice().basis()[0];
    EXPECT_EQ(ell, (ZVec{1, 1, 1}));
    auto K = m.lattice().enumerate_Kv(0, 3);
    std::set<Rational> degs;
    for (const auto& f : K) degs.insert(f.grading);
    // integral d with d_1 = d_2 = d_3 = q-degree
    EXPECT_EQ(degs, (std::set<Rational>{0, 1, 2, 3}));
}

TEST(Lattice, WeightedProjectivePlaneFractionalExponents) {
    ToricModel m(fixtures::wp112());
    EXPECT_EQ(m.k(), 2u);
    bool half = false;
    for (const auto& f : m.lattice().enumerate_Kv(0, 2))
        for (const auto& x : f.q)
            if (!is_integer(x)) half = true;
    EXPECT_TRUE(half);
}

TEST(Lattice, SuppliedNefLiftsAreValidated) {
    EXPECT_THROW(ToricModel(fixtures::p2(), {{1, 1, 0}}), Error);
    EXPECT_NO_THROW(ToricModel(fixtures::p2(), {{0, 0, 1}}));
}

TEST(NefPartition, CubicAndQuintic) {
    ToricModel cubic(fixtures::p2(), {}, {}, {{0, 1, 2}});
    ASSERT_TRUE(cubic.partition());
    EXPECT_EQ(cubic.codim(), 1u);
    for (const auto& x : cubic.c1_Y()) EXPECT_EQ(x, Rational(0));
    ToricModel quintic(fixtures::p4(), {}, {}, {{0, 1, 2, 3, 4}});
    EXPECT_EQ(quintic.codim(), 1u);
}

TEST(NefPartition, RejectsOverlap) {
    EXPECT_THROW(ToricModel(fixtures::p2(), {}, {}, {{0, 1}, {1, 2}}), Error);
}
