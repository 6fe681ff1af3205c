#include <gtest/gtest.h>

#include <filesystem>

#include "../fixtures.hpp"

using namespace gammaint;

namespace {

std::string bundled(const std::string& name) {
    return (std::filesystem::path(GAMMAINT_SCENARIO_DIR) / (name + ".yaml")).string();
}

const std::vector<std::string> kBundled{"p1", "p2", "p1xp1", "wp112-style", "cubic-p2", "quintic-p4"};

} // namespace

TEST(Scenario, BundledScenariosRoundTrip) {
    for (const auto& name : kBundled) {
        Scenario s = load_scenario_file(bundled(name));
        EXPECT_EQ(s.name, name);
        Scenario t = load_scenario_text(scenario_to_string(s));
        EXPECT_TRUE(same_scenario(s, t)) << name;
    }
}

TEST(Scenario, RejectsMalformedInput) {
    EXPECT_THROW(load_scenario_text("name: x\nrank: 2\n"), Error);
    EXPECT_THROW(load_scenario_text("name: x\nrank: 1\nrays: [[1], [-1]]\ncones: [[0], [5]]\n"), Error);
    EXPECT_THROW(load_scenario_text("name: x\nrank: 1\nrays: [[1], [-1]]\ncones: [[0], [1]]\ncolour: red\n"), Error);
    EXPECT_THROW(load_scenario_text("name: x\nrank: 1\nrays: [[1], [-1]]\ncones: [[0], [1]]\ntruncation: {q_bound: \"-1\"}\n"),
                 Error);
    EXPECT_THROW(load_scenario_text("name: [unclosed\n"), Error);
}

TEST(Scenario, RationalStringsAreExact) {
    Scenario s = load_scenario_text("name: x\nrank: 1\nrays: [[1], [-1]]\ncones: [[0], [1]]\ntruncation: {q_bound: \"7/2\"}\n");
    EXPECT_EQ(s.truncation.q_bound, ratio(7, 2));
}

TEST(Report, EmptyCheckListPasses) {
    Session s(load_scenario_text("name: empty\nrank: 1\nrays: [[1], [-1]]\ncones: [[0], [1]]\n"));
    Report r = run("report-all", s);
    EXPECT_TRUE(r.all_pass());
    EXPECT_TRUE(r.checks.empty());
    EXPECT_EQ(r.to_json()["schema"], kReportSchema);
}

TEST(Report, BoxOnWeightedPlane) {
    Session s(load_scenario_file(bundled("wp112-style")));
    Report r = run("box", s);
    EXPECT_TRUE(r.all_pass());
    ASSERT_EQ(r.data["box"].size(), 2u);
    EXPECT_EQ(r.data["box"][0]["age"], "0");
    EXPECT_EQ(r.data["box"][1]["age"], "1");
}

TEST(Report, OptIdentityOnCubic) {
    Session s(load_scenario_file(bundled("cubic-p2")));
    Report r = run("opt-identity", s);
    EXPECT_TRUE(r.all_pass());
    auto coeffs = r.data["table"][0]["residue"];
    EXPECT_EQ(coeffs[0]["c"], "1");
    EXPECT_EQ(coeffs[1]["c"], "6");
    EXPECT_EQ(coeffs[2]["c"], "90");
    EXPECT_EQ(coeffs[3]["c"], "1680");
}

TEST(Report, DeterministicJson) {
    Session s(load_scenario_file(bundled("p2")));
    auto a = run("report-all", s).to_json(false).dump();
    auto b = run("report-all", s).to_json(false).dump();
    EXPECT_EQ(a, b);
}

TEST(Report, UnknownCommand) {
    Session s(load_scenario_file(bundled("p1")));
    EXPECT_THROW(run("frobnicate", s), Error);
}

TEST(Report, LibraryErrorsBecomeFailingChecks) {
    // gamma-identity needs a manifold
    Session s(load_scenario_text("name: w\nrank: 2\nrays: [[1, 0], [0, 1], [-1, -2]]\ncones: [[0, 1], [1, 2], [0, 2]]\n"
                                 "checks: [gamma-identity]\n"));
    Report r = run("report-all", s);
    EXPECT_FALSE(r.all_pass());
    EXPECT_EQ(r.checks[0].id, "gamma-identity.error");
}

TEST(Report, AllBundledScenariosPass) {
    for (const auto& name : kBundled) {
        Session s(load_scenario_file(bundled(name)));
        Report r = run("report-all", s);
        EXPECT_TRUE(r.all_pass()) << r.table();
    }
}
